/*
   Copyright 2026 The isocrystal authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#include "isocrystal/drinfeld.hpp"

#include <algorithm>

namespace isoc {

FqPoly minimal_polynomial(const FqElem& a, std::uint64_t q) {
    const FiniteField& big = a.field();
    const FiniteField& sub = FiniteField::of_order(q);
    const FqElem zero(big, 0);
    FqPoly acc = FqPoly::constant(zero.one_like());
    FqElem x = a;
    do {
        acc = acc * FqPoly({-x, zero.one_like()}, zero);
        x = sigma(x, q);
    } while (!(x == a));
    return acc.map([&](const FqElem& c) {
        if (!big.in_subfield(c.value(), sub)) throw DescentFailure("minimal polynomial does not descend to " + sub.describe());
        return FqElem(sub, big.restrict_to(c.value(), sub));
    });
}

DrinfeldModule<FqElem> specialize(const DrinfeldModule<XiFunc>& phi, const FqPoly& mx) {
    if (!is_irreducible(mx) || !(mx.lead() == mx.lead().one_like()))
        throw DomainError("point " + mx.str("xi") + " is not a monic irreducible polynomial");
    const FqElem x = residue_root(mx);
    const FqElem gr = phi.g.back().evaluate(x);
    if (gr.is_zero()) throw DomainError("g_r vanishes at " + mx.str("xi") + ": the rank drops");
    std::vector<FqElem> g;
    for (const auto& a : phi.g) g.push_back(a.evaluate(x));
    return DrinfeldModule<FqElem>(phi.q, phi.c.evaluate(x), std::move(g));
}

GlobalModule global_motive(const Motive<FqElem>& m) {
    return GlobalModule(m.phi().map([](const FqPoly& f) { return FqRat(f); }), global_ring(m.q()));
}

int Analysis::mismatches() const {
    return static_cast<int>(std::count_if(places.begin(), places.end(), [](const PlaceAnalysis& p) { return !p.match; }));
}

void sort_places(std::vector<Place>& places) {
    std::sort(places.begin(), places.end());
    places.erase(std::unique(places.begin(), places.end()), places.end());
}

Analysis analyze(const DrinfeldModule<FqElem>& phi, std::vector<Place> places, std::int64_t N, bool cross_check) {
    Analysis out;
    out.rank = phi.rank();
    out.m = extension_degree(phi.c.field(), phi.q);
    out.characteristic = characteristic_and_height(phi);
    out.charpoly = charpoly_global(global_motive(motive_matrix(phi)), cross_check);
    const int r = out.rank;
    out.a_integral = true;
    out.degree_bounds = true;
    for (int i = 1; i <= r; ++i) {
        const auto& a = out.charpoly[r - i];
        if (!a.is_polynomial()) out.a_integral = false;
        if (!a.is_zero() && static_cast<std::int64_t>(a.num().degree() - a.den().degree()) * r > static_cast<std::int64_t>(i) * out.m)
            out.degree_bounds = false;
    }
    places.push_back(Place::infinity());
    if (out.characteristic.place) places.push_back(*out.characteristic.place);
    sort_places(places);
    for (const auto& p : places) {
        PlaceAnalysis pa{p, newton_at_place(out.charpoly, p, out.m), predicted_newton(r, out.characteristic, p), false};
        pa.match = pa.observed == pa.predicted;
        out.places.push_back(std::move(pa));
    }
    if (out.characteristic.place && out.characteristic.place->degree() == 1) {
        auto fs = slope_factorize(localize_charpoly(out.charpoly, *out.characteristic.place, N), N, Rational(1, out.m));
        int d = 0;
        for (const auto& f : fs)
            if (f.slope == Rational(0)) d += f.factor.degree();
        out.unit_root_degree = d;
    }
    return out;
}

}  // namespace isoc
