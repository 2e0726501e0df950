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

// Drinfeld F_q[t]-modules, their motives, characteristic and height,
// specialization, localization at places and slope predictions.

#ifndef ISOCRYSTAL_DRINFELD_HPP
#define ISOCRYSTAL_DRINFELD_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "frobenius.hpp"
#include "local_isocrystal.hpp"
#include "place.hpp"
#include "twisted_poly.hpp"
#include "xi_function.hpp"

namespace isoc {

/// phi_t = c + g_1 tau + ... + g_r tau^r with coefficients in K, where K is
/// GF(q^m) (FqElem) or F_q(xi) (XiFunc, also used for F_q[xi]).
template <class K>
struct DrinfeldModule {
    std::uint64_t q = 0;
    K c;
    std::vector<K> g;  ///< g_1 .. g_r

    DrinfeldModule() = default;
    DrinfeldModule(std::uint64_t q_, K c_, std::vector<K> g_) : q(q_), c(std::move(c_)), g(std::move(g_)) {
        if (g.empty()) throw DomainError("a Drinfeld module needs rank >= 1");
        if (g.back().is_zero()) throw DomainError("leading coefficient g_r must be nonzero");
    }
    int rank() const noexcept { return static_cast<int>(g.size()); }
    TwistedPoly<K> phi_t() const {
        std::vector<K> co{c};
        co.insert(co.end(), g.begin(), g.end());
        return TwistedPoly<K>(co, c.zero_like(), q);
    }
};

/// A-motive in the basis 1, tau, ..., tau^(r-1): entries in F_q[t] (x) K.
template <class K>
using Motive = TauModule<Poly<K>>;

inline DifferenceRing motive_ring(std::uint64_t q) { return {DifferenceRing::Kind::polynomial, q, "F_q[t] (x) R"}; }

/// tau e_i = e_{i+1} (i < r), tau e_r = g_r^-1 ((t - c) e_1 - g_1 e_2 - ... - g_{r-1} e_r).
template <class K>
Motive<K> motive_matrix(const DrinfeldModule<K>& phi) {
    const int r = phi.rank();
    const K zero = phi.c.zero_like();
    using P = Poly<K>;
    Matrix<P> m(r, r, P(zero));
    for (int i = 0; i + 1 < r; ++i) m(i + 1, i) = P::constant(zero.one_like());
    const K inv = phi.g.back().inverse();
    m(0, r - 1) = P({-phi.c * inv, inv}, zero);
    for (int i = 1; i < r; ++i) m(i, r - 1) = P::constant(-phi.g[static_cast<std::size_t>(i - 1)] * inv);
    return Motive<K>(std::move(m), motive_ring(phi.q));
}

/// Characteristic place and height. `place` is empty for a transcendental
/// characteristic (height undefined); `epsilon` is the lowest nonzero
/// coefficient of phi_{p(t)}, sitting at tau^(h deg p).
template <class K>
struct CharacteristicInfo {
    std::optional<Place> place;
    std::optional<int> height;
    std::optional<K> epsilon;
};

/// Minimal polynomial over F_q of an element of GF(q^m).
FqPoly minimal_polynomial(const FqElem& a, std::uint64_t q);

template <class K>
CharacteristicInfo<K> characteristic_and_height(const DrinfeldModule<K>& phi) {
    CharacteristicInfo<K> out;
    const auto& fq = FiniteField::of_order(phi.q);
    FqPoly mp(FqElem(fq, 0));
    if constexpr (std::is_same_v<K, XiFunc>) {
        if (!phi.c.is_constant()) return out;
        const FqElem c0 = phi.c.constant_value();
        mp = FqPoly({-c0, FqElem(fq, 1)}, FqElem(fq, 0));
    } else {
        mp = minimal_polynomial(phi.c, phi.q);
    }
    auto comp = twisted_compose(mp, phi.phi_t(), phi.c.zero_like());
    const int low = comp.lowest_index();
    if (low % mp.degree() != 0)
        throw DomainError("lowest tau-index " + std::to_string(low) + " of phi_p is not a multiple of deg p");
    out.place = Place::finite(mp);
    out.height = low / mp.degree();
    out.epsilon = comp.coeff(low);
    return out;
}

/// Reduction of a family over F_q[xi] at the closed point m_x(xi) = 0.
DrinfeldModule<FqElem> specialize(const DrinfeldModule<XiFunc>& phi, const FqPoly& mx);

/// Entrywise expansion of the motive at a degree-1 place or infinity.
template <class K>
LocalIsocrystal<K> localize_at_place(const Motive<K>& m, const Place& p, std::int64_t N) {
    const K zero = m.phi().zero().zero_coeff();
    auto phi = m.phi().map([&](const Poly<K>& f) {
        return f.is_zero() ? Series<K>::zero(zero, N) : expand_at_place(f, p, N);
    });
    auto d = det_division_free(phi);
    if (d.is_zero()) throw DomainError("determinant expands to 0 modulo z^" + std::to_string(N) + " at " + p.str());
    return LocalIsocrystal<K>(std::move(phi), local_ring(m.q()));
}

/// Slopes predicted at a place: 0 at good places, -1/r at infinity, and
/// 0 (r - h times), 1/h (h times) at the characteristic place.
template <class K>
NewtonPolygon predicted_newton(int r, const CharacteristicInfo<K>& info, const Place& p) {
    if (p.is_infinite()) return NewtonPolygon({{Rational(-1, r), r}});
    if (info.place && *info.place == p) {
        const int h = *info.height;
        std::vector<Slope> s;
        if (r > h) s.push_back({Rational(0), r - h});
        s.push_back({Rational(1, h), h});
        return NewtonPolygon(s);
    }
    return NewtonPolygon({{Rational(0), r}});
}

/// Global motive over GF(q^m)(t) for the characteristic polynomial.
GlobalModule global_motive(const Motive<FqElem>& m);

struct PlaceAnalysis {
    Place place;
    NewtonPolygon observed;
    NewtonPolygon predicted;
    bool match = false;
};

struct Analysis {
    int rank = 0;
    int m = 1;  ///< [GF(q^m) : F_q]
    CharacteristicInfo<FqElem> characteristic;
    CharPoly charpoly;
    bool a_integral = false;     ///< coefficients in F_q[t]
    bool degree_bounds = false;  ///< coefficient of X^(r-i) has degree <= i m / r
    std::vector<PlaceAnalysis> places;
    /// degree of the slope-0 factor at the characteristic place, when it has degree 1
    std::optional<int> unit_root_degree;
    int mismatches() const;
};

/// Places in canonical order: infinity first, then by degree, then lexicographically.
void sort_places(std::vector<Place>& places);

/// Char poly of the motive, polygons at infinity, at the characteristic place
/// and at `places`, compared with the predictions.
Analysis analyze(const DrinfeldModule<FqElem>& phi, std::vector<Place> places, std::int64_t N = 32, bool cross_check = false);

}  // namespace isoc

#endif
