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

#include <gtest/gtest.h>

#include "isocrystal/drinfeld.hpp"
#include "isocrystal/expr.hpp"
#include "support.hpp"

using namespace isoc;
using namespace isoc::testing;

namespace {

using PX = Poly<XiFunc>;

const FiniteField& F3() { return FiniteField::get(3, 1); }

DrinfeldModule<XiFunc> family(std::uint64_t q) {
    const auto& f = FiniteField::of_order(q);
    return DrinfeldModule<XiFunc>(q, XiFunc::constant(f, 0), {-XiFunc::xi_power(f, 1), XiFunc::constant(f, 1)});
}

DrinfeldModule<FqElem> fq_module(const FiniteField& k, std::uint64_t q, std::uint32_t c, std::vector<std::uint32_t> g) {
    std::vector<FqElem> gs;
    for (auto v : g) gs.push_back(FqElem(k, v));
    return DrinfeldModule<FqElem>(q, FqElem(k, c), gs);
}

DrinfeldModule<FqElem> random_drinfeld(const FiniteField& k, std::uint64_t q, int r) {
    std::vector<FqElem> g;
    for (int i = 1; i < r; ++i) g.push_back(random_elem(k));
    g.push_back(random_nonzero(k));
    return DrinfeldModule<FqElem>(q, random_elem(k), g);
}

FqPoly fqpoly(std::vector<std::uint32_t> c, const FiniteField& f) {
    std::vector<FqElem> v;
    for (auto x : c) v.push_back(FqElem(f, x));
    return FqPoly(v, FqElem(f, 0));
}

Place place_t(const FiniteField& f, std::uint32_t a = 0) { return Place::finite(fqpoly({(f.size() - a) % f.size(), 1}, f)); }

FqRat rat(const std::string& text, const FiniteField& f) {
    const FqElem zero(f, 0);
    std::map<std::string, FqRat> vars{{"t", FqRat(FqPoly::x(zero))}};
    return parse_expression(text, FqRat(FqPoly(zero)), vars);
}

CharPoly charpoly(const std::vector<std::string>& coeffs, const FiniteField& f) {
    std::vector<FqRat> c;
    for (const auto& e : coeffs) c.push_back(rat(e, f));
    return CharPoly(c, rat("0", f));
}

}  // namespace

TEST(MotiveMatrix, Examples) {
    const auto& f = F3();
    auto carlitz = motive_matrix(fq_module(f, 3, 1, {1}));
    EXPECT_EQ(carlitz.phi()(0, 0), fqpoly({2, 1}, f));  // t - 1
    auto m = motive_matrix(family(3));
    const XiFunc zero = XiFunc::constant(f, 0);
    EXPECT_EQ(m.phi(), (Matrix<PX>::from_rows({{PX(zero), PX::x(zero)}, {PX::constant(zero.one_like()), PX::constant(XiFunc::xi_power(f, 1))}})));
    const auto& f9 = FiniteField::get(3, 2);
    for (int trial = 0; trial < 10; ++trial) {
        auto phi = random_drinfeld(f9, 3, 2);
        auto mm = motive_matrix(phi).phi();
        const FqElem inv = phi.g[1].inverse();
        EXPECT_EQ(mm(0, 1), FqPoly({-phi.c * inv, inv}, FqElem(f9, 0)));
        EXPECT_EQ(mm(1, 1), FqPoly::constant(-phi.g[0] * inv));
        EXPECT_TRUE(mm(0, 0).is_zero());
    }
}

TEST(MotiveMatrix, Determinant) {
    for (int trial = 0; trial < 60; ++trial) {
        const auto& k = trial % 2 ? FiniteField::get(2, uniform(1, 3)) : FiniteField::get(3, uniform(1, 2));
        const std::uint64_t q = k.characteristic();
        const int r = uniform(1, 3);
        auto phi = random_drinfeld(k, q, r);
        auto d = det_bareiss(motive_matrix(phi).phi());
        FqElem s = phi.g.back().inverse();
        if (r % 2 == 0) s = -s;
        EXPECT_EQ(d, FqPoly({-phi.c * s, s}, FqElem(k, 0)));
    }
}

TEST(CharacteristicAndHeight, Examples) {
    const auto& f = F3();
    auto gen = characteristic_and_height(family(3));
    ASSERT_TRUE(gen.place.has_value());
    EXPECT_EQ(*gen.place, place_t(f));
    EXPECT_EQ(gen.height, 1);
    EXPECT_EQ(*gen.epsilon, -XiFunc::xi_power(f, 1));
    auto at0 = characteristic_and_height(fq_module(f, 3, 0, {0, 1}));
    EXPECT_EQ(at0.height, 2);
    auto carlitz = characteristic_and_height(fq_module(f, 3, 1, {1}));
    EXPECT_EQ(*carlitz.place, place_t(f, 1));
    EXPECT_EQ(carlitz.height, 1);
    // transcendental characteristic
    DrinfeldModule<XiFunc> t(3, XiFunc::xi_power(f, 1), {XiFunc::constant(f, 1)});
    EXPECT_FALSE(characteristic_and_height(t).place.has_value());
    // c of degree 2 over F_3: p = its minimal polynomial
    const auto& f9 = FiniteField::get(3, 2);
    auto c9 = characteristic_and_height(fq_module(f9, 3, f9.generator(), {1}));
    EXPECT_EQ(c9.place->degree(), 2);
    EXPECT_EQ(c9.height, 1);
}

TEST(CharacteristicAndHeight, HeightBetweenOneAndRank) {
    for (int trial = 0; trial < 80; ++trial) {
        const auto& k = trial % 2 ? FiniteField::get(2, uniform(1, 2)) : FiniteField::get(3, uniform(1, 2));
        const int r = uniform(1, 3);
        auto info = characteristic_and_height(random_drinfeld(k, k.characteristic(), r));
        ASSERT_TRUE(info.height.has_value());
        EXPECT_GE(*info.height, 1);
        EXPECT_LE(*info.height, r);
    }
}

TEST(Specialize, Examples) {
    const auto& f = F3();
    auto a = specialize(family(3), fqpoly({2, 1}, f));  // xi - 1
    EXPECT_EQ(a.phi_t(), fq_module(f, 3, 0, {2, 1}).phi_t());
    auto b = specialize(family(3), fqpoly({0, 1}, f));
    EXPECT_EQ(b.phi_t(), fq_module(f, 3, 0, {0, 1}).phi_t());
    auto c = specialize(family(3), fqpoly({1, 0, 1}, f));  // xi^2 + 1
    EXPECT_EQ(c.c.field().size(), 9u);
    const FqElem g = -c.g[0];
    EXPECT_TRUE((g * g + g.one_like()).is_zero());
    DrinfeldModule<XiFunc> drop(3, XiFunc::constant(f, 0), {XiFunc::xi_power(f, 1)});
    EXPECT_THROW(specialize(drop, fqpoly({0, 1}, f)), DomainError);
    EXPECT_THROW(specialize(family(3), fqpoly({1, 0, 0, 1}, f)), DomainError);  // not irreducible
}

TEST(LocalizeAtPlace, Examples) {
    for (std::uint64_t q : {2, 3}) {
        const auto& f = FiniteField::of_order(q);
        for (std::uint32_t c = 1; c < q; ++c) {
            auto m = motive_matrix(fq_module(f, q, 0, {static_cast<std::uint32_t>(q - c), 1}));  // tau^2 - c tau
            for (std::uint32_t a = 1; a < q; ++a) {
                auto loc = localize_at_place(m, place_t(f, a), 16);
                EXPECT_EQ(loc.phi()(0, 1), Series<FqElem>::from_poly(fqpoly({a, 1}, f), 16));
                EXPECT_EQ(newton_polygon_local(loc).str(), "[(0,2)]");
            }
            auto inf = localize_at_place(m, Place::infinity(), 16);
            EXPECT_EQ(inf.phi()(0, 1).valuation(), -1);
            EXPECT_EQ(newton_polygon_local(inf).str(), "[(-1/2,2)]");
            EXPECT_EQ(newton_polygon_local(localize_at_place(m, place_t(f), 16)).str(), "[(0,1),(1,1)]");
        }
    }
    auto m = motive_matrix(fq_module(F3(), 3, 0, {0, 1}));
    EXPECT_THROW(localize_at_place(m, Place::finite(fqpoly({1, 0, 1}, F3())), 8), NotImplementedPlace);
}

TEST(PredictedNewton, Examples) {
    const auto& f = F3();
    CharacteristicInfo<FqElem> info{place_t(f), 1, FqElem(f, 1)};
    EXPECT_EQ(predicted_newton(2, info, place_t(f)).str(), "[(0,1),(1,1)]");
    EXPECT_EQ(predicted_newton(2, info, Place::infinity()).str(), "[(-1/2,2)]");
    EXPECT_EQ(predicted_newton(2, info, place_t(f, 1)).str(), "[(0,2)]");
    info.height = 2;
    EXPECT_EQ(predicted_newton(2, info, place_t(f)).str(), "[(1/2,2)]");
}

TEST(Analyze, Examples) {
    const auto& f = F3();
    auto a = analyze(fq_module(f, 3, 0, {2, 1}), {place_t(f, 1)});
    EXPECT_EQ(a.charpoly, charpoly({"-t", "-1", "1"}, f));
    ASSERT_EQ(a.places.size(), 3u);
    EXPECT_TRUE(a.places[0].place.is_infinite());
    EXPECT_EQ(a.places[0].observed.str(), "[(-1/2,2)]");
    EXPECT_EQ(a.places[1].place, place_t(f));
    EXPECT_EQ(a.places[1].observed.str(), "[(0,1),(1,1)]");
    EXPECT_EQ(a.places[2].observed.str(), "[(0,2)]");
    EXPECT_EQ(a.mismatches(), 0);
    EXPECT_EQ(a.unit_root_degree, 1);

    auto carlitz = analyze(fq_module(f, 3, 1, {1}), {});
    EXPECT_EQ(carlitz.charpoly, charpoly({"-(t-1)", "1"}, f));
    EXPECT_EQ(carlitz.places[0].observed.str(), "[(-1,1)]");
    EXPECT_EQ(carlitz.places[1].observed.str(), "[(1,1)]");

    auto ss = analyze(fq_module(f, 3, 0, {0, 1}), {});
    EXPECT_EQ(ss.charpoly, charpoly({"-t", "0", "1"}, f));
    EXPECT_EQ(ss.places[1].observed.str(), "[(1/2,2)]");
    EXPECT_EQ(ss.unit_root_degree, 0);
    EXPECT_TRUE(ss.a_integral);
    EXPECT_TRUE(ss.degree_bounds);
}

// Newton polygons from the global char poly against the local isocrystal,
// and the criterion that slopes are >= 0 iff all coefficients are integral.
TEST(Analyze, GlobalAgreesWithLocal) {
    for (int trial = 0; trial < 40; ++trial) {
        const auto& k = trial % 2 ? FiniteField::get(2, uniform(1, 2)) : FiniteField::get(3, uniform(1, 2));
        const std::uint64_t q = k.characteristic();
        auto phi = random_drinfeld(k, q, uniform(1, 3));
        const auto& fq = FiniteField::of_order(q);
        std::vector<Place> places{Place::infinity()};
        for (auto& p : monic_irreducibles(fq, 1)) places.push_back(Place::finite(p));
        auto an = analyze(phi, places);
        auto mot = motive_matrix(phi);
        Rational total(0);
        for (const auto& pa : an.places) {
            EXPECT_TRUE(pa.match) << pa.place.str() << " " << pa.observed.str() << " vs " << pa.predicted.str();
            total += pa.observed.endpoint();
            if (pa.place.degree() == 1)
                EXPECT_EQ(newton_polygon_local(localize_at_place(mot, pa.place, 24)), pa.observed) << pa.place.str();
            bool integral = true;
            for (const auto& c : an.charpoly.coeffs())
                if (!c.is_zero() && ord_at_place(c, pa.place) < 0) integral = false;
            EXPECT_EQ(integral, pa.observed.smallest() >= Rational(0));
            bool pure0 = integral && ord_at_place(an.charpoly[0], pa.place) == 0;
            EXPECT_EQ(pure0, pa.observed == NewtonPolygon({{Rational(0), an.rank}}));
        }
        EXPECT_EQ(total, Rational(0));
    }
}

TEST(Specialize, CharpolyAgreesWithSymbolicSubstitution) {
    for (std::uint64_t q : {2, 3}) {
        const auto& f = FiniteField::of_order(q);
        auto generic = charpoly_coefficients(motive_matrix(family(q)).phi());  // X^2 - xi X - t
        for (auto& mx : monic_irreducibles(f, 1)) {
            auto sp = specialize(family(q), mx);
            auto cp = charpoly_global(global_motive(motive_matrix(sp)));
            const FqElem x = residue_root(mx);
            for (int i = 0; i <= 2; ++i) {
                auto sub = generic[static_cast<std::size_t>(i)].map([&](const XiFunc& c) { return c.evaluate(x); });
                EXPECT_EQ(cp[i], FqRat(sub));
            }
        }
    }
}
