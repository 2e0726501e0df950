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

#include "isocrystal/expr.hpp"
#include "isocrystal/frobenius.hpp"
#include "local_support.hpp"
#include "support.hpp"

using namespace isoc;
using namespace isoc::testing;

namespace {

FqRat rat(const std::string& text, const FiniteField& f) {
    const FqElem zero(f, 0);
    std::map<std::string, FqRat> vars{{"t", FqRat(FqPoly::x(zero))}, {"c", FqRat::constant(FqElem(f, f.generator()))}};
    return parse_expression(text, FqRat(FqPoly(zero)), vars);
}

GlobalModule module(const std::vector<std::vector<std::string>>& rows, const FiniteField& f, std::uint64_t q) {
    std::vector<std::vector<FqRat>> v;
    for (const auto& r : rows) {
        v.emplace_back();
        for (const auto& e : r) v.back().push_back(rat(e, f));
    }
    return GlobalModule(Matrix<FqRat>::from_rows(v), global_ring(q));
}

CharPoly charpoly(const std::vector<std::string>& coeffs, const FiniteField& f) {
    std::vector<FqRat> c;
    for (const auto& e : coeffs) c.push_back(rat(e, f));
    return CharPoly(c, rat("0", f));
}

GlobalModule random_global(const FiniteField& k, std::uint64_t q, int r) {
    for (;;) {
        Matrix<FqRat> phi(r, r, FqRat(FqPoly(FqElem(k, 0))));
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < r; ++j)
                phi(i, j) = uniform(0, 3) == 0 ? random_ratfunc(k, 1) : FqRat(random_poly(k, 2));
        if (!det_bareiss(phi).is_zero()) return GlobalModule(phi, global_ring(q));
    }
}

LocalPoly local_poly(const std::vector<std::string>& coeffs, const FiniteField& f, std::int64_t prec) {
    std::vector<std::vector<std::string>> row{coeffs};
    auto m = series_matrix<FqElem>(row, FqElem(f, 0), prec);
    std::vector<Series<FqElem>> c;
    for (int j = 0; j < m.cols(); ++j) c.push_back(j + 1 == m.cols() ? Series<FqElem>::constant(FqElem(f, 1)) : m(0, j));
    return LocalPoly(c, Series<FqElem>::zero(FqElem(f, 0)));
}

LocalPoly product(const std::vector<SlopeFactor>& fs) {
    LocalPoly acc = LocalPoly::constant(Series<FqElem>::constant(fs.front().factor.zero_coeff().zero_coeff().one_like()));
    for (const auto& f : fs) acc = acc * f.factor;
    return acc;
}

std::int64_t min_coeff_precision(const LocalPoly& p) {
    std::int64_t m = Series<FqElem>::kExact;
    for (const auto& c : p.coeffs()) m = std::min(m, c.precision());
    return m;
}

}  // namespace

TEST(CharpolyGlobal, Examples) {
    const auto& f3 = FiniteField::get(3, 1);
    EXPECT_EQ(charpoly_global(module({{"t-1"}}, f3, 3)), charpoly({"-(t-1)", "1"}, f3));
    for (std::uint64_t q : {2, 3}) {
        const auto& f = FiniteField::of_order(q);
        EXPECT_EQ(charpoly_global(module({{"0", "t"}, {"1", "c"}}, f, q)), charpoly({"-t", "-c", "1"}, f));
    }
    // GF(9) over F_3: X^2 - (2t + c^4) X + t^2, where c^4 lies in F_3
    const auto& f9 = FiniteField::get(3, 2);
    auto cp = charpoly_global(module({{"0", "t"}, {"1", "c"}}, f9, 3));
    auto norm = FqElem(f9, f9.generator()).pow(4);
    ASSERT_TRUE(f9.in_subfield(norm.value(), f3));
    auto n3 = FqRat::constant(FqElem(f3, f9.restrict_to(norm.value(), f3)));
    EXPECT_EQ(cp, CharPoly({rat("t^2", f3), -(rat("2*t", f3) + n3), rat("1", f3)}, rat("0", f3)));
}

TEST(CharpolyGlobal, CoefficientsDescendForRandomModules) {
    for (int trial = 0; trial < 40; ++trial) {
        const std::uint64_t q = uniform(0, 1) ? 2 : 3;
        const auto& k = FiniteField::get(static_cast<std::uint32_t>(q), uniform(1, 3));
        auto m = random_global(k, q, uniform(1, 2));
        auto cp = charpoly_global(m);
        EXPECT_EQ(cp.zero_coeff().zero_coeff().field().size(), q);
        EXPECT_EQ(cp.degree(), m.rank());
    }
}

// det_F(X - tau) by Bareiss elimination over F_q(t)[X] against char(X^m).
TEST(CharpolyGlobal, RestrictionOfScalarsDeterminant) {
    for (int trial = 0; trial < 100; ++trial) {
        const std::uint64_t q = trial % 2 ? 2 : 3;
        const int m = uniform(1, 3);
        const auto& k = FiniteField::get(static_cast<std::uint32_t>(q), m);
        auto mod = random_global(k, q, uniform(1, 2));
        auto t = restriction_of_scalars(mod);
        const FqRat zero = t.zero();
        using PX = Poly<FqRat>;
        Matrix<PX> xm(t.rows(), t.cols(), PX(zero));
        for (int i = 0; i < t.rows(); ++i)
            for (int j = 0; j < t.cols(); ++j) xm(i, j) = PX::constant(-t(i, j)) + (i == j ? PX::x(zero) : PX(zero));
        EXPECT_EQ(det_bareiss(xm), substitute_power(charpoly_global(mod, false), m)) << "trial " << trial;
    }
}

TEST(NewtonAtPlace, Examples) {
    const auto& f = FiniteField::get(3, 1);
    auto p = charpoly({"-t", "-1", "1"}, f);
    auto zero_place = Place::finite(FqPoly::x(FqElem(f, 0)));
    EXPECT_EQ(newton_at_place(p, zero_place, 1).str(), "[(0,1),(1,1)]");
    EXPECT_EQ(newton_at_place(charpoly({"-t", "0", "1"}, f), zero_place, 1).str(), "[(1/2,2)]");
    EXPECT_EQ(newton_at_place(p, Place::infinity(), 1).str(), "[(-1/2,2)]");
    // one root of valuation 1
    EXPECT_EQ(newton_at_place(charpoly({"-t", "1"}, f), zero_place, 1).str(), "[(1,1)]");
    EXPECT_THROW(newton_at_place(charpoly({"0", "1"}, f), zero_place, 1), DomainError);
    // degree-2 place t^2 + 1 and m = 2 rescale the root valuations by d/m = 1
    auto p2 = Place::finite(FqPoly({FqElem(f, 1), FqElem(f, 0), FqElem(f, 1)}, FqElem(f, 0)));
    EXPECT_EQ(newton_at_place(charpoly({"t^2+1", "0", "1"}, f), p2, 2).str(), "[(1/2,2)]");
}

TEST(SlopeFactorize, Examples) {
    const auto& f = FiniteField::get(3, 1);
    auto one = slope_factorize(local_poly({"-1", "1"}, f, 8), 8);
    ASSERT_EQ(one.size(), 1u);
    EXPECT_EQ(one[0].slope, Rational(0));
    EXPECT_EQ(one[0].factor, local_poly({"-1", "1"}, f, 8));

    for (std::uint32_t cv : {1u, 2u}) {
        const FqElem c(f, cv);
        const std::string cs = std::to_string(cv);
        auto p = local_poly({"-z", "-" + cs, "1"}, f, 3);
        auto fs = slope_factorize(p, 3);
        ASSERT_EQ(fs.size(), 2u);
        EXPECT_EQ(fs[0].slope, Rational(0));
        EXPECT_EQ(fs[1].slope, Rational(1));
        // unit root c + c^-1 z - c^-3 z^2
        const FqElem ci = c.inverse();
        std::vector<FqElem> lam{-c, -ci, ci.pow(3)};
        EXPECT_EQ(fs[0].factor[0], Series<FqElem>(FqElem(f, 0), 0, lam, 3));
        // the other root -c^-1 z + ...
        EXPECT_EQ(fs[1].factor[0].truncated(2), Series<FqElem>::monomial(ci, 1, 2));
        EXPECT_EQ(product(fs), p);
        EXPECT_GE(min_coeff_precision(product(fs)), 3);
    }
    auto pure = slope_factorize(local_poly({"-z", "0", "1"}, f, 8), 8);
    ASSERT_EQ(pure.size(), 1u);
    EXPECT_EQ(pure[0].slope, Rational(1, 2));
    EXPECT_EQ(pure[0].factor.degree(), 2);
}

TEST(SlopeFactorize, FactorsRemultiplyAndArePure) {
    int split = 0;
    for (int trial = 0; trial < 60; ++trial) {
        const auto& f = trial % 2 ? FiniteField::get(2, uniform(1, 2)) : FiniteField::get(3, uniform(1, 2));
        const int n = uniform(1, 4);
        const std::int64_t N = 20;
        std::vector<Series<FqElem>> c;
        for (int i = 0; i < n; ++i) {
            auto s = random_series(f, 2, N + 60).shifted(uniform(0, 2 * (n - i))).truncated(N + 60);
            c.push_back(s);
        }
        if (c[0].is_zero()) continue;
        c.push_back(Series<FqElem>::constant(FqElem(f, 1)));
        LocalPoly p(c, Series<FqElem>::zero(FqElem(f, 0)));
        auto fs = slope_factorize(p, N);
        split += fs.size() > 1;
        EXPECT_EQ(product(fs), p);
        EXPECT_GE(min_coeff_precision(product(fs)), N);
        std::vector<std::optional<std::int64_t>> ys;
        for (const auto& x : p.coeffs()) ys.push_back(x.is_zero() ? std::nullopt : std::optional<std::int64_t>(x.valuation()));
        auto poly = polygon_from_orders(ys, Rational(1));
        ASSERT_EQ(fs.size(), poly.slopes().size());
        for (std::size_t i = 0; i < fs.size(); ++i) {
            EXPECT_EQ(fs[i].slope, poly.slopes()[i].slope);
            EXPECT_EQ(fs[i].factor.degree(), poly.slopes()[i].multiplicity);
            std::vector<std::optional<std::int64_t>> fy;
            for (const auto& x : fs[i].factor.coeffs())
                fy.push_back(x.is_zero() ? std::nullopt : std::optional<std::int64_t>(x.valuation()));
            auto fp = polygon_from_orders(fy, Rational(1));
            EXPECT_EQ(fp.slopes().size(), 1u);
            EXPECT_EQ(fp.smallest(), fs[i].slope);
        }
    }
    EXPECT_GE(split, 15);
}

TEST(FrobeniusStructure, Examples) {
    const auto& f3 = FiniteField::get(3, 1);
    auto carlitz = frobenius_structure(module({{"t-1"}}, f3, 3));
    EXPECT_EQ(carlitz.frobenius(0, 0), rat("1/(t-1)", f3));
    EXPECT_EQ(carlitz.charpoly, charpoly({"-(t-1)", "1"}, f3));
    auto unit = frobenius_structure(module({{"1"}}, f3, 3));
    EXPECT_EQ(unit.frobenius(0, 0), rat("1", f3));
    auto two = frobenius_structure(module({{"0", "t"}, {"1", "c"}}, f3, 3));
    EXPECT_EQ(two.frobenius, module({{"-c/t", "1"}, {"1/t", "0"}}, f3, 3).phi());
    EXPECT_THROW(frobenius_structure(module({{"0", "0"}, {"1", "c"}}, f3, 3)), SingularMatrix);
}

// char(Frob) is the reversal of char_M scaled to be monic: roots inverted.
TEST(FrobeniusStructure, CharpolyOfFrobeniusHasInvertedRoots) {
    for (int trial = 0; trial < 40; ++trial) {
        const std::uint64_t q = trial % 2 ? 2 : 3;
        const auto& k = FiniteField::get(static_cast<std::uint32_t>(q), uniform(1, 2));
        auto fs = frobenius_structure(random_global(k, q, uniform(1, 2)));
        const auto& cp = fs.charpoly;
        const int r = cp.degree();
        std::vector<FqRat> rev;
        for (int i = 0; i <= r; ++i) rev.push_back(cp[r - i] / cp[0]);
        const auto& sub = FiniteField::of_order(q);
        std::vector<FqRat> got;
        for (const auto& c : charpoly_coefficients(fs.frobenius)) got.push_back(descend(c, sub));
        EXPECT_EQ(CharPoly(got, cp.zero_coeff()), CharPoly(rev, cp.zero_coeff()));
    }
}
