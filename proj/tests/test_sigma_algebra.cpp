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
#include "isocrystal/local_isocrystal.hpp"
#include "isocrystal/tau_module.hpp"
#include "isocrystal/twisted_poly.hpp"
#include "support.hpp"

using namespace isoc;
using isoc::testing::uniform;

namespace {

using RF = RatFunc<FqElem>;

const FiniteField& F3() { return FiniteField::get(3, 1); }

DifferenceRing global_ring(std::uint64_t q) { return {DifferenceRing::Kind::global, q, "F_q(t) (x) k"}; }

// Rational function in t over `f` from an expression; "c" names the generator.
RF rf(const std::string& text, const FiniteField& f) {
    const FqElem zero(f, 0);
    RF t(FqPoly::x(zero));
    std::map<std::string, RF> vars{{"t", t}, {"c", RF::constant(FqElem(f, f.generator()))}};
    return parse_expression(text, RF(FqPoly(zero)), vars);
}

Matrix<RF> rf_matrix(const std::vector<std::vector<std::string>>& rows, const FiniteField& f) {
    std::vector<std::vector<RF>> v;
    for (const auto& r : rows) {
        v.emplace_back();
        for (const auto& e : r) v.back().push_back(rf(e, f));
    }
    return Matrix<RF>::from_rows(v);
}

XiFunc xi(const FiniteField& f) { return XiFunc::xi_power(f, 1); }

Matrix<FqElem> random_matrix(const FiniteField& f, int r, int c) {
    Matrix<FqElem> m(r, c, FqElem(f, 0));
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < c; ++j) m(i, j) = isoc::testing::random_elem(f);
    return m;
}

Matrix<RF> random_rf_matrix(const FiniteField& f, int r) {
    Matrix<RF> m(r, r, RF(FqPoly(FqElem(f, 0))));
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) m(i, j) = RF(isoc::testing::random_poly(f, 2));
    return m;
}

}  // namespace

TEST(TwistedPoly, MultiplicationExamples) {
    const auto& f = F3();
    const XiFunc zero = XiFunc::constant(f, 0);
    using TP = TwistedPoly<XiFunc>;
    auto tau = TP::tau_power(zero, 3, 1);
    auto x = TP::constant(xi(f), 3);
    EXPECT_EQ(tau * x, TP({zero, sigma(xi(f), 3)}, zero, 3));
    EXPECT_EQ((tau * x).coeff(1), XiFunc::xi_power(f, 3));
    EXPECT_EQ(TP::constant(zero.one_like(), 3) * x, x);
    EXPECT_EQ((tau + x) * tau, TP({zero, xi(f), zero.one_like()}, zero, 3));
}

TEST(TwistedPoly, Associativity) {
    const auto& f = FiniteField::get(2, 2);
    const FqElem zero(f, 0);
    auto rnd = [&] {
        std::vector<FqElem> c;
        for (int i = 0; i <= uniform(0, 3); ++i) c.push_back(isoc::testing::random_elem(f));
        return TwistedPoly<FqElem>(c, zero, 2);
    };
    for (int k = 0; k < 100; ++k) {
        auto a = rnd(), b = rnd(), c = rnd();
        EXPECT_EQ((a * b) * c, a * (b * c));
        EXPECT_EQ(a * (b + c), a * b + a * c);
    }
}

TEST(TwistedPoly, ComposeExamples) {
    const auto& f = F3();
    const FqElem zero(f, 0), one(f, 1);
    using TP = TwistedPoly<FqElem>;
    auto carlitz = TP({one, one}, zero, 3);  // theta + tau, theta = 1
    auto t = FqPoly::x(zero);
    EXPECT_EQ(twisted_compose(t, carlitz, zero), carlitz);
    EXPECT_EQ(twisted_compose(t * t, TP::tau_power(zero, 3, 1), zero), TP::tau_power(zero, 3, 2));
    // theta^2 + (theta + theta^3) tau + tau^2
    EXPECT_EQ(twisted_compose(t * t, carlitz, zero), TP({one, one + one, one}, zero, 3));
    // degree of p(phi_t) is deg p * deg phi_t
    auto p = FqPoly({one, zero, one, one}, zero);
    EXPECT_EQ(twisted_compose(p, TP({one, one, one}, zero, 3), zero).degree(), 6);
}

TEST(TauModule, TauPowerExamples) {
    const auto& f9 = FiniteField::get(3, 2);
    TauModule<RF> m(rf_matrix({{"0", "t"}, {"1", "c"}}, f9), global_ring(3));
    EXPECT_EQ(tau_power_matrix(m, 1), m.phi());
    EXPECT_EQ(tau_power_matrix(m, 2), rf_matrix({{"t", "t*c^3"}, {"c", "t+c^4"}}, f9));
    const auto& f = F3();
    TauModule<XiFunc> r1(Matrix<XiFunc>::from_rows({{xi(f)}}), global_ring(3));
    EXPECT_EQ(tau_power_matrix(r1, 2)(0, 0), XiFunc::xi_power(f, 4));
}

TEST(TauModule, Semilinearity) {
    const auto& f = FiniteField::get(2, 2);
    for (int k = 0; k < 50; ++k) {
        int r = uniform(1, 3);
        TauModule<FqElem> m(random_matrix(f, r, r), global_ring(2));
        auto v = random_matrix(f, r, 1);
        auto c = isoc::testing::random_elem(f);
        EXPECT_EQ(m.apply_tau(v.scaled(c)), m.apply_tau(v).scaled(sigma(c, 2)));
    }
}

TEST(TauModule, TauPowerIsMultiplicative) {
    const auto& f = FiniteField::get(3, 2);
    for (int k = 0; k < 20; ++k) {
        int r = uniform(1, 3);
        TauModule<RF> m(random_rf_matrix(f, r), global_ring(3));
        int a = uniform(1, 4), b = uniform(1, 4);
        EXPECT_EQ(tau_power_matrix(m, a + b), tau_power_matrix(m, a) * sigma_n(tau_power_matrix(m, b), 3, a));
    }
}

TEST(TauModule, DualExamples) {
    const auto& f9 = FiniteField::get(3, 2);
    auto id = TauModule<RF>::unit(rf("0", f9), global_ring(3));
    EXPECT_EQ(dual_module(id).phi(), id.phi());
    TauModule<RF> m(rf_matrix({{"0", "t"}, {"1", "c"}}, f9), global_ring(3));
    // (Phi^T)^-1, the convention under which <tau f, tau m> = sigma <f, m>
    EXPECT_EQ(dual_module(m).phi(), rf_matrix({{"-c/t", "1/t"}, {"1", "0"}}, f9));
    using LS = Series<FqElem>;
    const FqElem one(F3(), 1);
    LocalIsocrystal<FqElem> z(Matrix<LS>::from_rows({{LS::monomial(one, 1)}}), local_ring(3));
    auto d = dual_module(z);
    EXPECT_EQ(rank1_slope(d), -1);
}

TEST(TauModule, DualIsAnInvolution) {
    const auto& f = FiniteField::get(2, 2);
    for (int k = 0; k < 30; ++k) {
        int r = uniform(1, 3);
        auto phi = random_rf_matrix(f, r);
        if (det_bareiss(phi).is_zero()) continue;
        TauModule<RF> m(phi, global_ring(2));
        EXPECT_EQ(dual_module(dual_module(m)).phi(), m.phi());
    }
}

TEST(TauModule, TensorExamples) {
    const auto& f = F3();
    TauModule<RF> m(rf_matrix({{"0", "t"}, {"1", "c"}}, FiniteField::get(3, 2)), global_ring(3));
    auto unit = TauModule<RF>::unit(m.phi().zero(), global_ring(3));
    EXPECT_EQ(tensor_module(m, unit).phi(), m.phi());
    TauModule<RF> carlitz(rf_matrix({{"t-1"}}, f), global_ring(3));
    EXPECT_EQ(tensor_module(carlitz, carlitz).phi(), rf_matrix({{"(t-1)^2"}}, f));
    using LS = Series<FqElem>;
    const FqElem one(f, 1);
    LocalIsocrystal<FqElem> a(Matrix<LS>::from_rows({{LS::monomial(one, 2)}}), local_ring(3));
    LocalIsocrystal<FqElem> b(Matrix<LS>::from_rows({{LS::monomial(one, 3)}}), local_ring(3));
    EXPECT_EQ(rank1_slope(tensor_module(a, b)), 5);
}

TEST(TauModule, TensorDeterminant) {
    const auto& f = FiniteField::get(3, 1);
    for (int k = 0; k < 30; ++k) {
        int ra = uniform(1, 2), rb = uniform(1, 3);
        TauModule<RF> a(random_rf_matrix(f, ra), global_ring(3)), b(random_rf_matrix(f, rb), global_ring(3));
        auto d = det_bareiss(tensor_module(a, b).phi());
        EXPECT_EQ(d, power(det_bareiss(a.phi()), rb) * power(det_bareiss(b.phi()), ra));
    }
}

TEST(TauModule, ExteriorPowerExamples) {
    const auto& f = F3();
    const XiFunc zero = XiFunc::constant(f, 0);
    using PX = Poly<XiFunc>;
    auto t = PX::x(zero);
    TauModule<PX> m(Matrix<PX>::from_rows({{PX(zero), t}, {t.one_like(), PX::constant(xi(f))}}), global_ring(3));
    EXPECT_EQ(exterior_power(m, 0).phi(), (Matrix<PX>::identity(1, PX(zero))));
    EXPECT_EQ(exterior_power(m, 2).phi()(0, 0), -t);
    EXPECT_EQ(exterior_power(m, 1).phi(), m.phi());
    EXPECT_THROW(exterior_power(m, 3), DomainError);
}

// Hom(M, N) = hom(M, N)^tau over a finite field: F_q-dimension of the fixed
// space against a brute-force search for f with f Phi_M = Phi_N sigma(f).
TEST(TauModule, HomIsFixedSpaceOfInnerHom) {
    for (auto [p, e, q] : {std::tuple{2, 1, 2}, {2, 2, 2}, {3, 1, 3}, {3, 2, 3}}) {
        const auto& k = FiniteField::get(p, e);
        const auto& fq = FiniteField::of_order(q);
        const int m = e / fq.degree();
        for (int trial = 0; trial < 6; ++trial) {
            int rm = uniform(1, 2), rn = uniform(1, 2);
            if (k.size() == 9 && rm * rn == 4) rn = 1;
            auto pm = random_matrix(k, rm, rm), pn = random_matrix(k, rn, rn);
            if (det_bareiss(pm).is_zero() || det_bareiss(pn).is_zero()) continue;
            TauModule<FqElem> M(pm, global_ring(q)), N(pn, global_ring(q));
            // brute force
            const int d = rm * rn;
            std::uint64_t total = 1;
            for (int i = 0; i < d; ++i) total *= k.size();
            std::uint64_t count = 0;
            for (std::uint64_t code = 0; code < total; ++code) {
                Matrix<FqElem> f(rn, rm, FqElem(k, 0));
                auto c = code;
                for (int i = 0; i < d; ++i, c /= k.size()) f(i / rm, i % rm) = FqElem(k, static_cast<std::uint32_t>(c % k.size()));
                if (f * pm == pn * sigma(f, q)) ++count;
            }
            // fixed space of v -> Psi sigma(v) on M^dual (x) N, F_q-linearly
            auto psi = hom_module(M, N).phi();
            Matrix<FqElem> lin(d * m, d * m, FqElem(fq, 0));
            const FqElem u(k, k.generator());
            for (int j = 0; j < d; ++j)
                for (int a = 0; a < m; ++a) {
                    Matrix<FqElem> v(d, 1, FqElem(k, 0));
                    v(j, 0) = u.pow(static_cast<std::uint64_t>(a));
                    auto img = psi * sigma(v, q) - v;
                    for (int i = 0; i < d; ++i) {
                        auto co = k.coordinates(img(i, 0).value(), fq);
                        for (int b = 0; b < m; ++b) lin(i * m + b, j * m + a) = FqElem(fq, co[b]);
                    }
                }
            int dim = kernel(lin).cols();
            std::uint64_t expect = 1;
            for (int i = 0; i < dim; ++i) expect *= q;
            EXPECT_EQ(count, expect) << k.describe() << " ranks " << rm << "," << rn;
        }
    }
}
