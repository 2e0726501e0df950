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

// Builders and oracles for the local isocrystal suites.

#ifndef ISOCRYSTAL_TESTS_LOCAL_SUPPORT_HPP
#define ISOCRYSTAL_TESTS_LOCAL_SUPPORT_HPP

#include <map>
#include <string>
#include <vector>

#include "isocrystal/expr.hpp"
#include "isocrystal/local_isocrystal.hpp"
#include "support.hpp"

namespace isoc::testing {

/// Matrix of series from expressions in z (and xi over F_q(xi), c = field
/// generator over a finite field), truncated to `prec`.
template <class K>
SeriesMatrix<K> series_matrix(const std::vector<std::vector<std::string>>& rows, const K& kzero, std::int64_t prec,
                              const std::map<std::string, K>& extra = {}) {
    using S = Series<K>;
    const K one = kzero.one_like();
    std::map<std::string, S> vars{{"z", S::monomial(one, 1)}};
    if constexpr (std::is_same_v<K, XiFunc>) {
        vars.emplace("xi", S::constant(XiFunc::xi_power(kzero.field(), 1)));
    } else {
        vars.emplace("c", S::constant(FqElem(kzero.field(), kzero.field().generator())));
    }
    for (const auto& [k, v] : extra) vars[k] = S::constant(v);
    std::vector<std::vector<S>> out;
    for (const auto& r : rows) {
        out.emplace_back();
        for (const auto& e : r) out.back().push_back(parse_expression(e, S::zero(kzero), vars).truncated(prec));
    }
    return SeriesMatrix<K>::from_rows(out);
}

inline Series<FqElem> random_series(const FiniteField& f, int max_deg, std::int64_t prec) {
    return Series<FqElem>::from_poly(random_poly(f, max_deg), prec);
}

inline SeriesMatrix<FqElem> random_series_matrix(const FiniteField& f, int r, int c, int max_deg, std::int64_t prec) {
    SeriesMatrix<FqElem> m(r, c, Series<FqElem>::zero(FqElem(f, 0), prec));
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < c; ++j) m(i, j) = random_series(f, max_deg, prec);
    return m;
}

/// Random module with polynomial entries of degree <= 2 and nonzero determinant.
inline LocalIsocrystal<FqElem> random_local_module(const FiniteField& f, std::uint64_t q, int r, std::int64_t prec) {
    for (;;) {
        auto phi = random_series_matrix(f, r, r, 2, prec);
        auto d = det_division_free(phi);
        if (d.is_zero() || d.valuation() > 4) continue;
        return LocalIsocrystal<FqElem>(phi, local_ring(q));
    }
}

struct GrouchoInput {
    SeriesMatrix<FqElem> r;
    int s = 1;
    std::uint64_t q = 2;
    int n = 1;
    SeriesMatrix<FqElem> theta0;
};

/// Random rho matrix satisfying the lift hypotheses: R11 invertible mod z,
/// R21 and R22 divisible by z.
inline GrouchoInput random_groucho_input(const FiniteField& f, std::int64_t prec) {
    GrouchoInput in;
    in.q = f.characteristic();
    in.n = uniform(1, 2);
    const int r = uniform(2, 3);
    in.s = uniform(1, r - 1);
    const int t = r - in.s;
    const std::int64_t wp = prec + 8;
    for (;;) {
        in.r = random_series_matrix(f, r, r, 3, wp);
        for (int i = in.s; i < r; ++i)
            for (int j = 0; j < r; ++j) in.r(i, j) = in.r(i, j).shifted(1).truncated(wp);
        if (rank(reduce_mod_z(in.r.block(0, 0, in.s, in.s))) == in.s) break;
    }
    in.theta0 = random_series_matrix(f, t, in.s, 3, wp);
    for (int i = 0; i < t; ++i)
        for (int j = 0; j < in.s; ++j) in.theta0(i, j) = in.theta0(i, j).shifted(1).truncated(wp);
    return in;
}

/// Lower-left block of C^-1 R sigma^n(C) with C = [[1, 0], [Theta, 1]]
/// vanishes mod z^N.
inline bool groucho_summand_is_stable(const GrouchoInput& in, const SeriesMatrix<FqElem>& theta, std::int64_t N) {
    const int r = in.r.rows(), t = r - in.s;
    const auto zero = in.r.zero();
    auto c = SeriesMatrix<FqElem>::identity(r, zero), ci = c;
    c.set_block(in.s, 0, theta);
    ci.set_block(in.s, 0, -theta);
    auto x = ci * in.r * sigma_n(c, in.q, in.n);
    auto ll = truncate(x.block(in.s, 0, t, in.s), N);
    return ll.is_zero() && min_precision(ll) >= N;
}

/// Multiset {a + b} with multiplicities m_a m_b.
inline NewtonPolygon slope_sums(const NewtonPolygon& a, const NewtonPolygon& b) {
    std::vector<Slope> out;
    for (const auto& x : a.slopes())
        for (const auto& y : b.slopes()) out.push_back({x.slope + y.slope, x.multiplicity * y.multiplicity});
    return NewtonPolygon(out);
}

/// psi_0 xi = 1 and psi_l xi + sum_{i+j=l-1} psi_i psi_j^q = 0 for l < L,
/// where Theta = sum psi_l z^(l+1).
inline bool psi_recursion_holds(const Series<XiFunc>& theta, std::uint64_t q, int L) {
    const auto& f = FiniteField::of_order(q);
    const XiFunc xi = XiFunc::xi_power(f, 1);
    if (theta.coeff(0) != XiFunc::constant(f, 0)) return false;
    std::vector<XiFunc> psi;
    for (int l = 0; l < L; ++l) psi.push_back(theta.coeff(l + 1));
    if (!(psi[0] * xi).is_one()) return false;
    for (int l = 1; l < L; ++l) {
        XiFunc acc = psi[static_cast<std::size_t>(l)] * xi;
        for (int i = 0; i <= l - 1; ++i) acc += psi[static_cast<std::size_t>(i)] * sigma(psi[static_cast<std::size_t>(l - 1 - i)], q);
        if (!acc.is_zero()) return false;
    }
    return true;
}

}  // namespace isoc::testing

#endif
