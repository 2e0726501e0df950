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

#include "isocrystal/frobenius.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>

namespace isoc {

namespace {

const FiniteField& coefficient_field(const GlobalModule& m) { return m.phi().zero().zero_coeff().field(); }

FqPoly sigma_times(FqPoly p, std::uint64_t q, int n) {
    for (int i = 0; i < n; ++i) p = sigma(p, q);
    return p;
}

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
    std::int64_t d = a / b;
    return (a % b != 0 && ((a < 0) != (b < 0))) ? d - 1 : d;
}

std::int64_t ceil_div(std::int64_t a, std::int64_t b) { return -floor_div(-a, b); }

CharPoly charpoly_from(const std::vector<FqRat>& coeffs, const FiniteField& sub) {
    std::vector<FqRat> d;
    d.reserve(coeffs.size());
    for (const auto& c : coeffs) d.push_back(descend(c, sub));
    return CharPoly(std::move(d), FqRat(FqPoly(FqElem(sub, 0))));
}

struct Split {
    Rational alpha;  ///< valuation of the roots of `high`
    LocalPoly high;  ///< factor whose roots have the smallest valuation
    LocalPoly low;   ///< cofactor, empty if the polygon has one slope
    bool whole = false;
};

using S = Series<FqElem>;

/// Series sum_e c_e u^(e + shift) with u^b = z, known below u^uprec.
S from_u(const FqPoly* const* coeffs, std::size_t count, int j, std::int64_t shift, std::int64_t b, std::int64_t uprec,
         const FqElem& kz) {
    std::map<std::int64_t, FqElem> terms;
    for (std::size_t e = 0; e < count; ++e) {
        const FqElem c = coeffs[e]->coeff(j);
        if (c.is_zero()) continue;
        const std::int64_t ue = static_cast<std::int64_t>(e) + shift;
        if (ue >= uprec) continue;
        if (ue % b != 0) throw DescentFailure("slope factor is not defined over K((z))");
        terms.emplace(ue / b, c);
    }
    const std::int64_t prec = ceil_div(uprec, b);
    if (terms.empty()) return S::zero(kz, prec);
    const std::int64_t lo = terms.begin()->first;
    std::vector<FqElem> dense(static_cast<std::size_t>(terms.rbegin()->first - lo + 1), kz);
    for (const auto& [e, c] : terms) dense[static_cast<std::size_t>(e - lo)] = c;
    return S(kz, lo, std::move(dense), prec);
}

Split split_smallest(const LocalPoly& p, std::int64_t N) {
    const int n = p.degree();
    const FqElem kz = p.zero_coeff().zero_coeff();
    std::vector<std::optional<std::int64_t>> ys;
    for (int i = 0; i <= n; ++i) ys.push_back(p[i].is_zero() ? std::nullopt : std::optional<std::int64_t>(p[i].valuation()));
    if (!ys[0]) throw PrecisionExhausted("constant coefficient vanishes to the known precision");
    if (*ys[static_cast<std::size_t>(n)] != 0 || !(p[n] == S::constant(kz.one_like())))
        throw DomainError("slope_factorize needs a monic polynomial");
    const auto hull = lower_hull(ys);
    const Vertex v = hull[hull.size() - 2];
    const int k = static_cast<int>(v.x);
    const Rational alpha(v.y, n - k);
    const std::int64_t a = alpha.num(), b = alpha.den(), w = a * n;

    // u-adic precision of Q(Y) = P(u^a Y) / u^w, u^b = z
    std::int64_t uprec = b * N + std::abs(a) * n + 1;
    for (int i = 0; i < n; ++i) {
        const auto& c = p[i];
        if (c.is_exact()) continue;
        uprec = std::min(uprec, b * c.precision() + a * i - w);
    }
    if (uprec <= 0) throw PrecisionExhausted("coefficients are not known precisely enough to separate the slopes");
    for (int i = 0; i <= n; ++i)
        if (!ys[static_cast<std::size_t>(i)] && Rational(p[i].precision()) < alpha * Rational(n - i))
            throw PrecisionExhausted("coefficient " + std::to_string(i) + " is not known precisely enough to fix the Newton polygon");
    if (k == 0) return {alpha, p, LocalPoly(S::zero(kz)), true};

    const auto U = static_cast<std::size_t>(uprec);
    std::vector<std::vector<FqElem>> f(U, std::vector<FqElem>(static_cast<std::size_t>(n + 1), kz));
    for (int i = 0; i <= n; ++i) {
        const auto& c = p[i];
        if (c.is_zero()) continue;
        const std::int64_t top = std::min(c.precision(), floor_div(uprec - a * i + w - 1, b) + 1);
        for (std::int64_t e = c.valuation(); e < top; ++e) {
            const std::int64_t ue = b * e + a * i - w;
            if (ue < 0) throw DomainError("point below the Newton polygon");
            f[static_cast<std::size_t>(ue)][static_cast<std::size_t>(i)] = c.coeff(e);
        }
    }
    auto fpoly = [&](std::size_t j) { return FqPoly(f[j], kz); };
    const FqPoly yk = FqPoly::monomial(kz.one_like(), k);
    FqPoly h0(std::vector<FqElem>(f[0].begin() + k, f[0].end()), kz);
    // inverse of h0 modulo Y^k
    std::vector<FqElem> inv(static_cast<std::size_t>(k), kz);
    const FqElem h00inv = h0[0].inverse();
    inv[0] = h00inv;
    for (int d = 1; d < k; ++d) {
        FqElem acc = kz;
        for (int i = 1; i <= std::min(d, h0.degree()); ++i) acc += h0[i] * inv[static_cast<std::size_t>(d - i)];
        inv[static_cast<std::size_t>(d)] = -(acc * h00inv);
    }
    const FqPoly sinv(inv, kz);
    auto mod_yk = [&](const FqPoly& x) {
        std::vector<FqElem> c(x.coeffs().begin(), x.coeffs().begin() + std::min<std::ptrdiff_t>(k, static_cast<std::ptrdiff_t>(x.coeffs().size())));
        return FqPoly(c, kz);
    };
    std::vector<FqPoly> g(U, FqPoly(kz)), h(U, FqPoly(kz));
    g[0] = yk;
    h[0] = h0;
    for (std::size_t j = 1; j < U; ++j) {
        FqPoly e = fpoly(j);
        for (std::size_t i = 1; i < j; ++i) e = e - g[i] * h[j - i];
        FqPoly dg = mod_yk(e * sinv);
        FqPoly rem = e - dg * h0;
        for (int i = 0; i < k; ++i)
            if (!rem[i].is_zero()) throw DomainError("Hensel step failed: residual not divisible by Y^k");
        std::vector<FqElem> hc;
        for (int i = k; i <= rem.degree(); ++i) hc.push_back(rem[i]);
        g[j] = dg;
        h[j] = FqPoly(hc, kz);
    }
    std::vector<const FqPoly*> gp, hp;
    for (std::size_t j = 0; j < U; ++j) {
        gp.push_back(&g[j]);
        hp.push_back(&h[j]);
    }
    std::vector<S> hc, gc;
    for (int j = 0; j <= n - k; ++j) {
        const std::int64_t shift = a * (n - k - j);
        hc.push_back(j == n - k ? S::constant(kz.one_like()) : from_u(hp.data(), U, j, shift, b, uprec + shift, kz));
    }
    for (int j = 0; j <= k; ++j) {
        const std::int64_t shift = a * (k - j);
        gc.push_back(j == k ? S::constant(kz.one_like()) : from_u(gp.data(), U, j, shift, b, uprec + shift, kz));
    }
    return {alpha, LocalPoly(hc, S::zero(kz)), LocalPoly(gc, S::zero(kz)), false};
}

LocalPoly truncate_poly(const LocalPoly& p, std::int64_t N) {
    return p.map([N](const S& c) { return c.is_exact() && c == S::constant(c.zero_coeff().one_like()) ? c : c.truncated(N); });
}

}  // namespace

FqRat descend(const FqRat& f, const FiniteField& sub) {
    const FiniteField& big = f.zero_coeff().field();
    auto down = [&](const FqElem& c) {
        if (!big.in_subfield(c.value(), sub))
            throw DescentFailure("coefficient " + c.str() + " of " + f.str("t") + " does not lie in " + sub.describe());
        return FqElem(sub, big.restrict_to(c.value(), sub));
    };
    return FqRat(f.num().map(down), f.den().map(down));
}

Matrix<FqRat> restriction_of_scalars(const GlobalModule& m) {
    const FiniteField& k = coefficient_field(m);
    const std::uint64_t q = m.q();
    const FiniteField& sub = FiniteField::of_order(q);
    const int deg = extension_degree(k, q);
    const int r = m.rank();
    const FqElem kz(k, 0), sz(sub, 0);
    const FqElem u(k, k.generator());
    Matrix<FqRat> out(r * deg, r * deg, FqRat(FqPoly(sz)));
    for (int j = 0; j < r; ++j)
        for (int a = 0; a < deg; ++a) {
            const FqElem ua = u.pow(static_cast<std::uint64_t>(a) * q);
            for (int i = 0; i < r; ++i) {
                const FqRat& x = m.phi()(i, j);
                if (x.is_zero()) continue;
                // make the denominator a norm, hence defined over F_q
                FqPoly conj = FqPoly::constant(kz.one_like());
                for (int l = 1; l < deg; ++l) conj = conj * sigma_times(x.den(), q, l);
                const FqPoly num = x.num() * conj * FqPoly::constant(ua);
                const FqRat den = descend(FqRat(x.den() * conj), sub);
                std::vector<std::vector<FqElem>> parts(static_cast<std::size_t>(deg), std::vector<FqElem>(num.coeffs().size(), sz));
                for (std::size_t e = 0; e < num.coeffs().size(); ++e) {
                    auto co = k.coordinates(num.coeffs()[e].value(), sub);
                    for (int b = 0; b < deg; ++b) parts[static_cast<std::size_t>(b)][e] = FqElem(sub, co[static_cast<std::size_t>(b)]);
                }
                for (int b = 0; b < deg; ++b) out(i * deg + b, j * deg + a) = FqRat(FqPoly(parts[static_cast<std::size_t>(b)], sz)) / den;
            }
        }
    return out;
}

CharPoly substitute_power(const CharPoly& p, int k) {
    std::vector<FqRat> c(static_cast<std::size_t>(p.degree() * k + 1), p.zero_coeff());
    for (int i = 0; i <= p.degree(); ++i) c[static_cast<std::size_t>(i * k)] = p[i];
    return CharPoly(std::move(c), p.zero_coeff());
}

CharPoly restricted_charpoly(const GlobalModule& m) {
    const FiniteField& sub = FiniteField::of_order(m.q());
    return charpoly_from(charpoly_coefficients(restriction_of_scalars(m)), sub);
}

CharPoly charpoly_global(const GlobalModule& m, bool cross_check) {
    const FiniteField& k = coefficient_field(m);
    const FiniteField& sub = FiniteField::of_order(m.q());
    const int deg = extension_degree(k, m.q());
    if (det_bareiss(m.phi()).is_zero()) throw SingularMatrix("structure matrix is singular; tau is not bijective");
    auto cp = charpoly_from(charpoly_coefficients(tau_power_matrix(m, deg)), sub);
    if (cross_check && deg > 1 && !(substitute_power(cp, deg) == restricted_charpoly(m)))
        throw DescentFailure("char(X^m) differs from det(X - tau) over F_q(t)");
    return cp;
}

NewtonPolygon newton_at_place(const CharPoly& p, const Place& place, int m) {
    if (p.degree() < 0 || p[0].is_zero()) throw DomainError("constant coefficient is zero: tau is not bijective");
    std::vector<std::optional<std::int64_t>> ys;
    for (int i = 0; i <= p.degree(); ++i)
        ys.push_back(p[i].is_zero() ? std::nullopt : std::optional<std::int64_t>(ord_at_place(p[i], place)));
    return polygon_from_orders(ys, Rational(place.degree(), m));
}

LocalPoly localize_charpoly(const CharPoly& p, const Place& place, std::int64_t N) {
    const FqElem kz = p.zero_coeff().zero_coeff();
    std::vector<S> c;
    for (int i = 0; i <= p.degree(); ++i) {
        if (i == p.degree() && p[i] == p[i].one_like()) c.push_back(S::constant(kz.one_like()));
        else c.push_back(p[i].is_zero() ? S::zero(kz, N) : expand_at_place(p[i], place, N));
    }
    return LocalPoly(std::move(c), S::zero(kz));
}

std::vector<SlopeFactor> slope_factorize(const LocalPoly& p, std::int64_t N, const Rational& scale) {
    std::vector<SlopeFactor> out;
    if (p.degree() < 1) return out;
    // the cofactor loses up to ord(a_0) digits in each later split
    if (p[0].is_zero()) throw PrecisionExhausted("constant coefficient vanishes to the known precision");
    const std::int64_t inner = N + std::abs(p[0].valuation()) + p.degree();
    LocalPoly cur = p;
    for (;;) {
        auto sp = split_smallest(cur, inner);
        out.push_back({sp.alpha * scale, truncate_poly(sp.high, N)});
        if (sp.whole) break;
        cur = sp.low;
    }
    return out;
}

FrobeniusStructure frobenius_structure(const GlobalModule& m) {
    const FiniteField& k = coefficient_field(m);
    const int deg = extension_degree(k, m.q());
    auto phim = tau_power_matrix(m, deg);
    if (det_bareiss(phim).is_zero()) throw SingularMatrix("tau^m is not invertible");
    FrobeniusStructure out{m, inverse(phim), charpoly_global(m, false)};
    auto back = charpoly_from(charpoly_coefficients(inverse(out.frobenius)), FiniteField::of_order(m.q()));
    if (!(back == out.charpoly)) throw DescentFailure("characteristic polynomial of Frob^-1 differs from char_M");
    return out;
}

}  // namespace isoc
