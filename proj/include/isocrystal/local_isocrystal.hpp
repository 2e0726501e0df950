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

#ifndef ISOCRYSTAL_LOCAL_ISOCRYSTAL_HPP
#define ISOCRYSTAL_LOCAL_ISOCRYSTAL_HPP

#include <algorithm>
#include <numeric>
#include <optional>
#include <type_traits>
#include <vector>

#include "finite_field.hpp"
#include "laurent.hpp"
#include "matrix.hpp"
#include "newton_polygon.hpp"
#include "place.hpp"
#include "rational.hpp"
#include "tau_module.hpp"
#include "xi_function.hpp"

namespace isoc {

// Local isocrystals live over K((z)) with K finite or F_q(xi); sigma is the
// q-Frobenius on K and fixes z. All lattices are given by basis matrices
// whose columns span them over K[[z]].

template <class K>
using Series = LaurentSeries<K>;
template <class K>
using SeriesMatrix = Matrix<LaurentSeries<K>>;
template <class K>
using LocalIsocrystal = TauModule<LaurentSeries<K>>;

/// rho = z^(-n alpha) tau^n; n alpha must be an integer.
struct RhoSpec {
    int n = 1;
    Rational alpha;
    std::int64_t exponent() const {
        Rational e = alpha * Rational(n);
        if (!e.is_integer()) throw DomainError("n * alpha = " + e.str() + " is not an integer");
        return e.num();
    }
};

/// Internal precision used for a requested output precision N: 2N over a
/// finite field, N + 4 over F_q(xi), where coefficient growth dominates.
template <class K>
std::int64_t working_precision(std::int64_t n) {
    if constexpr (std::is_same_v<K, XiFunc>) return n + 4;
    else return 2 * n;
}

inline DifferenceRing local_ring(std::uint64_t q) { return {DifferenceRing::Kind::local, q, "K((z))"}; }

/// [K : F_q] for a finite coefficient field.
inline int extension_degree(const FiniteField& k, std::uint64_t q) {
    int j = 0;
    std::uint64_t r = q;
    const auto p = static_cast<std::uint64_t>(k.characteristic());
    while (r % p == 0) {
        r /= p;
        ++j;
    }
    if (r != 1 || j == 0 || k.degree() % j != 0)
        throw DomainError(k.describe() + " is not an extension of F_" + std::to_string(q));
    return k.degree() / j;
}

template <class K>
SeriesMatrix<K> constant_matrix(const Matrix<K>& m) {
    return m.map([](const K& x) { return Series<K>::constant(x); });
}

template <class K>
SeriesMatrix<K> twist(const SeriesMatrix<K>& m, std::int64_t k) {
    return m.map([k](const Series<K>& x) { return x.shifted(k); });
}

template <class K>
SeriesMatrix<K> truncate(const SeriesMatrix<K>& m, std::int64_t prec) {
    return m.map([prec](const Series<K>& x) { return x.truncated(prec); });
}

template <class K>
std::int64_t min_valuation(const SeriesMatrix<K>& m) {
    std::int64_t v = Series<K>::kExact;
    for (const auto& x : m.entries()) v = std::min(v, x.valuation());
    return v;
}

template <class K>
std::int64_t min_precision(const SeriesMatrix<K>& m) {
    std::int64_t v = Series<K>::kExact;
    for (const auto& x : m.entries()) v = std::min(v, x.precision());
    return v;
}

/// Coefficient matrix of z^e.
template <class K>
Matrix<K> coefficient_matrix(const SeriesMatrix<K>& m, std::int64_t e) {
    return m.map([e](const Series<K>& x) { return x.coeff(e); });
}

/// Reduction modulo z of an integral matrix.
template <class K>
Matrix<K> reduce_mod_z(const SeriesMatrix<K>& m) {
    if (min_valuation(m) < 0) throw DomainError("matrix is not integral; cannot reduce modulo z");
    if (min_precision(m) <= 0) throw PrecisionExhausted("no precision left to reduce modulo z");
    return coefficient_matrix(m, 0);
}

template <class K>
int rank1_slope(const LocalIsocrystal<K>& m) {
    if (m.rank() != 1) throw DomainError("rank1_slope needs rank 1, got " + std::to_string(m.rank()));
    const auto& x = m.phi()(0, 0);
    if (x.is_zero()) throw NonUnit("structure coefficient vanishes to the known precision");
    return static_cast<int>(x.valuation());
}

/// Matrix of rho in standard coordinates.
template <class K>
SeriesMatrix<K> rho_matrix(const LocalIsocrystal<K>& m, const RhoSpec& rho) {
    return twist(tau_power_matrix(m, rho.n), -rho.exponent());
}

/// Matrix of rho with respect to the lattice basis B: B^-1 rho sigma^n(B).
template <class K>
SeriesMatrix<K> rho_in_basis(const LocalIsocrystal<K>& m, const RhoSpec& rho, const SeriesMatrix<K>& b) {
    return inverse(b) * rho_matrix(m, rho) * sigma_n(b, m.q(), rho.n);
}

/// True iff tau^n L generates z^(n alpha) L.
template <class K>
bool purity_check(const LocalIsocrystal<K>& m, const Rational& alpha, int n, const SeriesMatrix<K>& lattice) {
    RhoSpec rho{n, alpha};
    rho.exponent();
    auto r = rho_in_basis(m, rho, lattice);
    if (min_precision(r) <= 0) throw PrecisionExhausted("precision exhausted in purity check");
    if (min_valuation(r) < 0) return false;
    auto red = reduce_mod_z(r);
    return rank(red) == m.rank();
}

/// Basis of the K[[z]]-span of the columns of a (full row rank r), by
/// elimination with a pivot of globally minimal valuation at every step.
template <class K>
SeriesMatrix<K> column_span(SeriesMatrix<K> a) {
    const int r = a.rows();
    std::vector<bool> row_done(r, false);
    std::vector<int> pivot_cols;
    for (int step = 0; step < r; ++step) {
        int pi = -1, pj = -1;
        std::int64_t best = Series<K>::kExact;
        for (int i = 0; i < r; ++i) {
            if (row_done[i]) continue;
            for (int j = 0; j < a.cols(); ++j) {
                if (std::find(pivot_cols.begin(), pivot_cols.end(), j) != pivot_cols.end()) continue;
                const auto& x = a(i, j);
                if (!x.is_zero() && x.valuation() < best) {
                    best = x.valuation();
                    pi = i;
                    pj = j;
                }
            }
        }
        if (pi < 0) throw PrecisionExhausted("lattice generators have lost rank to the known precision");
        auto inv = a(pi, pj).inverse();
        for (int j = 0; j < a.cols(); ++j) {
            if (j == pj || a(pi, j).is_zero()) continue;
            if (std::find(pivot_cols.begin(), pivot_cols.end(), j) != pivot_cols.end()) continue;
            auto f = a(pi, j) * inv;
            for (int i = 0; i < r; ++i) a(i, j) -= a(i, pj) * f;
        }
        row_done[pi] = true;
        pivot_cols.push_back(pj);
    }
    std::sort(pivot_cols.begin(), pivot_cols.end());
    return a.select_columns(pivot_cols);
}

/// Smallest rho-stable lattice containing L0: L <- L + rho(L) until stable.
template <class K>
SeriesMatrix<K> lattice_saturate(const LocalIsocrystal<K>& m, const RhoSpec& rho, SeriesMatrix<K> lattice, int maxiter) {
    const auto rm = rho_matrix(m, rho);
    for (int it = 0; it <= maxiter; ++it) {
        auto image = rm * sigma_n(lattice, m.q(), rho.n);
        auto coords = inverse(lattice) * image;
        if (min_precision(coords) <= 0) throw PrecisionExhausted("precision exhausted during lattice saturation");
        if (min_valuation(coords) >= 0) return lattice;
        lattice = column_span(SeriesMatrix<K>::hstack(lattice, image));
    }
    throw NonStabilizing("lattice saturation did not stabilize within " + std::to_string(maxiter) + " steps");
}

/// Basis of the column space of a matrix over a field, in echelon form
/// (reduced, pivot rows increasing).
template <class K>
Matrix<K> column_space(const Matrix<K>& a) {
    Matrix<K> t = a.transpose();
    auto piv = rref(t);
    Matrix<K> basis(a.rows(), static_cast<int>(piv.size()), a.zero());
    for (std::size_t k = 0; k < piv.size(); ++k)
        for (int i = 0; i < a.rows(); ++i) basis(i, static_cast<int>(k)) = t(static_cast<int>(k), i);
    return basis;
}

template <class K>
struct UnitPart {
    int s = 0;     ///< dimension of the stable image
    int k = 1;     ///< rho-bar^k maps everything into the stable image
    Matrix<K> P;   ///< constant basis: first s columns span the stable image
};

/// Stable image of rho-bar = (R mod z) sigma^n on K^r, and a basis adapted to it.
template <class K>
UnitPart<K> mod_z_unit_part(const SeriesMatrix<K>& rho_lattice, std::uint64_t q, int n) {
    const Matrix<K> rbar = reduce_mod_z(rho_lattice);
    const int r = rbar.rows();
    Matrix<K> v = Matrix<K>::identity(r, rbar.zero());
    int steps = 0;
    for (;;) {
        Matrix<K> next = column_space(rbar * sigma_n(v, q, n));
        ++steps;
        bool stable = next.cols() == v.cols();
        v = std::move(next);
        if (stable || v.cols() == 0) break;
    }
    UnitPart<K> out;
    out.s = v.cols();
    out.k = std::max(1, steps - 1);
    if (v.cols() == 0) out.k = steps;
    // pivot rows of the echelon basis, then unit vectors for the others
    std::vector<int> pivot_rows;
    for (int j = 0; j < v.cols(); ++j) {
        int i = 0;
        while (v(i, j).is_zero()) ++i;
        pivot_rows.push_back(i);
    }
    Matrix<K> p(r, r, rbar.zero());
    p.set_block(0, 0, v);
    int col = v.cols();
    for (int i = 0; i < r; ++i)
        if (std::find(pivot_rows.begin(), pivot_rows.end(), i) == pivot_rows.end()) p(i, col++) = rbar.zero().one_like();
    out.P = std::move(p);
    return out;
}

enum class GrouchoSchedule { incremental, picard };

/// Solves Theta = (R21 + R22 s(Theta) - Theta R12 s(Theta)) R11^-1 with
/// s = sigma^n, Theta divisible by z, modulo z^N. R is the matrix of rho in
/// a basis whose first `s` vectors reduce to the unit part: R21, R22 vanish
/// mod z and R11 is invertible mod z. The columns [1; Theta] then span the
/// unique rho-stable direct summand lifting the unit part.
template <class K>
SeriesMatrix<K> groucho_lift(const SeriesMatrix<K>& r, int s, std::uint64_t q, int n, std::int64_t N,
                             GrouchoSchedule schedule = GrouchoSchedule::incremental,
                             const std::optional<SeriesMatrix<K>>& theta0 = std::nullopt) {
    const int rk = r.rows();
    const int t = rk - s;
    if (s <= 0 || s > rk) throw DomainError("groucho_lift needs 0 < s <= rank");
    const auto zero = r.zero();
    const K kzero = zero.zero_coeff();
    if (t == 0) return SeriesMatrix<K>(0, s, zero);
    auto r11 = r.block(0, 0, s, s), r12 = r.block(0, s, s, t);
    auto r21 = r.block(s, 0, t, s), r22 = r.block(s, s, t, t);
    if (min_valuation(r11) < 0 || min_valuation(r12) < 0) throw DomainError("rho is not integral on the lattice");
    if (min_valuation(r21) < 1 || min_valuation(r22) < 1)
        throw DomainError("lower blocks of rho do not vanish modulo z; the split is not adapted to the unit part");
    if (rank(reduce_mod_z(r11)) != s) throw DomainError("upper-left block of rho is not invertible modulo z");
    auto w = inverse(r11);
    std::int64_t P = std::min({N, min_precision(r21), min_precision(w) + 1, min_precision(r22) + 1, min_precision(r12) + 2});
    if (P < 1) throw PrecisionExhausted("no precision available for the Groucho iteration");

    if (schedule == GrouchoSchedule::picard) {
        SeriesMatrix<K> theta = theta0 ? truncate(*theta0, P) : SeriesMatrix<K>(t, s, Series<K>::zero(kzero, P));
        if (theta0 && min_valuation(*theta0) < 1) throw DomainError("initial Theta must be divisible by z");
        for (std::int64_t it = 0; it <= P + 1; ++it) {
            auto st = sigma_n(theta, q, n);
            auto next = truncate<K>((r21 + r22 * st - theta * (r12 * st)) * w, P);
            bool same = next == theta;
            theta = std::move(next);
            if (same && it > 0) break;
        }
        return theta;
    }

    // coefficientwise: Theta_m depends only on Theta_1..Theta_{m-1}
    std::vector<Matrix<K>> th(P, Matrix<K>(t, s, kzero)), sth(P, Matrix<K>(t, s, kzero));
    std::vector<Matrix<K>> u(P, Matrix<K>(s, s, kzero)), v(P, Matrix<K>(t, s, kzero));
    std::vector<Matrix<K>> c12(P), c21(P), c22(P), cw(P);
    for (std::int64_t e = 0; e < P; ++e) {
        c12[e] = e < min_precision(r12) ? coefficient_matrix(r12, e) : Matrix<K>(s, t, kzero);
        c21[e] = coefficient_matrix(r21, e);
        c22[e] = e < min_precision(r22) ? coefficient_matrix(r22, e) : Matrix<K>(t, t, kzero);
        cw[e] = e < min_precision(w) ? coefficient_matrix(w, e) : Matrix<K>(s, s, kzero);
    }
    for (std::int64_t m = 1; m < P; ++m) {
        // U_{m-1} = sum_{i+j=m-1} R12_i sigma(Theta_j)
        if (m >= 2) {
            Matrix<K> acc(s, s, kzero);
            for (std::int64_t j = 1; j <= m - 1; ++j) acc = acc + c12[m - 1 - j] * sth[j];
            u[m - 1] = std::move(acc);
        }
        Matrix<K> vm = c21[m];
        for (std::int64_t i = 1; i < m; ++i) vm = vm + c22[i] * sth[m - i];
        for (std::int64_t i = 1; i < m; ++i) vm = vm - th[i] * u[m - i];
        v[m] = std::move(vm);
        Matrix<K> tm(t, s, kzero);
        for (std::int64_t j = 1; j <= m; ++j) tm = tm + v[j] * cw[m - j];
        th[m] = tm;
        sth[m] = sigma_n(tm, q, n);
    }
    SeriesMatrix<K> theta(t, s, zero);
    for (int i = 0; i < t; ++i)
        for (int j = 0; j < s; ++j) {
            std::vector<K> c;
            for (std::int64_t m = 0; m < P; ++m) c.push_back(th[m](i, j));
            theta(i, j) = Series<K>(kzero, 0, std::move(c), P);
        }
    return theta;
}

/// Newton polygon of an isocrystal over a finite field K = GF(q^m) from the
/// characteristic polynomial of tau^m.
template <class K>
NewtonPolygon newton_polygon_local(const LocalIsocrystal<K>& m) {
    if constexpr (!std::is_same_v<K, FqElem>) {
        throw DomainError("newton_polygon_local needs a finite coefficient field");
    } else {
        const int deg = extension_degree(m.phi().zero().zero_coeff().field(), m.q());
        auto cp = charpoly_coefficients(tau_power_matrix(m, deg));
        std::vector<std::optional<std::int64_t>> ys;
        for (const auto& c : cp) ys.push_back(c.is_zero() ? std::nullopt : std::optional<std::int64_t>(c.valuation()));
        if (!ys[0]) throw PrecisionExhausted("determinant vanishes to the known precision");
        auto hull = lower_hull(ys);
        // an invisible coefficient is only known to be >= its precision
        for (std::size_t i = 0; i < cp.size(); ++i) {
            if (ys[i]) continue;
            std::size_t h = 1;
            while (h < hull.size() && hull[h].x < static_cast<std::int64_t>(i)) ++h;
            const auto& a = hull[h - 1];
            const auto& b = hull[h];
            Rational line = Rational(a.y) + Rational(b.y - a.y, b.x - a.x) * Rational(static_cast<std::int64_t>(i) - a.x);
            if (Rational(cp[i].precision()) < line)
                throw PrecisionExhausted("coefficient " + std::to_string(i) + " of the characteristic polynomial is not known precisely enough");
        }
        return polygon_from_orders(ys, Rational(1, deg));
    }
}

/// Smallest root of an irreducible polynomial over F_q in GF(q^deg).
FqElem residue_root(const FqPoly& mx);

/// Specialization of an isocrystal over F_q(xi)((z)) at xi = x.
inline LocalIsocrystal<FqElem> specialize_local(const LocalIsocrystal<XiFunc>& m, const FqElem& x) {
    auto phi = m.phi().map([&](const Series<XiFunc>& s) {
        return s.map([&](const XiFunc& c) { return c.evaluate(x); });
    });
    return LocalIsocrystal<FqElem>(phi, m.ring());
}

/// Points of degree <= 2 over F_q used to estimate generic slopes.
std::vector<FqPoly> sample_points(const FiniteField& fq, int max_degree);

/// Smallest slope: read from the polygon for finite K; for K = F_q(xi) the
/// minimum over specializations with well-defined reduction (same order of
/// the determinant), which is attained generically by semicontinuity.
template <class K>
Rational smallest_slope(const LocalIsocrystal<K>& m) {
    if (m.rank() == 1) return Rational(rank1_slope(m));
    if constexpr (std::is_same_v<K, FqElem>) {
        return newton_polygon_local(m).smallest();
    } else {
        const auto& fq = m.phi().zero().zero_coeff().field();
        auto d = det_division_free(m.phi());
        if (d.is_zero()) throw NonUnit("determinant vanishes to the known precision");
        std::optional<Rational> best;
        for (const auto& mx : sample_points(fq, 2)) {
            auto x = residue_root(mx);
            try {
                auto sp = specialize_local(m, x);
                auto ds = det_division_free(sp.phi());
                if (ds.is_zero() || ds.valuation() != d.valuation()) continue;
                auto a = newton_polygon_local(sp).smallest();
                if (!best || a < *best) best = a;
            } catch (const DomainError&) {
                continue;  // pole of a coefficient at this point
            } catch (const PrecisionExhausted&) {
                continue;
            }
        }
        if (!best) throw NonStabilizing("no specialization with well-defined reduction among the sample points");
        return *best;
    }
}

template <class K>
struct FiltrationStep {
    Slope slope;                 ///< slope and multiplicity of the graded piece
    Rational hasse;              ///< -slope mod 1
    int n = 1;                   ///< tau^n of the graded piece is z^(n slope) times a unit
    SeriesMatrix<K> basis;       ///< columns spanning this filtration step, standard coordinates
    SeriesMatrix<K> graded_phi;  ///< structure matrix of the graded piece in its basis
};

inline Rational hasse_label(const Rational& a) {
    Rational m = -a;
    return m - Rational(m.floor());
}

/// One step of the filtration: the slope-alpha summand and the quotient.
template <class K>
struct SlopeSplit {
    Rational alpha;
    int n = 1;
    int s = 0;
    SeriesMatrix<K> change;  ///< C: first s columns span the sub, the rest a complement
    SeriesMatrix<K> phi_c;   ///< C^-1 Phi sigma(C), block upper triangular
    SeriesMatrix<K> theta;
};

template <class K>
SlopeSplit<K> split_off_smallest(const LocalIsocrystal<K>& m, const Rational& alpha, std::int64_t N) {
    const int r = m.rank();
    const auto zero = m.phi().zero();
    const int n0 = static_cast<int>(alpha.den());
    RhoSpec rho{n0, alpha};
    auto lattice = lattice_saturate(m, rho, SeriesMatrix<K>::identity(r, zero), r * static_cast<int>(std::max<std::int64_t>(N, 1)));
    auto rl = rho_in_basis(m, rho, lattice);
    auto up = mod_z_unit_part(rl, m.q(), n0);
    if (up.s == 0) throw NonStabilizing("slope " + alpha.str() + " is not attained: rho has no unit part");
    RhoSpec rhok{n0 * up.k, alpha};
    auto pm = constant_matrix(up.P);
    auto bp = lattice * pm;
    auto rk = rho_in_basis(m, rhok, bp);
    auto theta = groucho_lift(rk, up.s, m.q(), rhok.n, N);
    const int t = r - up.s;
    SeriesMatrix<K> gamma = SeriesMatrix<K>::identity(r, zero), gamma_inv = SeriesMatrix<K>::identity(r, zero);
    gamma.set_block(up.s, 0, theta);
    gamma_inv.set_block(up.s, 0, -theta);
    auto change = bp * gamma;
    auto phi_c = gamma_inv * inverse(bp) * m.phi() * sigma(change, m.q());
    auto lower_left = phi_c.block(up.s, 0, t, up.s);
    if (!lower_left.is_zero())
        throw NonStabilizing("lifted slope-" + alpha.str() + " summand is not tau-stable to the working precision");
    return {alpha, rhok.n, up.s, change, phi_c, theta};
}

/// Slope filtration 0 = M_0 c M_1 c ... c M with pure graded pieces of
/// increasing slope. Hints (for K = F_q(xi)) replace the sampling estimate
/// of the smallest slope at each step.
template <class K>
std::vector<FiltrationStep<K>> slope_filtration(const LocalIsocrystal<K>& m, std::int64_t N,
                                                const std::optional<std::vector<Rational>>& hints = std::nullopt) {
    std::vector<FiltrationStep<K>> out;
    const int r = m.rank();
    const auto zero = m.phi().zero();
    SeriesMatrix<K> lift = SeriesMatrix<K>::identity(r, zero);  // standard coords of the current quotient basis
    LocalIsocrystal<K> cur = m;
    SeriesMatrix<K> done(r, 0, zero);
    std::vector<Rational> pending;
    if (hints) {
        pending = *hints;
        std::sort(pending.begin(), pending.end());
        pending.erase(std::unique(pending.begin(), pending.end()), pending.end());
    }
    while (cur.rank() > 0) {
        Rational alpha;
        if (hints) {
            if (pending.empty()) throw NonStabilizing("slope hints exhausted before the filtration was complete");
            alpha = pending.front();
            pending.erase(pending.begin());
        } else {
            alpha = smallest_slope(cur);
        }
        if (!out.empty() && !(out.back().slope.slope < alpha))
            throw NonStabilizing("slopes of the filtration are not increasing");
        FiltrationStep<K> step;
        if (cur.rank() == 1) {
            if (!purity_check(cur, alpha, 1, SeriesMatrix<K>::identity(1, zero)))
                throw NonStabilizing("rank one piece is not pure of slope " + alpha.str());
            done = SeriesMatrix<K>::hstack(done, lift);
            out.push_back({{alpha, 1}, hasse_label(alpha), 1, done, cur.phi()});
            break;
        }
        auto sp = split_off_smallest(cur, alpha, N);
        const int s = sp.s, t = cur.rank() - s;
        auto sub_cols = lift * sp.change.block(0, 0, cur.rank(), s);
        done = SeriesMatrix<K>::hstack(done, sub_cols);
        step = {{alpha, s}, hasse_label(alpha), sp.n, done, sp.phi_c.block(0, 0, s, s)};
        out.push_back(std::move(step));
        if (t == 0) break;
        lift = lift * sp.change.block(0, s, cur.rank(), t);
        cur = LocalIsocrystal<K>(sp.phi_c.block(s, s, t, t), cur.ring());
    }
    return out;
}

/// Coefficientwise inverse Frobenius on series over a finite field.
inline Series<FqElem> sigma_inverse(const Series<FqElem>& a, std::uint64_t q, int n) {
    return a.map([q, n](const FqElem& c) {
        FqElem x = c;
        for (int i = 0; i < n; ++i) x = frobenius_inverse(x, q);
        return x;
    });
}

/// Complement to the sub spanned by the first s basis vectors of a module
/// with block upper triangular Phi = [[A, B], [0, D]], both diagonal blocks
/// pure with respect to the standard lattice and of distinct slopes. Returns
/// X such that the columns [X; 1] span a tau-stable complement, i.e.
/// X D_n = A_n sigma^n(X) + B_n for the tau^n blocks. Solving for the
/// increasing-slope order needs sigma^-1, hence a perfect K.
inline SeriesMatrix<FqElem> split_two_step(const LocalIsocrystal<FqElem>& m, int s, std::int64_t N) {
    const int r = m.rank(), t = r - s;
    if (s <= 0 || t <= 0) throw DomainError("split_two_step needs a proper nonzero sub");
    const auto& phi = m.phi();
    if (!phi.block(s, 0, t, s).is_zero()) throw DomainError("structure matrix is not block upper triangular");
    LocalIsocrystal<FqElem> sub(phi.block(0, 0, s, s), m.ring()), quo(phi.block(s, s, t, t), m.ring());
    auto a1 = smallest_slope(sub), a2 = smallest_slope(quo);
    if (a1 == a2) throw DomainError("split_two_step needs distinct slopes");
    const int n = static_cast<int>(std::lcm(a1.den(), a2.den()));
    auto phin = tau_power_matrix(m, n);
    auto an = phin.block(0, 0, s, s), bn = phin.block(0, s, s, t), dn = phin.block(s, s, t, t);
    const auto q = m.q();
    const auto zero = phi.zero();
    SeriesMatrix<FqElem> x(s, t, Series<FqElem>::zero(zero.zero_coeff(), N));
    auto stable = [&](const SeriesMatrix<FqElem>& nx, const SeriesMatrix<FqElem>& ox) { return nx == ox; };
    if (a1 < a2) {
        // X = sigma^-n(A'^-1 (X D' - B')) with A' = z^(-n a1) A_n a unit, D' divisible by z
        const auto e = (a1 * Rational(n)).num();
        auto ap_inv = inverse(twist(an, -e));
        auto dp = twist(dn, -e), bp = twist(bn, -e);
        if (min_valuation(ap_inv) < 0 || min_valuation(dp) < 1) throw DomainError("diagonal blocks are not pure on the standard lattice");
        for (std::int64_t it = 0; it < 2 * N + 4; ++it) {
            auto y = ap_inv * (x * dp - bp);
            auto nx = y.map([&](const Series<FqElem>& c) { return sigma_inverse(c, q, n).truncated(N); });
            bool done = stable(nx, x) && it > 0;
            x = std::move(nx);
            if (done) break;
        }
    } else {
        // X = (A'' sigma^n(X) + B'') D''^-1 with D'' = z^(-n a2) D_n a unit, A'' divisible by z
        const auto e = (a2 * Rational(n)).num();
        auto dp_inv = inverse(twist(dn, -e));
        auto ap = twist(an, -e), bp = twist(bn, -e);
        if (min_valuation(dp_inv) < 0 || min_valuation(ap) < 1) throw DomainError("diagonal blocks are not pure on the standard lattice");
        for (std::int64_t it = 0; it < 2 * N + 4; ++it) {
            auto nx = truncate((ap * sigma_n(x, q, n) + bp) * dp_inv, N);
            bool done = stable(nx, x) && it > 0;
            x = std::move(nx);
            if (done) break;
        }
    }
    return x;
}

}  // namespace isoc

#endif
