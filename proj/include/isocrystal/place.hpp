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

#ifndef ISOCRYSTAL_PLACE_HPP
#define ISOCRYSTAL_PLACE_HPP

#include <string>
#include <vector>

#include "finite_field.hpp"
#include "laurent.hpp"
#include "poly.hpp"
#include "ratfunc.hpp"

namespace isoc {

using FqPoly = Poly<FqElem>;

/// Irreducibility over the coefficient field via gcd(f, x^(Q^i) - x),
/// i <= deg f / 2, where Q is the size of the coefficient field.
bool is_irreducible(const FqPoly& f);

/// Monic irreducible polynomials of the given degree over `f`, in
/// lexicographic order of (c_{d-1}, ..., c_0) with coefficients compared
/// by their encoding.
std::vector<FqPoly> monic_irreducibles(const FiniteField& f, int degree);

/// A place of F_q(t): a monic irreducible polynomial over F_q, or infinity.
class Place {
   public:
    static Place infinity() { return Place(); }
    /// Validates monicity and irreducibility.
    static Place finite(const FqPoly& p);

    bool is_infinite() const noexcept { return infinite_; }
    const FqPoly& poly() const;
    /// Residue degree d_p.
    int degree() const noexcept { return infinite_ ? 1 : poly_.degree(); }
    /// For a degree-one place (t - a), the root a.
    FqElem root() const;

    /// "inf" or the polynomial in t.
    std::string str() const { return infinite_ ? "inf" : poly_.str("t"); }

    /// Infinity first, then by degree, then lexicographically.
    friend bool operator<(const Place& a, const Place& b);
    friend bool operator==(const Place& a, const Place& b) {
        return a.infinite_ == b.infinite_ && (a.infinite_ || a.poly_ == b.poly_);
    }

   private:
    Place() = default;
    bool infinite_ = true;
    FqPoly poly_;
};

/// Lexicographic comparison of monic polynomials of equal degree.
bool lex_less(const FqPoly& a, const FqPoly& b);

template <class K>
Poly<K> lift_poly(const FqPoly& p, const K& proto) {
    return p.map([&](const FqElem& c) { return lift_scalar(proto, c); });
}

/// ord_p of a nonzero polynomial.
template <class K>
int ord_at_place(const Poly<K>& f, const Place& p) {
    if (f.is_zero()) throw DomainError("valuation of zero is infinite");
    if (p.is_infinite()) return -f.degree();
    auto pk = lift_poly(p.poly(), f.zero_coeff());
    int k = 0;
    Poly<K> g = f;
    for (;;) {
        auto [q, r] = divmod(g, pk);
        if (!r.is_zero()) return k;
        g = std::move(q);
        ++k;
    }
}

template <class K>
int ord_at_place(const RatFunc<K>& f, const Place& p) {
    if (f.is_zero()) throw DomainError("valuation of zero is infinite");
    return ord_at_place(f.num(), p) - ord_at_place(f.den(), p);
}

/// Exact expansion of a polynomial at a degree-one place or infinity, in
/// z = t - a or z = 1/t.
template <class K>
LaurentSeries<K> expand_poly_at_place(const Poly<K>& f, const Place& p) {
    const K zero = f.zero_coeff();
    if (p.is_infinite()) {
        if (f.is_zero()) return LaurentSeries<K>::zero(zero);
        std::vector<K> c(f.coeffs().rbegin(), f.coeffs().rend());
        return LaurentSeries<K>(zero, -f.degree(), std::move(c));
    }
    if (p.degree() != 1)
        throw NotImplementedPlace("expansion at the degree " + std::to_string(p.degree()) + " place " + p.str() + " is not supported");
    // Taylor shift t = z + a by Horner
    K a = lift_scalar(zero, p.root());
    Poly<K> shift({a, zero.one_like()}, zero);
    Poly<K> acc(zero);
    for (int i = f.degree(); i >= 0; --i) acc = acc * shift + Poly<K>::constant(f[i]);
    return LaurentSeries<K>::from_poly(acc);
}

/// Expansion of f at p modulo z^N.
template <class K>
LaurentSeries<K> expand_at_place(const RatFunc<K>& f, const Place& p, std::int64_t N) {
    if (f.is_zero()) throw DomainError("expansion of the zero function");
    auto n = expand_poly_at_place(f.num(), p);
    auto d = expand_poly_at_place(f.den(), p);
    if (f.is_polynomial()) return n.truncated(N);
    std::int64_t rel = N + d.valuation() - n.valuation();
    if (rel <= 0) return LaurentSeries<K>::zero(f.zero_coeff(), N);
    return (n * d.inverse(rel)).truncated(N);
}

template <class K>
LaurentSeries<K> expand_at_place(const Poly<K>& f, const Place& p, std::int64_t N) {
    if (f.is_zero()) throw DomainError("expansion of the zero function");
    return expand_poly_at_place(f, p).truncated(N);
}

}  // namespace isoc

#endif
