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

#include "isocrystal/place.hpp"

#include "isocrystal/matrix.hpp"

namespace isoc {
namespace {

FqPoly powmod(FqPoly base, std::uint64_t e, const FqPoly& m) {
    FqPoly r = base.one_like();
    base = base % m;
    while (e > 0) {
        if (e & 1) r = (r * base) % m;
        base = (base * base) % m;
        e >>= 1;
    }
    return r;
}

}  // namespace

bool is_irreducible(const FqPoly& f) {
    if (f.is_zero()) throw DomainError("irreducibility of the zero polynomial");
    const int n = f.degree();
    if (n <= 0) return false;
    if (n == 1) return true;
    const FqElem zero = f.zero_coeff();
    const std::uint64_t Q = zero.field().size();
    const FqPoly x = FqPoly::x(zero);
    FqPoly xp = x;
    for (int i = 1; 2 * i <= n; ++i) {
        xp = powmod(xp, Q, f);
        if (gcd(f, xp - x).degree() > 0) return false;
    }
    return true;
}

std::vector<FqPoly> monic_irreducibles(const FiniteField& f, int degree) {
    std::vector<FqPoly> out;
    if (degree < 1) return out;
    const FqElem zero(f, 0);
    std::uint64_t count = 1;
    for (int i = 0; i < degree; ++i) count *= f.size();
    for (std::uint64_t code = 0; code < count; ++code) {
        std::vector<FqElem> c(degree + 1, zero);
        c[degree] = zero.one_like();
        std::uint64_t r = code;
        for (int i = 0; i < degree; ++i) {
            c[i] = FqElem(f, static_cast<std::uint32_t>(r % f.size()));
            r /= f.size();
        }
        FqPoly p(std::move(c), zero);
        if (is_irreducible(p)) out.push_back(std::move(p));
    }
    return out;
}

Place Place::finite(const FqPoly& p) {
    if (p.is_zero() || !p.is_monic()) throw DomainError("place polynomial " + p.str("t") + " is not monic");
    if (!is_irreducible(p)) throw DomainError("place polynomial " + p.str("t") + " is not irreducible");
    Place pl;
    pl.infinite_ = false;
    pl.poly_ = p;
    return pl;
}

const FqPoly& Place::poly() const {
    if (infinite_) throw DomainError("the infinite place has no polynomial");
    return poly_;
}

FqElem Place::root() const {
    if (infinite_ || poly_.degree() != 1) throw NotImplementedPlace("place " + str() + " has no rational root");
    return -poly_[0];
}

bool lex_less(const FqPoly& a, const FqPoly& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    for (int i = a.degree(); i >= 0; --i)
        if (a[i].value() != b[i].value()) return a[i].value() < b[i].value();
    return false;
}

bool operator<(const Place& a, const Place& b) {
    if (a.infinite_ || b.infinite_) return a.infinite_ && !b.infinite_;
    return lex_less(a.poly_, b.poly_);
}

std::vector<std::vector<int>> lexicographic_subsets(int n, int k) {
    std::vector<std::vector<int>> out;
    if (k < 0 || k > n) return out;
    std::vector<int> s(k);
    for (int i = 0; i < k; ++i) s[i] = i;
    for (;;) {
        out.push_back(s);
        int i = k - 1;
        while (i >= 0 && s[i] == n - k + i) --i;
        if (i < 0) break;
        ++s[i];
        for (int j = i + 1; j < k; ++j) s[j] = s[j - 1] + 1;
    }
    return out;
}

}  // namespace isoc
