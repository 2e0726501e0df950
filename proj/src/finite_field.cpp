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

#include "isocrystal/finite_field.hpp"

#include <algorithm>

namespace isoc {
namespace {

using Digits = std::vector<int>;

// a * b mod m over F_p, all as low-to-high digit vectors; m monic of degree e.
Digits mulmod(const Digits& a, const Digits& b, const Digits& m, int p) {
    const int e = static_cast<int>(m.size()) - 1;
    std::vector<long> prod(2 * e, 0);
    for (int i = 0; i < e; ++i)
        for (int j = 0; j < e; ++j) prod[i + j] += static_cast<long>(a[i]) * b[j];
    for (auto& c : prod) c %= p;
    for (int k = 2 * e - 2; k >= e; --k) {
        long c = prod[k];
        if (c == 0) continue;
        for (int i = 0; i <= e; ++i) prod[k - e + i] = ((prod[k - e + i] - c * m[i]) % p + p) % p;
    }
    Digits out(e);
    for (int i = 0; i < e; ++i) out[i] = static_cast<int>(prod[i]);
    return out;
}

// Remainder of monic-divisor division; used only for the irreducibility sieve.
bool divides(const Digits& d, Digits f, int p) {
    const int dd = static_cast<int>(d.size()) - 1;
    for (int k = static_cast<int>(f.size()) - 1; k >= dd; --k) {
        int c = f[k];
        if (c == 0) continue;
        for (int i = 0; i <= dd; ++i) f[k - dd + i] = ((f[k - dd + i] - c * d[i]) % p + p) % p;
    }
    return std::all_of(f.begin(), f.begin() + dd, [](int c) { return c == 0; });
}

Digits monic_from_code(std::uint32_t code, int deg, int p) {
    Digits f(deg + 1, 0);
    for (int i = 0; i < deg; ++i) {
        f[i] = static_cast<int>(code % p);
        code /= p;
    }
    f[deg] = 1;
    return f;
}

std::uint32_t ipow(std::uint32_t b, int e) {
    std::uint32_t r = 1;
    while (e-- > 0) r *= b;
    return r;
}

bool small_irreducible(const Digits& f, int p) {
    const int n = static_cast<int>(f.size()) - 1;
    for (int d = 1; 2 * d <= n; ++d)
        for (std::uint32_t code = 0; code < ipow(p, d); ++code)
            if (divides(monic_from_code(code, d, p), f, p)) return false;
    return true;
}

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

}  // namespace

const FiniteField& FiniteField::get(int p, int degree) {
    static std::mutex registry_mutex;
    static std::map<std::pair<int, int>, std::unique_ptr<FiniteField>> registry;
    if (p < 2 || !is_prime(static_cast<std::uint64_t>(p)))
        throw DomainError("characteristic " + std::to_string(p) + " is not prime");
    if (degree < 1) throw DomainError("extension degree must be positive");
    double sz = 1;
    for (int i = 0; i < degree; ++i) sz *= p;
    if (sz > kMaxSize) throw DomainError("field GF(" + std::to_string(p) + "^" + std::to_string(degree) + ") is too large");
    std::lock_guard lock(registry_mutex);
    auto& slot = registry[{p, degree}];
    if (!slot) slot.reset(new FiniteField(p, degree));
    return *slot;
}

const FiniteField& FiniteField::of_order(std::uint64_t q) {
    if (q < 2) throw DomainError("field order must be at least 2");
    std::uint64_t p = 2;
    while (q % p != 0) ++p;
    int e = 0;
    std::uint64_t r = q;
    while (r % p == 0) {
        r /= p;
        ++e;
    }
    if (r != 1) throw DomainError(std::to_string(q) + " is not a prime power");
    return get(static_cast<int>(p), e);
}

FiniteField::FiniteField(int p, int e) : p_(p), e_(e), size_(ipow(static_cast<std::uint32_t>(p), e)) {
    for (std::uint32_t code = 0;; ++code) {
        auto f = monic_from_code(code, e, p);
        if (e == 1 || (f[0] != 0 && small_irreducible(f, p))) {
            modulus_ = f;
            break;
        }
    }
    exp_.assign(size_, 0);
    log_.assign(size_, 0);
    neg_.assign(size_, 0);
    for (std::uint32_t a = 0; a < size_; ++a) {
        auto d = digits(a);
        for (auto& c : d) c = (p - c) % p;
        neg_[a] = from_digits(d);
    }
    // smallest primitive element
    for (std::uint32_t g = 1; g < size_; ++g) {
        auto gd = digits(g);
        Digits x(e, 0);
        x[0] = 1;
        std::uint32_t order = 0;
        std::vector<std::uint32_t> powers;
        do {
            powers.push_back(from_digits(x));
            x = mulmod(x, gd, modulus_, p);
            ++order;
        } while (from_digits(x) != 1);
        if (order == size_ - 1) {
            for (std::uint32_t i = 0; i < order; ++i) {
                exp_[i] = powers[i];
                log_[powers[i]] = i;
            }
            break;
        }
    }
}

std::vector<int> FiniteField::digits(std::uint32_t a) const {
    std::vector<int> d(e_);
    for (int i = 0; i < e_; ++i) {
        d[i] = static_cast<int>(a % p_);
        a /= p_;
    }
    return d;
}

std::uint32_t FiniteField::from_digits(const std::vector<int>& d) const {
    std::uint32_t a = 0;
    for (int i = static_cast<int>(d.size()) - 1; i >= 0; --i) a = a * p_ + static_cast<std::uint32_t>(((d[i] % p_) + p_) % p_);
    return a;
}

std::uint32_t FiniteField::add(std::uint32_t a, std::uint32_t b) const {
    if (p_ == 2) return a ^ b;
    std::uint32_t r = 0, scale = 1;
    while (a != 0 || b != 0) {
        std::uint32_t s = a % p_ + b % p_;
        if (s >= static_cast<std::uint32_t>(p_)) s -= p_;
        r += s * scale;
        scale *= p_;
        a /= p_;
        b /= p_;
    }
    return r;
}

std::uint32_t FiniteField::neg(std::uint32_t a) const { return neg_[a]; }

std::uint32_t FiniteField::inv(std::uint32_t a) const {
    if (a == 0) throw DomainError("inverse of zero in " + describe());
    return log_[a] == 0 ? 1 : exp_[size_ - 1 - log_[a]];
}

std::uint32_t FiniteField::pow(std::uint32_t a, std::uint64_t e) const {
    if (e == 0) return 1;
    if (a == 0) return 0;
    std::uint64_t k = (static_cast<std::uint64_t>(log_[a]) * (e % (size_ - 1))) % (size_ - 1);
    return exp_[k];
}

std::uint32_t FiniteField::from_int(long long n) const {
    long long r = n % p_;
    if (r < 0) r += p_;
    return static_cast<std::uint32_t>(r);
}

const FiniteField::SubfieldTables& FiniteField::tables_for(const FiniteField& sub) const {
    if (!contains_subfield(sub)) throw DomainError(sub.describe() + " is not a subfield of " + describe());
    std::lock_guard lock(mutex_);
    auto& slot = subfields_[&sub];
    if (slot) return *slot;
    auto t = std::make_unique<SubfieldTables>();
    // image of sub's generator: smallest root of its modulus
    std::uint32_t root = 0;
    if (sub.e_ > 1) {
        for (std::uint32_t x = 0; x < size_; ++x) {
            std::uint32_t acc = 0;
            for (int i = sub.e_; i >= 0; --i) acc = add(mul(acc, x), from_int(sub.modulus_[i]));
            if (acc == 0) {
                root = x;
                break;
            }
        }
    }
    t->image.resize(sub.size_);
    for (std::uint32_t a = 0; a < sub.size_; ++a) {
        auto d = sub.digits(a);
        std::uint32_t acc = 0;
        for (int i = sub.e_ - 1; i >= 0; --i) acc = add(mul(acc, root), from_int(d[i]));
        if (sub.e_ == 1) acc = a;
        t->image[a] = acc;
        t->preimage[acc] = a;
    }
    slot = std::move(t);
    return *slot;
}

std::uint32_t FiniteField::embed(std::uint32_t a, const FiniteField& sub) const {
    if (&sub == this) return a;
    return tables_for(sub).image.at(a);
}

std::uint32_t FiniteField::restrict_to(std::uint32_t a, const FiniteField& sub) const {
    if (&sub == this) return a;
    const auto& t = tables_for(sub);
    auto it = t.preimage.find(a);
    if (it == t.preimage.end()) throw DomainError("element does not lie in " + sub.describe());
    return it->second;
}

std::vector<std::uint32_t> FiniteField::coordinates(std::uint32_t a, const FiniteField& sub) const {
    if (&sub == this) return {a};
    const auto& t = tables_for(sub);
    {
        std::lock_guard lock(mutex_);
        auto& tt = const_cast<SubfieldTables&>(t);
        if (tt.coords.empty()) {
            const int k = e_ / sub.e_;
            tt.coords.assign(size_, {});
            std::vector<std::uint32_t> tuple(k, 0);
            std::vector<std::uint32_t> basis(k);
            for (int i = 0; i < k; ++i) basis[i] = pow(generator(), static_cast<std::uint64_t>(i));
            if (e_ == 1) basis[0] = 1;
            for (std::uint32_t n = 0; n < size_; ++n) {
                std::uint32_t r = n, acc = 0;
                for (int i = 0; i < k; ++i) {
                    tuple[i] = r % sub.size_;
                    r /= sub.size_;
                    acc = add(acc, mul(t.image[tuple[i]], basis[i]));
                }
                tt.coords[acc] = tuple;
            }
            for (const auto& c : tt.coords)
                if (c.empty()) throw DomainError("powers of the generator do not span " + describe() + " over " + sub.describe());
        }
    }
    return t.coords[a];
}

std::string FiniteField::describe() const {
    return e_ == 1 ? "GF(" + std::to_string(p_) + ")" : "GF(" + std::to_string(p_) + "^" + std::to_string(e_) + ")";
}

std::string FqElem::str(const std::string& var) const {
    const auto& f = field();
    if (f.degree() == 1) return std::to_string(v_);
    if (v_ == 0) return "0";
    auto d = f.digits(v_);
    std::string out;
    for (int i = f.degree() - 1; i >= 0; --i) {
        if (d[i] == 0) continue;
        if (!out.empty()) out += "+";
        if (i == 0) {
            out += std::to_string(d[i]);
            continue;
        }
        if (d[i] != 1) out += std::to_string(d[i]) + "*";
        out += var;
        if (i > 1) out += "^" + std::to_string(i);
    }
    return out;
}

FqElem frobenius_inverse(const FqElem& a, std::uint64_t q) {
    const auto& f = a.field();
    const auto p = static_cast<std::uint64_t>(f.characteristic());
    int j = 0;
    std::uint64_t r = q;
    while (r % p == 0) {
        r /= p;
        ++j;
    }
    if (r != 1 || j == 0) throw DomainError("Frobenius exponent " + std::to_string(q) + " is not a power of the characteristic");
    const int e = f.degree();
    int k = (e - j % e) % e;
    std::uint64_t exponent = 1;
    for (int i = 0; i < k; ++i) exponent *= p;
    return a.pow(exponent);
}

std::vector<FqElem> all_elements(const FiniteField& f) {
    std::vector<FqElem> out;
    out.reserve(f.size());
    for (std::uint32_t a = 0; a < f.size(); ++a) out.emplace_back(f, a);
    return out;
}

}  // namespace isoc
