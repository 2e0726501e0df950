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

#ifndef ISOCRYSTAL_POLY_HPP
#define ISOCRYSTAL_POLY_HPP

#include <cstdint>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace isoc {

/// Wraps a coefficient string in parentheses when it is a sum, so that it
/// can be juxtaposed with "*var^k" and reparsed.
inline std::string parenthesize(const std::string& s) {
    if (s.empty()) return s;
    bool compound = false;
    for (std::size_t i = 1; i < s.size(); ++i)
        if (s[i] == '+' || s[i] == '-' || s[i] == '/') compound = true;
    return compound ? "(" + s + ")" : s;
}

/// Dense univariate polynomial, low-to-high. Every polynomial carries a zero
/// of its coefficient ring so that coefficients know their field.
template <class K>
class Poly {
   public:
    using coeff_type = K;

    Poly() = default;
    explicit Poly(K zero) : zero_(std::move(zero)) {}
    Poly(std::vector<K> coeffs, K zero) : zero_(std::move(zero)), c_(std::move(coeffs)) { trim(); }

    static Poly constant(const K& c) { return Poly(std::vector<K>{c}, c.zero_like()); }
    static Poly monomial(const K& c, int deg) {
        std::vector<K> v(deg + 1, c.zero_like());
        v[deg] = c;
        return Poly(std::move(v), c.zero_like());
    }
    /// The variable itself.
    static Poly x(const K& zero) { return monomial(zero.one_like(), 1); }

    int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const noexcept { return c_.empty(); }
    bool is_one() const { return c_.size() == 1 && c_[0] == zero_.one_like(); }
    const K& coeff(int i) const { return (i < 0 || i > degree()) ? zero_ : c_[i]; }
    const K& operator[](int i) const { return coeff(i); }
    const K& lead() const { return is_zero() ? zero_ : c_.back(); }
    const std::vector<K>& coeffs() const noexcept { return c_; }
    const K& zero_coeff() const noexcept { return zero_; }
    bool is_monic() const { return !is_zero() && c_.back() == zero_.one_like(); }

    Poly zero_like() const { return Poly(zero_); }
    Poly one_like() const { return constant(zero_.one_like()); }
    Poly int_like(long long n) const { return constant(zero_.int_like(n)); }

    Poly operator-() const {
        Poly r(*this);
        for (auto& a : r.c_) a = -a;
        return r;
    }
    Poly& operator+=(const Poly& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), zero_);
        for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
        trim();
        return *this;
    }
    Poly& operator-=(const Poly& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), zero_);
        for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
        trim();
        return *this;
    }
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(const Poly& a, const Poly& b) {
        if (a.is_zero() || b.is_zero()) return Poly(a.zero_);
        std::vector<K> r(a.c_.size() + b.c_.size() - 1, a.zero_);
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i].is_zero()) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
        }
        return Poly(std::move(r), a.zero_);
    }
    Poly& operator*=(const Poly& o) { return *this = *this * o; }
    Poly scaled(const K& s) const {
        Poly r(*this);
        for (auto& a : r.c_) a *= s;
        r.trim();
        return r;
    }
    Poly shifted(int k) const {
        if (is_zero()) return *this;
        std::vector<K> v(k, zero_);
        v.insert(v.end(), c_.begin(), c_.end());
        return Poly(std::move(v), zero_);
    }

    friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }

    K operator()(const K& x) const {
        K acc = zero_;
        for (int i = degree(); i >= 0; --i) acc = acc * x + c_[i];
        return acc;
    }
    template <class F>
    auto map(F&& f) const {
        using R = decltype(f(zero_));
        std::vector<R> v;
        v.reserve(c_.size());
        for (const auto& a : c_) v.push_back(f(a));
        return Poly<R>(std::move(v), f(zero_));
    }

    Poly derivative() const {
        std::vector<K> v;
        for (int i = 1; i <= degree(); ++i) v.push_back(c_[i] * zero_.int_like(i));
        return Poly(std::move(v), zero_);
    }

    /// Division with remainder; K must be a field.
    friend std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
        if (b.is_zero()) throw DomainError("polynomial division by zero");
        Poly r = a;
        if (a.degree() < b.degree()) return {Poly(a.zero_), r};
        std::vector<K> q(a.degree() - b.degree() + 1, a.zero_);
        K inv = b.lead().inverse();
        const int db = b.degree();
        for (int k = r.degree(); k >= db; --k) {
            if (k > r.degree() || r.c_[k].is_zero()) continue;
            K f = r.c_[k] * inv;
            q[k - db] = f;
            for (int i = 0; i <= db; ++i) r.c_[k - db + i] -= f * b.c_[i];
        }
        r.trim();
        return {Poly(std::move(q), a.zero_), r};
    }
    friend Poly operator/(const Poly& a, const Poly& b) { return divmod(a, b).first; }
    friend Poly operator%(const Poly& a, const Poly& b) { return divmod(a, b).second; }

    Poly monic() const {
        if (is_zero()) return *this;
        return scaled(lead().inverse());
    }

    std::string str(const std::string& var) const {
        if (is_zero()) return "0";
        std::string out;
        for (int i = degree(); i >= 0; --i) {
            if (c_[i].is_zero()) continue;
            std::string cs = to_string(c_[i]);
            std::string mono = i == 0 ? "" : (i == 1 ? var : var + "^" + std::to_string(i));
            std::string term;
            if (mono.empty())
                term = cs;
            else if (cs == "1")
                term = mono;
            else if (cs == "-1")
                term = "-" + mono;
            else
                term = parenthesize(cs) + "*" + mono;
            if (!out.empty() && term[0] != '-') out += "+";
            out += term;
        }
        return out;
    }

   private:
    void trim() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }

    K zero_{};
    std::vector<K> c_;
};

/// Monic gcd over a field.
template <class K>
Poly<K> gcd(Poly<K> a, Poly<K> b) {
    while (!b.is_zero()) {
        auto r = divmod(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

/// Exact division used by fraction-free elimination.
template <class K>
Poly<K> exact_quotient(const Poly<K>& a, const Poly<K>& b) {
    auto [q, r] = divmod(a, b);
    if (!r.is_zero()) throw DomainError("inexact polynomial division");
    return q;
}

template <class K>
Poly<K> exact_div(const Poly<K>& a, const Poly<K>& b) {
    return exact_quotient(a, b);
}

template <class K>
Poly<K> sigma(const Poly<K>& a, std::uint64_t q) {
    return a.map([q](const K& c) { return sigma(c, q); });
}

template <class K>
int pivot_weight(const Poly<K>& a) {
    return a.is_zero() ? std::numeric_limits<int>::max() : a.degree();
}

template <class K>
std::string to_string(const Poly<K>& a) {
    return a.str("t");
}

}  // namespace isoc

#endif
