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

#ifndef ISOCRYSTAL_RATFUNC_HPP
#define ISOCRYSTAL_RATFUNC_HPP

#include "poly.hpp"

namespace isoc {

/// Quotient of polynomials over a field: monic denominator, reduced.
template <class K>
class RatFunc {
   public:
    RatFunc() = default;
    explicit RatFunc(Poly<K> num) : num_(std::move(num)), den_(num_.one_like()) {}
    RatFunc(Poly<K> num, Poly<K> den) : num_(std::move(num)), den_(std::move(den)) { normalize(); }
    static RatFunc constant(const K& c) { return RatFunc(Poly<K>::constant(c)); }

    const Poly<K>& num() const noexcept { return num_; }
    const Poly<K>& den() const noexcept { return den_; }
    bool is_zero() const noexcept { return num_.is_zero(); }
    bool is_polynomial() const { return den_.degree() == 0; }
    const K& zero_coeff() const noexcept { return num_.zero_coeff(); }

    RatFunc zero_like() const { return RatFunc(num_.zero_like()); }
    RatFunc one_like() const { return RatFunc(num_.one_like()); }
    RatFunc int_like(long long n) const { return RatFunc(num_.int_like(n)); }

    RatFunc inverse() const {
        if (is_zero()) throw DomainError("inverse of the zero rational function");
        return RatFunc(den_, num_);
    }
    RatFunc operator-() const { return RatFunc(-num_, den_, raw{}); }
    friend RatFunc operator+(const RatFunc& a, const RatFunc& b) {
        if (a.den_ == b.den_) return RatFunc(a.num_ + b.num_, a.den_);
        return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend RatFunc operator-(const RatFunc& a, const RatFunc& b) { return a + (-b); }
    friend RatFunc operator*(const RatFunc& a, const RatFunc& b) {
        if (a.is_polynomial() && b.is_polynomial()) return RatFunc(a.num_ * b.num_);
        return RatFunc(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend RatFunc operator/(const RatFunc& a, const RatFunc& b) { return a * b.inverse(); }
    RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
    RatFunc& operator-=(const RatFunc& o) { return *this = *this - o; }
    RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }
    RatFunc& operator/=(const RatFunc& o) { return *this = *this / o; }
    friend bool operator==(const RatFunc& a, const RatFunc& b) { return a.num_ == b.num_ && a.den_ == b.den_; }

    template <class F>
    auto map(F&& f) const {
        auto n = num_.map(f);
        auto d = den_.map(f);
        return RatFunc<typename decltype(n)::coeff_type>(std::move(n), std::move(d));
    }

    std::string str(const std::string& var) const {
        if (is_polynomial()) return num_.str(var);
        return parenthesize(num_.str(var)) + "/(" + den_.str(var) + ")";
    }

   private:
    struct raw {};
    RatFunc(Poly<K> n, Poly<K> d, raw) : num_(std::move(n)), den_(std::move(d)) {}
    void normalize() {
        if (den_.is_zero()) throw DomainError("rational function with zero denominator");
        if (num_.is_zero()) {
            den_ = num_.one_like();
            return;
        }
        if (den_.degree() > 0) {
            auto g = gcd(num_, den_);
            if (g.degree() > 0) {
                num_ = num_ / g;
                den_ = den_ / g;
            }
        }
        if (!den_.is_monic()) {
            K inv = den_.lead().inverse();
            num_ = num_.scaled(inv);
            den_ = den_.scaled(inv);
        }
    }

    Poly<K> num_;
    Poly<K> den_;
};

template <class K>
RatFunc<K> sigma(const RatFunc<K>& a, std::uint64_t q) {
    return RatFunc<K>(sigma(a.num(), q), sigma(a.den(), q));
}

template <class K>
int pivot_weight(const RatFunc<K>& a) {
    return a.is_zero() ? std::numeric_limits<int>::max() : 0;
}

template <class K>
std::string to_string(const RatFunc<K>& a) {
    return a.str("t");
}

}  // namespace isoc

#endif
