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

#ifndef ISOCRYSTAL_RATIONAL_HPP
#define ISOCRYSTAL_RATIONAL_HPP

#include <compare>
#include <cstdint>
#include <numeric>
#include <ostream>
#include <string>

#include "errors.hpp"

namespace isoc {

/// Exact rational with a positive denominator, always in lowest terms.
/// Slopes and polygon ordinates live here; there is no floating point in
/// the library.
class Rational {
   public:
    constexpr Rational() = default;
    constexpr Rational(std::int64_t n) : num_(n) {}
    Rational(std::int64_t n, std::int64_t d) : num_(n), den_(d) {
        if (d == 0) throw DomainError("rational with zero denominator");
        normalize();
    }

    std::int64_t num() const noexcept { return num_; }
    std::int64_t den() const noexcept { return den_; }
    bool is_integer() const noexcept { return den_ == 1; }

    std::int64_t floor() const noexcept {
        return num_ >= 0 ? num_ / den_ : -((-num_ + den_ - 1) / den_);
    }

    Rational operator-() const { return Rational(-num_, den_); }
    friend Rational operator+(const Rational& a, const Rational& b) {
        return Rational(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }
    friend Rational operator*(const Rational& a, const Rational& b) {
        return Rational(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.num_ == 0) throw DomainError("rational division by zero");
        return Rational(a.num_ * b.den_, a.den_ * b.num_);
    }
    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }

    friend bool operator==(const Rational& a, const Rational& b) = default;
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        return a.num_ * b.den_ <=> b.num_ * a.den_;
    }

    /// "n" for integers, "n/d" otherwise.
    std::string str() const {
        return den_ == 1 ? std::to_string(num_) : std::to_string(num_) + "/" + std::to_string(den_);
    }
    static Rational parse(const std::string& s);

   private:
    void normalize() {
        if (den_ < 0) {
            num_ = -num_;
            den_ = -den_;
        }
        auto g = std::gcd(num_ < 0 ? -num_ : num_, den_);
        if (g > 1) {
            num_ /= g;
            den_ /= g;
        }
    }

    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

inline Rational Rational::parse(const std::string& s) {
    try {
        auto slash = s.find('/');
        if (slash == std::string::npos) return Rational(std::stoll(s));
        return Rational(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
    } catch (const std::logic_error&) {
        throw ParseError("malformed rational '" + s + "'");
    }
}

/// The rational with the smallest denominator strictly between lo and hi
/// (Stern-Brocot descent). Requires lo < hi.
inline Rational simplest_between(const Rational& lo, const Rational& hi) {
    std::int64_t fl = lo.floor();
    if (Rational(fl + 1) < hi) return Rational(fl + 1);
    // lo and hi share the integer part; recurse on reciprocals of the fractional parts
    Rational a = lo - Rational(fl);
    Rational b = hi - Rational(fl);
    if (a == Rational(0)) {
        // interval (0, b): 1/k with k the smallest integer such that 1/k < b
        std::int64_t k = (Rational(1) / b).floor() + 1;
        return Rational(fl) + Rational(1, k);
    }
    Rational inner = simplest_between(Rational(1) / b, Rational(1) / a);
    return Rational(fl) + Rational(1) / inner;
}

inline std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

}  // namespace isoc

#endif
