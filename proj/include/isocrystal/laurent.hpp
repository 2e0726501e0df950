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

#ifndef ISOCRYSTAL_LAURENT_HPP
#define ISOCRYSTAL_LAURENT_HPP

#include <algorithm>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "errors.hpp"
#include "poly.hpp"

namespace isoc {

/// Truncated Laurent series sum c_i z^i known modulo z^precision.
///
/// Series whose precision is kExact are known exactly (finite support);
/// constants and polynomial inputs use this. Every operation returns the
/// tightest precision it can prove: for products min(a.prec + b.val,
/// b.prec + a.val), for inverses prec - 2 val.
template <class K>
class LaurentSeries {
   public:
    using coeff_type = K;
    static constexpr std::int64_t kExact = std::int64_t{1} << 40;

    LaurentSeries() = default;
    LaurentSeries(K zero, std::int64_t start, std::vector<K> coeffs, std::int64_t prec = kExact)
        : zero_(std::move(zero)), val_(start), prec_(std::min(prec, kExact)), c_(std::move(coeffs)) {
        normalize();
    }
    static LaurentSeries constant(const K& c, std::int64_t prec = kExact) {
        return LaurentSeries(c.zero_like(), 0, {c}, prec);
    }
    static LaurentSeries monomial(const K& c, std::int64_t e, std::int64_t prec = kExact) {
        return LaurentSeries(c.zero_like(), e, {c}, prec);
    }
    static LaurentSeries zero(const K& zero, std::int64_t prec = kExact) { return LaurentSeries(zero, prec, {}, prec); }
    static LaurentSeries from_poly(const Poly<K>& p, std::int64_t prec = kExact) {
        return LaurentSeries(p.zero_coeff(), 0, p.coeffs(), prec);
    }

    bool is_exact() const noexcept { return prec_ >= kExact; }
    bool is_zero() const noexcept { return c_.empty(); }
    /// Exact order when nonzero; the precision (a lower bound) when no
    /// coefficient is visible.
    std::int64_t valuation() const noexcept { return c_.empty() ? prec_ : val_; }
    std::int64_t precision() const noexcept { return prec_; }
    /// Precision relative to the valuation.
    std::int64_t relative_precision() const noexcept { return prec_ - valuation(); }
    const K& zero_coeff() const noexcept { return zero_; }

    K coeff(std::int64_t e) const {
        if (e >= prec_) throw PrecisionExhausted("coefficient of z^" + std::to_string(e) + " is below the known precision " + std::to_string(prec_));
        if (c_.empty() || e < val_ || e >= val_ + static_cast<std::int64_t>(c_.size())) return zero_;
        return c_[static_cast<std::size_t>(e - val_)];
    }
    K lowest() const { return c_.empty() ? zero_ : c_.front(); }
    /// Coefficients at exponents from, ..., to-1.
    std::vector<K> coefficients(std::int64_t from, std::int64_t to) const {
        std::vector<K> v;
        for (std::int64_t e = from; e < to; ++e) v.push_back(coeff(e));
        return v;
    }
    /// The stored nonzero-led window; element i sits at z^(valuation()+i).
    const std::vector<K>& raw() const noexcept { return c_; }

    LaurentSeries zero_like() const { return zero(zero_); }
    LaurentSeries one_like() const { return constant(zero_.one_like()); }
    LaurentSeries int_like(long long n) const { return constant(zero_.int_like(n)); }

    LaurentSeries truncated(std::int64_t prec) const {
        LaurentSeries r(*this);
        r.prec_ = std::min(prec_, prec);
        r.normalize();
        return r;
    }
    /// Multiplication by z^k.
    LaurentSeries shifted(std::int64_t k) const {
        LaurentSeries r(*this);
        r.val_ += k;
        if (!is_exact()) r.prec_ += k;
        if (r.c_.empty()) r.val_ = r.prec_;
        return r;
    }

    LaurentSeries operator-() const {
        LaurentSeries r(*this);
        for (auto& a : r.c_) a = -a;
        return r;
    }
    friend LaurentSeries operator+(const LaurentSeries& a, const LaurentSeries& b) { return combine(a, b, false); }
    friend LaurentSeries operator-(const LaurentSeries& a, const LaurentSeries& b) { return combine(a, b, true); }
    friend LaurentSeries operator*(const LaurentSeries& a, const LaurentSeries& b) {
        const std::int64_t prec = product_precision(a, b);
        if (a.c_.empty() || b.c_.empty()) return zero(a.zero_, prec);
        const std::int64_t start = a.val_ + b.val_;
        std::int64_t len = static_cast<std::int64_t>(a.c_.size() + b.c_.size()) - 1;
        if (prec < kExact) len = std::min(len, prec - start);
        if (len <= 0) return zero(a.zero_, prec);
        std::vector<K> r(static_cast<std::size_t>(len), a.zero_);
        for (std::size_t i = 0; i < a.c_.size() && static_cast<std::int64_t>(i) < len; ++i) {
            if (a.c_[i].is_zero()) continue;
            const std::size_t jmax = std::min(b.c_.size(), static_cast<std::size_t>(len) - i);
            for (std::size_t j = 0; j < jmax; ++j) r[i + j] += a.c_[i] * b.c_[j];
        }
        return LaurentSeries(a.zero_, start, std::move(r), prec);
    }
    LaurentSeries& operator+=(const LaurentSeries& o) { return *this = *this + o; }
    LaurentSeries& operator-=(const LaurentSeries& o) { return *this = *this - o; }
    LaurentSeries& operator*=(const LaurentSeries& o) { return *this = *this * o; }

    /// Inverse; the series must have a visible nonzero lowest coefficient.
    /// Exact inputs other than monomials get relative precision `fallback`.
    LaurentSeries inverse(std::int64_t fallback = 0) const {
        if (c_.empty()) throw NonUnit("series has no visible nonzero coefficient below z^" + std::to_string(prec_));
        K inv0 = c_.front().inverse();
        if (c_.size() == 1 && is_exact()) return monomial(inv0, -val_);
        std::int64_t rel = is_exact() ? fallback : prec_ - val_;
        if (rel <= 0) throw PrecisionExhausted("no precision left to invert an exact non-monomial series");
        std::vector<K> r(static_cast<std::size_t>(rel), zero_);
        r[0] = inv0;
        for (std::int64_t k = 1; k < rel; ++k) {
            K acc = zero_;
            const std::int64_t imax = std::min<std::int64_t>(k, static_cast<std::int64_t>(c_.size()) - 1);
            for (std::int64_t i = 1; i <= imax; ++i) acc += c_[i] * r[k - i];
            r[k] = -(acc * inv0);
        }
        return LaurentSeries(zero_, -val_, std::move(r), rel - val_);
    }
    friend LaurentSeries operator/(const LaurentSeries& a, const LaurentSeries& b) { return a * b.inverse(); }

    /// Agreement modulo the smaller precision.
    friend bool operator==(const LaurentSeries& a, const LaurentSeries& b) {
        const std::int64_t p = std::min(a.prec_, b.prec_);
        std::int64_t lo = std::min(a.valuation(), b.valuation());
        if (lo >= p) return true;
        std::int64_t hi = p;
        if (p >= kExact) {
            hi = std::max(a.val_ + static_cast<std::int64_t>(a.c_.size()), b.val_ + static_cast<std::int64_t>(b.c_.size()));
        }
        for (std::int64_t e = lo; e < hi; ++e)
            if (!(a.coeff(e) == b.coeff(e))) return false;
        return true;
    }

    template <class F>
    auto map(F&& f) const {
        using R = decltype(f(zero_));
        std::vector<R> v;
        v.reserve(c_.size());
        for (const auto& a : c_) v.push_back(f(a));
        return LaurentSeries<R>(f(zero_), val_, std::move(v), prec_);
    }

    std::string str(const std::string& var = "z") const {
        std::string out;
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (c_[i].is_zero()) continue;
            std::int64_t e = val_ + static_cast<std::int64_t>(i);
            std::string cs = to_string(c_[i]);
            std::string mono = e == 0 ? "" : (e == 1 ? var : var + "^" + std::to_string(e));
            if (e < 0) mono = var + "^(" + std::to_string(e) + ")";
            std::string term = mono.empty() ? cs : (cs == "1" ? mono : parenthesize(cs) + "*" + mono);
            if (!out.empty()) out += "+";
            out += term;
        }
        if (!is_exact()) out += (out.empty() ? "" : "+") + std::string("O(") + var + "^" + std::to_string(prec_) + ")";
        return out.empty() ? "0" : out;
    }

   private:
    static std::int64_t product_precision(const LaurentSeries& a, const LaurentSeries& b) {
        if (a.is_exact() && b.is_exact()) return kExact;
        if (a.is_exact()) return b.prec_ + a.valuation();
        if (b.is_exact()) return a.prec_ + b.valuation();
        return std::min(a.prec_ + b.valuation(), b.prec_ + a.valuation());
    }
    static LaurentSeries combine(const LaurentSeries& a, const LaurentSeries& b, bool subtract) {
        const std::int64_t prec = std::min(a.prec_, b.prec_);
        if (a.c_.empty() && b.c_.empty()) return zero(a.zero_, prec);
        std::int64_t lo = std::min(a.valuation(), b.valuation());
        std::int64_t hi = std::max(a.val_ + static_cast<std::int64_t>(a.c_.size()), b.val_ + static_cast<std::int64_t>(b.c_.size()));
        if (a.c_.empty()) hi = b.val_ + static_cast<std::int64_t>(b.c_.size());
        if (b.c_.empty()) hi = a.val_ + static_cast<std::int64_t>(a.c_.size());
        hi = std::min(hi, prec);
        if (hi <= lo) return zero(a.zero_, prec);
        std::vector<K> r(static_cast<std::size_t>(hi - lo), a.zero_);
        auto add = [&](const LaurentSeries& s, bool neg) {
            for (std::size_t i = 0; i < s.c_.size(); ++i) {
                std::int64_t e = s.val_ + static_cast<std::int64_t>(i);
                if (e >= hi) break;
                if (neg)
                    r[e - lo] -= s.c_[i];
                else
                    r[e - lo] += s.c_[i];
            }
        };
        add(a, false);
        add(b, subtract);
        return LaurentSeries(a.zero_, lo, std::move(r), prec);
    }
    void normalize() {
        if (prec_ < kExact && val_ + static_cast<std::int64_t>(c_.size()) > prec_)
            c_.resize(static_cast<std::size_t>(std::max<std::int64_t>(0, prec_ - val_)), zero_);
        std::size_t lead = 0;
        while (lead < c_.size() && c_[lead].is_zero()) ++lead;
        if (lead > 0) {
            c_.erase(c_.begin(), c_.begin() + static_cast<std::ptrdiff_t>(lead));
            val_ += static_cast<std::int64_t>(lead);
        }
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
        if (c_.empty()) val_ = prec_;
    }

    K zero_{};
    std::int64_t val_ = kExact;
    std::int64_t prec_ = kExact;
    std::vector<K> c_;
};

template <class K>
LaurentSeries<K> sigma(const LaurentSeries<K>& a, std::uint64_t q) {
    return a.map([q](const K& c) { return sigma(c, q); });
}

template <class K>
int pivot_weight(const LaurentSeries<K>& a) {
    if (a.is_zero()) return std::numeric_limits<int>::max();
    return static_cast<int>(a.valuation());
}

template <class K>
std::string to_string(const LaurentSeries<K>& a) {
    return a.str();
}

}  // namespace isoc

#endif
