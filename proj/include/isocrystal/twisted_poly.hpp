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

#ifndef ISOCRYSTAL_TWISTED_POLY_HPP
#define ISOCRYSTAL_TWISTED_POLY_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "matrix.hpp"
#include "place.hpp"

namespace isoc {

/// Element of E[tau] with tau e = sigma(e) tau, sigma the q-Frobenius on
/// the coefficient ring. Coefficients low-to-high in tau.
template <class K>
class TwistedPoly {
   public:
    TwistedPoly() = default;
    TwistedPoly(std::vector<K> c, const K& zero, std::uint64_t q) : zero_(zero.zero_like()), q_(q), c_(std::move(c)) { trim(); }
    static TwistedPoly tau_power(const K& zero, std::uint64_t q, int k) {
        std::vector<K> c(k + 1, zero.zero_like());
        c[k] = zero.one_like();
        return TwistedPoly(std::move(c), zero, q);
    }
    static TwistedPoly constant(const K& c, std::uint64_t q) { return TwistedPoly({c}, c.zero_like(), q); }

    int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const noexcept { return c_.empty(); }
    std::uint64_t q() const noexcept { return q_; }
    const K& coeff(int i) const { return (i < 0 || i > degree()) ? zero_ : c_[i]; }
    const std::vector<K>& coeffs() const noexcept { return c_; }
    /// Smallest i with a nonzero coefficient; -1 for zero.
    int lowest_index() const {
        for (int i = 0; i <= degree(); ++i)
            if (!c_[i].is_zero()) return i;
        return -1;
    }

    TwistedPoly one_like() const { return constant(zero_.one_like(), q_); }

    friend TwistedPoly operator+(const TwistedPoly& a, const TwistedPoly& b) {
        a.check(b);
        std::vector<K> r(std::max(a.c_.size(), b.c_.size()), a.zero_);
        for (std::size_t i = 0; i < a.c_.size(); ++i) r[i] += a.c_[i];
        for (std::size_t i = 0; i < b.c_.size(); ++i) r[i] += b.c_[i];
        return TwistedPoly(std::move(r), a.zero_, a.q_);
    }
    TwistedPoly operator-() const {
        TwistedPoly r(*this);
        for (auto& x : r.c_) x = -x;
        return r;
    }
    friend TwistedPoly operator-(const TwistedPoly& a, const TwistedPoly& b) { return a + (-b); }
    /// (a tau^i)(b tau^j) = a sigma^i(b) tau^(i+j).
    friend TwistedPoly operator*(const TwistedPoly& a, const TwistedPoly& b) {
        a.check(b);
        if (a.is_zero() || b.is_zero()) return TwistedPoly({}, a.zero_, a.q_);
        std::vector<K> r(a.c_.size() + b.c_.size() - 1, a.zero_);
        std::vector<K> bs = b.c_;  // sigma^i(b), updated as i grows
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (i > 0)
                for (auto& x : bs) x = sigma(x, a.q_);
            if (a.c_[i].is_zero()) continue;
            for (std::size_t j = 0; j < bs.size(); ++j) r[i + j] += a.c_[i] * bs[j];
        }
        return TwistedPoly(std::move(r), a.zero_, a.q_);
    }
    TwistedPoly scaled(const K& s) const {
        TwistedPoly r(*this);
        for (auto& x : r.c_) x = s * x;
        r.trim();
        return r;
    }
    friend bool operator==(const TwistedPoly& a, const TwistedPoly& b) { return a.q_ == b.q_ && a.c_ == b.c_; }

    std::string str() const {
        if (is_zero()) return "0";
        std::string out;
        for (int i = 0; i <= degree(); ++i) {
            if (c_[i].is_zero()) continue;
            std::string cs = to_string(c_[i]);
            std::string mono = i == 0 ? "" : (i == 1 ? "tau" : "tau^" + std::to_string(i));
            std::string term = mono.empty() ? cs : (cs == "1" ? mono : parenthesize(cs) + "*" + mono);
            if (!out.empty()) out += "+";
            out += term;
        }
        return out;
    }

   private:
    void check(const TwistedPoly& b) const {
        if (q_ != b.q_) throw DomainError("twisted polynomials over different difference rings");
    }
    void trim() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }

    K zero_{};
    std::uint64_t q_ = 0;
    std::vector<K> c_;
};

/// p(phi_t) for p in F_q[t]: the image of p under t -> phi_t.
template <class K>
TwistedPoly<K> twisted_compose(const FqPoly& p, const TwistedPoly<K>& phi_t, const K& zero) {
    TwistedPoly<K> acc({}, zero, phi_t.q());
    for (int i = p.degree(); i >= 0; --i) {
        acc = acc * phi_t + TwistedPoly<K>::constant(lift_scalar(zero, p[i]), phi_t.q());
    }
    return acc;
}

}  // namespace isoc

#endif
