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

#ifndef ISOCRYSTAL_XI_FUNCTION_HPP
#define ISOCRYSTAL_XI_FUNCTION_HPP

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "finite_field.hpp"

namespace isoc {

/// Element of the rational function field F_q(xi).
///
/// Stored sparsely as xi^shift * num / den with num, den having nonzero
/// constant terms and den monic. Frobenius multiplies exponents by q, so
/// after a few twists the exponents run into the millions while the number
/// of terms stays small; a dense representation would not survive that.
/// Common factors are cancelled only when both sides have modest degree,
/// so equality is decided by cross-multiplication.
class XiFunc {
   public:
    struct Term {
        std::uint64_t exp;
        std::uint32_t coeff;
        friend bool operator==(const Term&, const Term&) = default;
    };
    using Sparse = std::vector<Term>;  // ascending exponents, nonzero coefficients

    XiFunc() = default;
    /// Constant from the coefficient field F_q.
    explicit XiFunc(const FqElem& c);
    static XiFunc constant(const FiniteField& f, long long n) { return XiFunc(FqElem::from_int(f, n)); }
    /// xi^k for any integer k.
    static XiFunc xi_power(const FiniteField& f, std::int64_t k);
    /// Polynomial from low-to-high coefficients.
    static XiFunc from_coeffs(const std::vector<FqElem>& c);

    const FiniteField& field() const {
        if (!f_) throw DomainError("use of an uninitialized F_q(xi) element");
        return *f_;
    }
    bool is_zero() const noexcept { return num_.empty(); }
    bool is_one() const;
    /// True if this is c * xi^k (single term, trivial denominator).
    bool is_monomial() const noexcept { return num_.size() == 1 && den_.size() == 1; }
    bool is_laurent_polynomial() const noexcept { return den_.size() == 1; }
    /// True if the element is a constant of F_q.
    bool is_constant() const noexcept;
    FqElem constant_value() const;

    std::int64_t shift() const noexcept { return shift_; }
    const Sparse& num() const noexcept { return num_; }
    const Sparse& den() const noexcept { return den_; }
    std::size_t term_count() const noexcept { return num_.size() + den_.size(); }

    XiFunc zero_like() const { return XiFunc(FqElem(field(), 0)); }
    XiFunc one_like() const { return XiFunc(FqElem(field(), 1)); }
    XiFunc int_like(long long n) const { return XiFunc(FqElem::from_int(field(), n)); }

    XiFunc inverse() const;
    XiFunc operator-() const;
    friend XiFunc operator+(const XiFunc& a, const XiFunc& b);
    friend XiFunc operator-(const XiFunc& a, const XiFunc& b) { return a + (-b); }
    friend XiFunc operator*(const XiFunc& a, const XiFunc& b);
    friend XiFunc operator/(const XiFunc& a, const XiFunc& b) { return a * b.inverse(); }
    XiFunc& operator+=(const XiFunc& o) { return *this = *this + o; }
    XiFunc& operator-=(const XiFunc& o) { return *this = *this - o; }
    XiFunc& operator*=(const XiFunc& o) { return *this = *this * o; }
    XiFunc& operator/=(const XiFunc& o) { return *this = *this / o; }
    friend bool operator==(const XiFunc& a, const XiFunc& b);

    /// xi -> xi^q, coefficients fixed (they lie in F_q).
    XiFunc frobenius(std::uint64_t q) const;

    /// Value at a point of a finite extension: `x` is the image of xi.
    /// Throws DomainError if the denominator vanishes there.
    FqElem evaluate(const FqElem& x) const;
    /// Order of vanishing at xi = 0 (the shift, after normalization).
    std::int64_t ord_xi() const noexcept { return shift_; }

    std::string str(const std::string& var) const;
    /// Uses the thread's variable name (see XiName).
    std::string str() const;

   private:
    void normalize();
    const FiniteField* f_ = nullptr;
    std::int64_t shift_ = 0;
    Sparse num_;
    Sparse den_;
};

/// Name under which xi prints on this thread ("xi" unless an XiName scope
/// is active).
class XiName {
   public:
    explicit XiName(std::string name) : saved_(current()) { current() = std::move(name); }
    ~XiName() { current() = std::move(saved_); }
    XiName(const XiName&) = delete;
    XiName& operator=(const XiName&) = delete;
    static std::string& current() {
        thread_local std::string name = "xi";
        return name;
    }

   private:
    std::string saved_;
};

inline std::string XiFunc::str() const { return str(XiName::current()); }

/// An F_q scalar as a constant of F_q(xi).
inline XiFunc lift_scalar(const XiFunc& proto, const FqElem& a) { return XiFunc(embed(a, proto.field())); }

inline XiFunc sigma(const XiFunc& a, std::uint64_t q) { return a.frobenius(q); }
inline int pivot_weight(const XiFunc& a) { return a.is_zero() ? std::numeric_limits<int>::max() : 0; }
inline std::string to_string(const XiFunc& a) { return a.str(); }

}  // namespace isoc

#endif
