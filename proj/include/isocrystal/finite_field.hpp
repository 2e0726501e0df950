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

#ifndef ISOCRYSTAL_FINITE_FIELD_HPP
#define ISOCRYSTAL_FINITE_FIELD_HPP

#include <compare>
#include <limits>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "errors.hpp"

namespace isoc {

/// GF(p^e) with its modulus fixed to the lexicographically smallest monic
/// irreducible of degree e. Elements are encoded as integers
/// sum c_i p^i over their coefficient vectors in the basis 1, u, ..., u^(e-1),
/// where u is the class of the variable. Instances are interned: there is
/// exactly one object per (p, e), so elements compare fields by address.
class FiniteField {
   public:
    /// Largest supported field size; multiplication is table driven.
    static constexpr std::uint32_t kMaxSize = 1u << 16;

    static const FiniteField& get(int p, int degree);
    /// The field of q elements (q a prime power).
    static const FiniteField& of_order(std::uint64_t q);

    FiniteField(const FiniteField&) = delete;
    FiniteField& operator=(const FiniteField&) = delete;

    int characteristic() const noexcept { return p_; }
    int degree() const noexcept { return e_; }
    std::uint32_t size() const noexcept { return size_; }
    /// Monic modulus, low-to-high, length degree()+1.
    const std::vector<int>& modulus() const noexcept { return modulus_; }

    std::uint32_t add(std::uint32_t a, std::uint32_t b) const;
    std::uint32_t neg(std::uint32_t a) const;
    std::uint32_t sub(std::uint32_t a, std::uint32_t b) const { return add(a, neg(b)); }
    std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
        if (a == 0 || b == 0) return 0;
        std::uint32_t s = log_[a] + log_[b];
        if (s >= size_ - 1) s -= size_ - 1;
        return exp_[s];
    }
    std::uint32_t inv(std::uint32_t a) const;
    std::uint32_t pow(std::uint32_t a, std::uint64_t e) const;
    std::uint32_t from_int(long long n) const;
    /// Class of the variable u modulo the modulus.
    std::uint32_t generator() const noexcept { return e_ == 1 ? 0 : static_cast<std::uint32_t>(p_); }
    std::vector<int> digits(std::uint32_t a) const;
    std::uint32_t from_digits(const std::vector<int>& d) const;

    /// True if `sub` is (isomorphic to) a subfield of this field.
    bool contains_subfield(const FiniteField& sub) const noexcept {
        return sub.p_ == p_ && e_ % sub.e_ == 0;
    }
    /// Image of an element of `sub` under the fixed embedding sub -> this,
    /// which sends sub's generator to the smallest-encoded root of its modulus.
    std::uint32_t embed(std::uint32_t a, const FiniteField& sub) const;
    /// Preimage under embed(); throws DomainError if `a` is not in the subfield.
    std::uint32_t restrict_to(std::uint32_t a, const FiniteField& sub) const;
    /// Coordinates of `a` over `sub` in the basis 1, u, ..., u^(k-1), k = e / sub.e.
    std::vector<std::uint32_t> coordinates(std::uint32_t a, const FiniteField& sub) const;
    /// True iff a^q == a where q = |sub|.
    bool in_subfield(std::uint32_t a, const FiniteField& sub) const {
        return pow(a, sub.size_) == a;
    }

    std::string describe() const;

   private:
    FiniteField(int p, int e);
    struct SubfieldTables {
        std::vector<std::uint32_t> image;                     // sub element -> this
        std::map<std::uint32_t, std::uint32_t> preimage;      // this -> sub element
        std::vector<std::vector<std::uint32_t>> coords;       // this element -> coordinates (lazy)
    };
    const SubfieldTables& tables_for(const FiniteField& sub) const;

    int p_;
    int e_;
    std::uint32_t size_;
    std::vector<int> modulus_;
    std::vector<std::uint32_t> exp_;
    std::vector<std::uint32_t> log_;
    std::vector<std::uint32_t> neg_;
    mutable std::mutex mutex_;
    mutable std::map<const FiniteField*, std::unique_ptr<SubfieldTables>> subfields_;
};

/// Element of an interned finite field.
class FqElem {
   public:
    FqElem() = default;
    FqElem(const FiniteField& f, std::uint32_t v) : f_(&f), v_(v) {}
    static FqElem from_int(const FiniteField& f, long long n) { return FqElem(f, f.from_int(n)); }

    const FiniteField& field() const {
        if (!f_) throw DomainError("use of an uninitialized field element");
        return *f_;
    }
    bool has_field() const noexcept { return f_ != nullptr; }
    std::uint32_t value() const noexcept { return v_; }

    FqElem zero_like() const { return FqElem(field(), 0); }
    FqElem one_like() const { return FqElem(field(), 1); }
    FqElem int_like(long long n) const { return FqElem(field(), field().from_int(n)); }
    bool is_zero() const noexcept { return v_ == 0; }
    bool is_one() const noexcept { return v_ == 1; }

    FqElem inverse() const {
        if (v_ == 0) throw DomainError("inverse of zero in " + field().describe());
        return FqElem(*f_, f_->inv(v_));
    }
    FqElem pow(std::uint64_t e) const { return FqElem(field(), f_->pow(v_, e)); }

    FqElem operator-() const { return FqElem(field(), f_->neg(v_)); }
    FqElem& operator+=(const FqElem& o) {
        v_ = same(o).add(v_, o.v_);
        return *this;
    }
    FqElem& operator-=(const FqElem& o) {
        v_ = same(o).sub(v_, o.v_);
        return *this;
    }
    FqElem& operator*=(const FqElem& o) {
        v_ = same(o).mul(v_, o.v_);
        return *this;
    }
    FqElem& operator/=(const FqElem& o) { return *this *= o.inverse(); }
    friend FqElem operator+(FqElem a, const FqElem& b) { return a += b; }
    friend FqElem operator-(FqElem a, const FqElem& b) { return a -= b; }
    friend FqElem operator*(FqElem a, const FqElem& b) { return a *= b; }
    friend FqElem operator/(FqElem a, const FqElem& b) { return a /= b; }

    friend bool operator==(const FqElem& a, const FqElem& b) noexcept {
        return a.v_ == b.v_ && (a.f_ == b.f_ || !a.f_ || !b.f_);
    }
    /// Encoding order; used only for canonical enumeration.
    friend std::strong_ordering operator<=>(const FqElem& a, const FqElem& b) noexcept {
        return a.v_ <=> b.v_;
    }

    /// Prime-field elements print as integers 0..p-1; others as a polynomial
    /// in `var` (the generator u).
    std::string str(const std::string& var) const;
    /// Uses the thread's generator name (see GeneratorName).
    std::string str() const;

   private:
    const FiniteField& same(const FqElem& o) const {
        if (f_ != o.f_) {
            if (!f_ || !o.f_) throw DomainError("use of an uninitialized field element");
            throw DomainError("field mismatch: " + f_->describe() + " vs " + o.f_->describe());
        }
        return *f_;
    }

    const FiniteField* f_ = nullptr;
    std::uint32_t v_ = 0;
};

/// Name under which the generator of a non-prime field prints on this
/// thread ("u" unless a GeneratorName scope is active).
class GeneratorName {
   public:
    explicit GeneratorName(std::string name) : saved_(current()) { current() = std::move(name); }
    ~GeneratorName() { current() = std::move(saved_); }
    GeneratorName(const GeneratorName&) = delete;
    GeneratorName& operator=(const GeneratorName&) = delete;
    static std::string& current() {
        thread_local std::string name = "u";
        return name;
    }

   private:
    std::string saved_;
};

inline std::string FqElem::str() const { return str(GeneratorName::current()); }

/// x -> x^q.
inline FqElem sigma(const FqElem& a, std::uint64_t q) { return a.pow(q); }

/// The unique b with b^q = a.
FqElem frobenius_inverse(const FqElem& a, std::uint64_t q);

/// All elements of a field in encoding order.
std::vector<FqElem> all_elements(const FiniteField& f);

/// Embeds an element of a subfield into `target`.
inline FqElem embed(const FqElem& a, const FiniteField& target) {
    if (&a.field() == &target) return a;
    return FqElem(target, target.embed(a.value(), a.field()));
}

/// Image of an F_q scalar in the coefficient ring of `proto`.
inline FqElem lift_scalar(const FqElem& proto, const FqElem& a) { return embed(a, proto.field()); }

/// Field mismatch tolerant zero-test used by generic code.
inline int pivot_weight(const FqElem& a) { return a.is_zero() ? std::numeric_limits<int>::max() : 0; }

inline std::string to_string(const FqElem& a) { return a.str(); }

}  // namespace isoc

#endif
