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

#include "isocrystal/xi_function.hpp"

#include <algorithm>

#include "isocrystal/poly.hpp"

namespace isoc {
namespace {

using Sparse = XiFunc::Sparse;

// Dense gcd cancellation is skipped above this degree; see the class comment.
constexpr std::uint64_t kDenseGcdLimit = 512;

Sparse canonical(std::vector<XiFunc::Term> terms, const FiniteField& f) {
    std::sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) { return a.exp < b.exp; });
    Sparse out;
    for (const auto& t : terms) {
        if (!out.empty() && out.back().exp == t.exp)
            out.back().coeff = f.add(out.back().coeff, t.coeff);
        else
            out.push_back(t);
        if (!out.empty() && out.back().coeff == 0) out.pop_back();
    }
    return out;
}

Sparse sp_mul(const Sparse& a, const Sparse& b, const FiniteField& f) {
    if (a.size() == 1 && a[0].exp == 0 && a[0].coeff == 1) return b;
    if (b.size() == 1 && b[0].exp == 0 && b[0].coeff == 1) return a;
    std::vector<XiFunc::Term> prod;
    prod.reserve(a.size() * b.size());
    for (const auto& x : a)
        for (const auto& y : b) prod.push_back({x.exp + y.exp, f.mul(x.coeff, y.coeff)});
    return canonical(std::move(prod), f);
}

Sparse sp_add(const Sparse& a, const Sparse& b, const FiniteField& f) {
    Sparse out;
    out.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i].exp < b[j].exp)) {
            out.push_back(a[i++]);
        } else if (i == a.size() || b[j].exp < a[i].exp) {
            out.push_back(b[j++]);
        } else {
            auto c = f.add(a[i].coeff, b[j].coeff);
            if (c != 0) out.push_back({a[i].exp, c});
            ++i;
            ++j;
        }
    }
    return out;
}

Sparse sp_shift(Sparse a, std::uint64_t k) {
    for (auto& t : a) t.exp += k;
    return a;
}

Sparse sp_scale(Sparse a, std::uint32_t c, const FiniteField& f) {
    for (auto& t : a) t.coeff = f.mul(t.coeff, c);
    return a;
}

Poly<FqElem> to_dense(const Sparse& a, const FiniteField& f) {
    std::vector<FqElem> v(a.empty() ? 0 : a.back().exp + 1, FqElem(f, 0));
    for (const auto& t : a) v[t.exp] = FqElem(f, t.coeff);
    return Poly<FqElem>(std::move(v), FqElem(f, 0));
}

Sparse from_dense(const Poly<FqElem>& p) {
    Sparse out;
    for (int i = 0; i <= p.degree(); ++i)
        if (!p[i].is_zero()) out.push_back({static_cast<std::uint64_t>(i), p[i].value()});
    return out;
}

const Sparse kOne{{0, 1}};

std::string sparse_str(const Sparse& a, std::uint64_t extra, const FiniteField& f, const std::string& var) {
    std::string out;
    for (auto it = a.rbegin(); it != a.rend(); ++it) {
        std::uint64_t e = it->exp + extra;
        std::string c = FqElem(f, it->coeff).str();
        if (!out.empty()) out += "+";
        if (e == 0) {
            out += parenthesize(c);
            continue;
        }
        if (c != "1") out += parenthesize(c) + "*";
        out += var;
        if (e > 1) out += "^" + std::to_string(e);
    }
    return out.empty() ? "0" : out;
}

}  // namespace

XiFunc::XiFunc(const FqElem& c) : f_(&c.field()), den_(kOne) {
    if (!c.is_zero()) num_.push_back({0, c.value()});
}

XiFunc XiFunc::xi_power(const FiniteField& f, std::int64_t k) {
    XiFunc r(FqElem(f, 1));
    r.shift_ = k;
    return r;
}

XiFunc XiFunc::from_coeffs(const std::vector<FqElem>& c) {
    if (c.empty()) throw DomainError("empty coefficient list");
    XiFunc r(c[0].zero_like());
    for (std::size_t i = 0; i < c.size(); ++i)
        if (!c[i].is_zero()) r.num_.push_back({i, c[i].value()});
    r.normalize();
    return r;
}

bool XiFunc::is_one() const {
    if (is_zero() || shift_ != 0) return false;
    if (den_.size() == 1) return num_.size() == 1 && num_[0].coeff == 1;
    return num_ == den_;
}

bool XiFunc::is_constant() const noexcept { return is_zero() || (shift_ == 0 && num_.size() == 1 && den_.size() == 1); }

FqElem XiFunc::constant_value() const {
    if (!is_constant()) throw DomainError("element of F_q(xi) is not constant: " + str());
    return FqElem(field(), is_zero() ? 0 : num_[0].coeff);
}

void XiFunc::normalize() {
    const auto& f = field();
    if (num_.empty()) {
        shift_ = 0;
        den_ = kOne;
        return;
    }
    if (den_.empty()) throw DomainError("F_q(xi) element with zero denominator");
    if (auto e0 = num_.front().exp; e0 != 0) {
        for (auto& t : num_) t.exp -= e0;
        shift_ += static_cast<std::int64_t>(e0);
    }
    if (auto d0 = den_.front().exp; d0 != 0) {
        for (auto& t : den_) t.exp -= d0;
        shift_ -= static_cast<std::int64_t>(d0);
    }
    if (auto lc = den_.back().coeff; lc != 1) {
        auto inv = f.inv(lc);
        num_ = sp_scale(std::move(num_), inv, f);
        den_ = sp_scale(std::move(den_), inv, f);
    }
    if (den_.size() > 1 && den_.back().exp <= kDenseGcdLimit && num_.back().exp <= kDenseGcdLimit) {
        auto n = to_dense(num_, f), d = to_dense(den_, f);
        auto g = gcd(n, d);
        if (g.degree() > 0) {
            num_ = from_dense(n / g);
            den_ = from_dense(d / g);
            auto lc = den_.back().coeff;
            auto inv = f.inv(lc);
            num_ = sp_scale(std::move(num_), inv, f);
            den_ = sp_scale(std::move(den_), inv, f);
        }
    }
}

XiFunc XiFunc::operator-() const {
    XiFunc r(*this);
    for (auto& t : r.num_) t.coeff = field().neg(t.coeff);
    return r;
}

XiFunc XiFunc::inverse() const {
    if (is_zero()) throw DomainError("inverse of zero in F_q(xi)");
    XiFunc r(*this);
    std::swap(r.num_, r.den_);
    r.shift_ = -shift_;
    r.normalize();
    return r;
}

XiFunc operator+(const XiFunc& a, const XiFunc& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.f_ != b.f_) throw DomainError("coefficient field mismatch in F_q(xi)");
    const auto& f = *a.f_;
    std::int64_t s = std::min(a.shift_, b.shift_);
    auto ua = static_cast<std::uint64_t>(a.shift_ - s);
    auto ub = static_cast<std::uint64_t>(b.shift_ - s);
    XiFunc r;
    r.f_ = a.f_;
    r.shift_ = s;
    if (a.den_ == b.den_) {
        r.num_ = sp_add(sp_shift(a.num_, ua), sp_shift(b.num_, ub), f);
        r.den_ = a.den_;
    } else {
        r.num_ = sp_add(sp_shift(sp_mul(a.num_, b.den_, f), ua), sp_shift(sp_mul(b.num_, a.den_, f), ub), f);
        r.den_ = sp_mul(a.den_, b.den_, f);
    }
    r.normalize();
    return r;
}

XiFunc operator*(const XiFunc& a, const XiFunc& b) {
    if (a.f_ != b.f_ && a.f_ && b.f_) throw DomainError("coefficient field mismatch in F_q(xi)");
    if (a.is_zero()) return a;
    if (b.is_zero()) return b;
    const auto& f = *a.f_;
    XiFunc r;
    r.f_ = a.f_;
    r.shift_ = a.shift_ + b.shift_;
    r.num_ = sp_mul(a.num_, b.num_, f);
    r.den_ = sp_mul(a.den_, b.den_, f);
    if (a.den_.size() > 1 || b.den_.size() > 1)
        r.normalize();
    return r;
}

bool operator==(const XiFunc& a, const XiFunc& b) {
    if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
    if (a.f_ != b.f_ || a.shift_ != b.shift_) return false;
    if (a.den_ == b.den_) return a.num_ == b.num_;
    const auto& f = *a.f_;
    return sp_mul(a.num_, b.den_, f) == sp_mul(b.num_, a.den_, f);
}

XiFunc XiFunc::frobenius(std::uint64_t q) const {
    XiFunc r(*this);
    for (auto& t : r.num_) t.exp *= q;
    for (auto& t : r.den_) t.exp *= q;
    r.shift_ *= static_cast<std::int64_t>(q);
    // coefficients lie in F_q and are fixed; nothing else to do
    return r;
}

FqElem XiFunc::evaluate(const FqElem& x) const {
    const auto& target = x.field();
    const auto& f = field();
    auto eval = [&](const Sparse& s) {
        std::uint32_t acc = 0;
        for (const auto& t : s) acc = target.add(acc, target.mul(target.embed(t.coeff, f), target.pow(x.value(), t.exp)));
        return acc;
    };
    if (is_zero()) return FqElem(target, 0);
    auto d = eval(den_);
    if (d == 0) throw DomainError("denominator of " + str() + " vanishes at the point");
    std::uint32_t v = target.mul(eval(num_), target.inv(d));
    if (shift_ != 0) {
        if (x.is_zero()) {
            if (shift_ < 0) throw DomainError("pole of " + str() + " at the point");
            return FqElem(target, 0);
        }
        auto base = shift_ > 0 ? x.value() : target.inv(x.value());
        v = target.mul(v, target.pow(base, static_cast<std::uint64_t>(shift_ > 0 ? shift_ : -shift_)));
    }
    return FqElem(target, v);
}

std::string XiFunc::str(const std::string& var) const {
    if (is_zero()) return "0";
    const auto& f = field();
    auto up = static_cast<std::uint64_t>(shift_ > 0 ? shift_ : 0);
    auto down = static_cast<std::uint64_t>(shift_ < 0 ? -shift_ : 0);
    std::string n = sparse_str(num_, up, f, var);
    std::string d = sparse_str(den_, down, f, var);
    if (d == "1") return n;
    bool single = den_.size() == 1 && d.find('*') == std::string::npos;
    return parenthesize(n) + "/" + (single ? d : "(" + d + ")");
}

}  // namespace isoc
