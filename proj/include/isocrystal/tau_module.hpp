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

#ifndef ISOCRYSTAL_TAU_MODULE_HPP
#define ISOCRYSTAL_TAU_MODULE_HPP

#include <cstdint>
#include <string>

#include "matrix.hpp"

namespace isoc {

/// How sigma acts on the entry ring: the q-Frobenius on the coefficients
/// of the field of definition, identity on t and z.
struct DifferenceRing {
    enum class Kind { global, local, polynomial };
    Kind kind = Kind::global;
    std::uint64_t q = 0;
    std::string description;
    friend bool operator==(const DifferenceRing& a, const DifferenceRing& b) { return a.kind == b.kind && a.q == b.q; }
};

/// Rank-r tau-module given by its structure matrix: column j holds the
/// coordinates of tau(e_j), so tau(v) = Phi * sigma(v).
template <class R>
class TauModule {
   public:
    TauModule() = default;
    TauModule(Matrix<R> phi, DifferenceRing ring) : phi_(std::move(phi)), ring_(std::move(ring)) {
        if (!phi_.is_square()) throw DomainError("structure matrix must be square");
        if (ring_.q < 2) throw DomainError("difference ring needs a Frobenius exponent q >= 2");
    }
    static TauModule unit(const R& zero, DifferenceRing ring) { return TauModule(Matrix<R>::identity(1, zero), std::move(ring)); }

    int rank() const noexcept { return phi_.rows(); }
    const Matrix<R>& phi() const noexcept { return phi_; }
    const DifferenceRing& ring() const noexcept { return ring_; }
    std::uint64_t q() const noexcept { return ring_.q; }

    /// tau applied to coordinate columns.
    Matrix<R> apply_tau(const Matrix<R>& v) const { return phi_ * sigma(v, ring_.q); }

   private:
    Matrix<R> phi_;
    DifferenceRing ring_;
};

/// Matrix of tau^n: Phi sigma(Phi) ... sigma^(n-1)(Phi).
template <class R>
Matrix<R> tau_power_matrix(const TauModule<R>& m, int n) {
    if (n < 1) throw DomainError("tau power must be positive");
    Matrix<R> acc = m.phi();
    Matrix<R> s = m.phi();
    for (int i = 1; i < n; ++i) {
        s = sigma(s, m.q());
        acc = acc * s;
    }
    return acc;
}

/// Dual module: Psi = (Phi^T)^(-1), so that Psi^T Phi = 1 and the pairing
/// <f, m> = f^T m satisfies <tau f, tau m> = sigma <f, m>.
template <class R>
TauModule<R> dual_module(const TauModule<R>& m) {
    auto psi = inverse(m.phi().transpose());
    auto check = psi.transpose() * m.phi();
    if (!(check == Matrix<R>::identity(m.rank(), m.phi().zero())))
        throw DomainError("dual structure matrix failed the pairing check");
    return TauModule<R>(std::move(psi), m.ring());
}

template <class R>
TauModule<R> tensor_module(const TauModule<R>& a, const TauModule<R>& b) {
    if (!(a.ring() == b.ring())) throw DomainError("tensor product over different difference rings");
    return TauModule<R>(kronecker(a.phi(), b.phi()), a.ring());
}

/// Inner hom realized as M^dual (x) N.
template <class R>
TauModule<R> hom_module(const TauModule<R>& m, const TauModule<R>& n) {
    return tensor_module(dual_module(m), n);
}

template <class R>
TauModule<R> exterior_power(const TauModule<R>& m, int n) {
    if (n < 0 || n > m.rank()) throw DomainError("exterior power " + std::to_string(n) + " exceeds rank " + std::to_string(m.rank()));
    return TauModule<R>(compound(m.phi(), n), m.ring());
}

}  // namespace isoc

#endif
