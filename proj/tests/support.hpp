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

// Shared generators for the property tests. Fixed seeds everywhere, so a
// failing case reproduces by rerunning the binary.

#ifndef ISOCRYSTAL_TESTS_SUPPORT_HPP
#define ISOCRYSTAL_TESTS_SUPPORT_HPP

#include <random>
#include <vector>

#include "isocrystal/finite_field.hpp"
#include "isocrystal/poly.hpp"
#include "isocrystal/ratfunc.hpp"
#include "isocrystal/xi_function.hpp"

namespace isoc::testing {

inline std::mt19937_64& rng() {
    static std::mt19937_64 r(20261017);
    return r;
}

inline int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng()); }

inline FqElem random_elem(const FiniteField& f) {
    return FqElem(f, static_cast<std::uint32_t>(uniform(0, static_cast<int>(f.size()) - 1)));
}

inline FqElem random_nonzero(const FiniteField& f) {
    return FqElem(f, static_cast<std::uint32_t>(uniform(1, static_cast<int>(f.size()) - 1)));
}

inline Poly<FqElem> random_poly(const FiniteField& f, int max_deg) {
    std::vector<FqElem> c;
    int d = uniform(0, max_deg);
    for (int i = 0; i <= d; ++i) c.push_back(random_elem(f));
    return Poly<FqElem>(c, FqElem(f, 0));
}

inline Poly<FqElem> random_nonzero_poly(const FiniteField& f, int max_deg) {
    for (;;) {
        auto p = random_poly(f, max_deg);
        if (!p.is_zero()) return p;
    }
}

inline RatFunc<FqElem> random_ratfunc(const FiniteField& f, int max_deg) {
    return RatFunc<FqElem>(random_nonzero_poly(f, max_deg), random_nonzero_poly(f, max_deg));
}

inline XiFunc random_xi(const FiniteField& f, int max_deg) {
    std::vector<FqElem> n, d;
    int dn = uniform(0, max_deg), dd = uniform(0, max_deg);
    for (int i = 0; i <= dn; ++i) n.push_back(random_elem(f));
    for (int i = 0; i <= dd; ++i) d.push_back(random_elem(f));
    d[dd] = random_nonzero(f);
    auto num = XiFunc::from_coeffs(n);
    if (num.is_zero()) return num;
    return num / XiFunc::from_coeffs(d) * XiFunc::xi_power(f, uniform(-2, 2));
}

}  // namespace isoc::testing

#endif
