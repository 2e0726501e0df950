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

#include "isocrystal/local_isocrystal.hpp"

namespace isoc {

FqElem residue_root(const FqPoly& mx) {
    const auto& base = mx.zero_coeff().field();
    const auto& target = FiniteField::get(base.characteristic(), base.degree() * mx.degree());
    const FqElem tzero(target, 0);
    auto lifted = mx.map([&](const FqElem& c) { return embed(c, target); });
    for (auto x : all_elements(target))
        if (lifted(x).is_zero()) return x;
    throw DomainError("polynomial " + mx.str("xi") + " has no root in " + target.describe());
}

std::vector<FqPoly> sample_points(const FiniteField& fq, int max_degree) {
    std::vector<FqPoly> out;
    for (int d = 1; d <= max_degree; ++d)
        for (auto& p : monic_irreducibles(fq, d)) out.push_back(std::move(p));
    return out;
}

}  // namespace isoc
