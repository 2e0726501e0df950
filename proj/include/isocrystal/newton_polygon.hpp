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

#ifndef ISOCRYSTAL_NEWTON_POLYGON_HPP
#define ISOCRYSTAL_NEWTON_POLYGON_HPP

#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "rational.hpp"

namespace isoc {

struct Slope {
    Rational slope;
    int multiplicity = 0;
    friend bool operator==(const Slope&, const Slope&) = default;
};

/// Integer point of a hull.
struct Vertex {
    std::int64_t x;
    std::int64_t y;
    friend bool operator==(const Vertex&, const Vertex&) = default;
};

/// Slopes with multiplicities, ascending, equal slopes merged.
class NewtonPolygon {
   public:
    NewtonPolygon() = default;
    explicit NewtonPolygon(std::vector<Slope> slopes);

    const std::vector<Slope>& slopes() const noexcept { return slopes_; }
    int rank() const;
    /// Sum of slope * multiplicity.
    Rational endpoint() const;
    Rational smallest() const;
    /// Vertices of the polygon starting at (0, 0), slopes ascending.
    std::vector<Vertex> vertices() const;
    /// Negated slopes, reversed.
    NewtonPolygon dual() const;
    /// True if this polygon lies on or above `other` at every integer abscissa.
    bool on_or_above(const NewtonPolygon& other) const;
    /// Multiset of the k smallest slopes, summed.
    Rational sum_of_smallest(int k) const;

    std::string str() const;
    friend bool operator==(const NewtonPolygon&, const NewtonPolygon&) = default;

   private:
    std::vector<Slope> slopes_;
};

/// Value of the polygon at abscissa x (0 <= x <= rank).
Rational polygon_value(const NewtonPolygon& p, std::int64_t x);

/// Lower convex hull of points (i, y_i); absent points are skipped.
/// Returns the hull vertices left to right.
std::vector<Vertex> lower_hull(const std::vector<std::optional<std::int64_t>>& ys);

/// Newton polygon of a polynomial sum a_i X^i from the orders y_i = ord a_i:
/// a hull segment of slope -s and length l gives l roots of order s.
/// The returned slopes are those orders times `scale`.
NewtonPolygon polygon_from_orders(const std::vector<std::optional<std::int64_t>>& ys, const Rational& scale);

inline std::ostream& operator<<(std::ostream& os, const NewtonPolygon& p) { return os << p.str(); }

}  // namespace isoc

#endif
