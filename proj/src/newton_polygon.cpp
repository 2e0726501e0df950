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

#include "isocrystal/newton_polygon.hpp"

#include <algorithm>
#include <map>

#include "isocrystal/errors.hpp"

namespace isoc {

NewtonPolygon::NewtonPolygon(std::vector<Slope> slopes) {
    std::map<Rational, int> merged;
    for (const auto& s : slopes) {
        if (s.multiplicity <= 0) throw DomainError("slope multiplicity must be positive");
        merged[s.slope] += s.multiplicity;
    }
    for (auto [a, m] : merged) {
        if (m % a.den() != 0)
            throw DomainError("slope " + a.str() + " with multiplicity " + std::to_string(m) + " has a non-integral break point");
        slopes_.push_back({a, m});
    }
}

int NewtonPolygon::rank() const {
    int r = 0;
    for (const auto& s : slopes_) r += s.multiplicity;
    return r;
}

Rational NewtonPolygon::endpoint() const {
    Rational e(0);
    for (const auto& s : slopes_) e += s.slope * Rational(s.multiplicity);
    return e;
}

Rational NewtonPolygon::smallest() const {
    if (slopes_.empty()) throw DomainError("empty Newton polygon");
    return slopes_.front().slope;
}

std::vector<Vertex> NewtonPolygon::vertices() const {
    std::vector<Vertex> v{{0, 0}};
    Rational y(0);
    std::int64_t x = 0;
    for (const auto& s : slopes_) {
        x += s.multiplicity;
        y += s.slope * Rational(s.multiplicity);
        v.push_back({x, y.num()});
    }
    return v;
}

NewtonPolygon NewtonPolygon::dual() const {
    std::vector<Slope> d;
    for (const auto& s : slopes_) d.push_back({-s.slope, s.multiplicity});
    return NewtonPolygon(d);
}

Rational polygon_value(const NewtonPolygon& p, std::int64_t x) {
    Rational y(0);
    std::int64_t left = x;
    for (const auto& s : p.slopes()) {
        std::int64_t step = std::min<std::int64_t>(left, s.multiplicity);
        y += s.slope * Rational(step);
        left -= step;
        if (left == 0) break;
    }
    return y;
}

bool NewtonPolygon::on_or_above(const NewtonPolygon& other) const {
    if (rank() != other.rank()) return false;
    for (std::int64_t x = 0; x <= rank(); ++x)
        if (polygon_value(*this, x) < polygon_value(other, x)) return false;
    return true;
}

Rational NewtonPolygon::sum_of_smallest(int k) const { return polygon_value(*this, k); }

std::string NewtonPolygon::str() const {
    std::string out = "[";
    for (std::size_t i = 0; i < slopes_.size(); ++i) {
        if (i) out += ",";
        out += "(" + slopes_[i].slope.str() + "," + std::to_string(slopes_[i].multiplicity) + ")";
    }
    return out + "]";
}

std::vector<Vertex> lower_hull(const std::vector<std::optional<std::int64_t>>& ys) {
    std::vector<Vertex> hull;
    for (std::size_t i = 0; i < ys.size(); ++i) {
        if (!ys[i]) continue;
        Vertex p{static_cast<std::int64_t>(i), *ys[i]};
        while (hull.size() >= 2) {
            const auto& a = hull[hull.size() - 2];
            const auto& b = hull.back();
            // drop b unless it lies strictly below the chord a-p
            __int128 cross = static_cast<__int128>(b.x - a.x) * (p.y - a.y) - static_cast<__int128>(b.y - a.y) * (p.x - a.x);
            if (cross <= 0)
                hull.pop_back();
            else
                break;
        }
        hull.push_back(p);
    }
    return hull;
}

NewtonPolygon polygon_from_orders(const std::vector<std::optional<std::int64_t>>& ys, const Rational& scale) {
    auto hull = lower_hull(ys);
    if (hull.empty() || hull.front().x != 0) throw DomainError("constant coefficient is zero");
    std::vector<Slope> s;
    for (std::size_t i = 1; i < hull.size(); ++i) {
        std::int64_t len = hull[i].x - hull[i - 1].x;
        Rational root_order(hull[i - 1].y - hull[i].y, len);
        s.push_back({root_order * scale, static_cast<int>(len)});
    }
    return NewtonPolygon(s);
}

}  // namespace isoc
