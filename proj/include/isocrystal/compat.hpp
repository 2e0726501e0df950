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

// Job descriptions, the compatible-system sweep over closed points of a
// Drinfeld family, and its report.

#ifndef ISOCRYSTAL_COMPAT_HPP
#define ISOCRYSTAL_COMPAT_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "drinfeld.hpp"

namespace isoc {

struct BaseSpec {
    enum class Kind { finite_field, poly_ring, function_field };
    Kind kind = Kind::poly_ring;
    std::string var = "xi";
    int degree = 1;  ///< [GF(q^m) : F_q] for a finite field base
    friend bool operator==(const BaseSpec&, const BaseSpec&) = default;
};

struct DrinfeldSpec {
    int rank = 1;
    std::string c;
    std::vector<std::string> g;
    friend bool operator==(const DrinfeldSpec&, const DrinfeldSpec&) = default;
};

/// A parsed job. Exactly one of drinfeld, tau_module, charpoly is set for
/// commands that need an object.
struct JobSpec {
    std::uint64_t q = 3;
    BaseSpec base;
    std::optional<DrinfeldSpec> drinfeld;
    std::optional<std::vector<std::vector<std::string>>> tau_module;
    std::optional<std::string> charpoly;
    std::int64_t precision = 32;
    std::vector<std::string> places;
    int degree_bound = 2;
    std::optional<std::vector<std::string>> slope_hints;
    friend bool operator==(const JobSpec&, const JobSpec&) = default;
};

/// Parses the JSON job format; unknown keys and malformed fields are
/// ParseErrors naming the field.
JobSpec parse_job_spec(const std::string& json_text);
std::string job_spec_to_json(const JobSpec& spec);

/// Base-ring element parsers in the expression grammar.
FqElem parse_fq_element(const std::string& text, const FiniteField& field, const std::string& var);
XiFunc parse_xi_element(const std::string& text, std::uint64_t q, const std::string& var, bool polynomial);
/// "inf" or a monic irreducible polynomial in t over F_q.
Place parse_place(const std::string& text, std::uint64_t q);

DrinfeldModule<FqElem> build_drinfeld_fq(const JobSpec& spec);
DrinfeldModule<XiFunc> build_drinfeld_xi(const JobSpec& spec);

/// Places requested by the job, or infinity and all finite places of degree <= 2.
std::vector<Place> job_places(const JobSpec& spec);

struct PlaceRecord {
    std::string place;
    std::string status;  ///< match, mismatch or excluded
    std::string reason;  ///< why the place was excluded
    std::vector<Slope> observed;
    std::vector<Slope> predicted;  ///< generic prediction for the family
    std::string relation;          ///< observed polygon vs the generic one: equal, above, violated
    friend bool operator==(const PlaceRecord&, const PlaceRecord&) = default;
};

struct PointRecord {
    std::string point;
    int degree = 0;
    std::string status;  ///< analyzed, excluded or error
    std::string reason;
    std::string charpoly;
    std::vector<std::string> coefficients;  ///< a_0 .. a_r in F_q[t]
    bool a_integral = false;
    bool degree_bounds = false;
    std::optional<int> height;
    std::optional<int> unit_root_degree;
    std::vector<PlaceRecord> places;
    friend bool operator==(const PointRecord&, const PointRecord&) = default;
};

struct CompatReport {
    std::uint64_t q = 0;
    std::string family;
    int degree_bound = 0;
    std::vector<std::string> places;
    std::vector<PointRecord> points;
    int analyzed = 0;
    int excluded_points = 0;
    int excluded_places = 0;
    int errors = 0;
    int assertion_failures = 0;
    friend bool operator==(const CompatReport&, const CompatReport&) = default;
};

/// Specializes the family at every closed point of degree <= B (by degree,
/// then lexicographically), analyzes it and compares each place with the
/// generic prediction. Results do not depend on `jobs`.
CompatReport run_compat_sweep(const DrinfeldModule<XiFunc>& family, const std::vector<Place>& places, int degree_bound,
                              std::int64_t N, int jobs = 1);

std::string compat_report_to_json(const CompatReport& report);
CompatReport compat_report_from_json(const std::string& json_text);

/// Slopes as the vertex list [[0,0],[x1,y1],...].
std::vector<Vertex> polygon_vertices(const std::vector<Slope>& slopes);

}  // namespace isoc

#endif
