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

#include <gtest/gtest.h>

#include "isocrystal/compat.hpp"

using namespace isoc;

namespace {

const char* kFamilyJob = R"({"q":3, "base":{"kind":"poly_ring","var":"xi"}, "drinfeld":{"rank":2, "c":"0", "g":["-xi","1"]}, "precision":32})";

std::vector<Place> default_places(std::uint64_t q) {
    JobSpec s;
    s.q = q;
    return job_places(s);
}

const PointRecord& point(const CompatReport& r, const std::string& name) {
    for (const auto& p : r.points)
        if (p.point == name) return p;
    throw std::runtime_error("no point " + name);
}

const PlaceRecord& place(const PointRecord& r, const std::string& name) {
    for (const auto& p : r.places)
        if (p.place == name) return p;
    throw std::runtime_error("no place " + name);
}

}  // namespace

TEST(JobSpec, ParsesTheDocumentedSchema) {
    const auto s = parse_job_spec(kFamilyJob);
    EXPECT_EQ(s.q, 3u);
    EXPECT_EQ(s.base.kind, BaseSpec::Kind::poly_ring);
    ASSERT_TRUE(s.drinfeld);
    EXPECT_EQ(s.drinfeld->rank, 2);
    EXPECT_EQ(s.drinfeld->g, (std::vector<std::string>{"-xi", "1"}));
    EXPECT_EQ(s.precision, 32);
    EXPECT_EQ(parse_job_spec(job_spec_to_json(s)), s);
}

TEST(JobSpec, RejectsUnknownAndMalformedFields) {
    auto message = [](const std::string& text) {
        try {
            parse_job_spec(text);
        } catch (const ParseError& e) {
            return std::string(e.what());
        }
        return std::string("accepted");
    };
    EXPECT_NE(message(R"({"q":3, "colour":1})").find("colour"), std::string::npos);
    EXPECT_NE(message(R"({"q":3, "drinfeld":{"rank":2, "g":["1"]}})").find("drinfeld.g"), std::string::npos);
    EXPECT_NE(message(R"({"q":6})").find("'q'"), std::string::npos);
    EXPECT_NE(message(R"({"q":3, "precision":"high"})").find("precision"), std::string::npos);
    EXPECT_NE(message(R"({"q":3, "base":{"kind":"ring"}})").find("base.kind"), std::string::npos);
    EXPECT_NE(message("{\"q\":3,").find("JSON"), std::string::npos);
    EXPECT_EQ(message(R"({"q":3, "places":["t^2-"]})"), "accepted");
    JobSpec bad;
    bad.places = {"t^2-"};
    EXPECT_THROW(job_places(bad), ParseError);
    bad.places = {"t^2+2"};  // t^2 - 1 over F_3 is reducible
    EXPECT_THROW(job_places(bad), ParseError);
}

TEST(JobSpec, PlacesAreCanonicallyOrdered) {
    JobSpec s;
    s.places = {"t^2+1", "t+1", "inf", "t"};
    std::vector<std::string> names;
    for (const auto& p : job_places(s)) names.push_back(p.str());
    EXPECT_EQ(names, (std::vector<std::string>{"inf", "t", "t+1", "t^2+1"}));
}

TEST(CompatSweep, FamilyAtDegreeOnePoints) {
    const auto spec = parse_job_spec(kFamilyJob);
    const auto rep = run_compat_sweep(build_drinfeld_xi(spec), default_places(3), 1, 32);
    ASSERT_EQ(rep.points.size(), 3u);
    EXPECT_EQ(rep.points[0].point, "xi");
    EXPECT_EQ(rep.assertion_failures, 0);
    EXPECT_EQ(rep.excluded_points, 0);
    EXPECT_EQ(point(rep, "xi+2").charpoly, "X^2+2*X+2*t");
    EXPECT_EQ(point(rep, "xi+1").charpoly, "X^2+X+2*t");
    const auto& at0 = place(point(rep, "xi"), "t");
    EXPECT_EQ(at0.status, "excluded");
    EXPECT_EQ(at0.reason, "eps_p(x)=0");
    EXPECT_EQ(rep.excluded_places, 1);
    for (const auto& p : rep.points)
        for (const auto& pl : p.places)
            if (pl.status != "excluded") EXPECT_EQ(pl.status, "match") << p.point << " " << pl.place;
}

TEST(CompatSweep, DegreeTwoPointHasCoefficientsInA) {
    const auto rep = run_compat_sweep(build_drinfeld_xi(parse_job_spec(kFamilyJob)), default_places(3), 2, 32);
    EXPECT_EQ(rep.assertion_failures, 0);
    const auto& p = point(rep, "xi^2+1");
    EXPECT_EQ(p.degree, 2);
    EXPECT_EQ(p.status, "analyzed");
    EXPECT_TRUE(p.a_integral);
    EXPECT_TRUE(p.degree_bounds);
    EXPECT_EQ(p.coefficients.size(), 3u);
    for (std::size_t i = 1; i < rep.points.size(); ++i)
        EXPECT_LE(rep.points[i - 1].degree, rep.points[i].degree);
}

TEST(CompatSweep, CarlitzFamily) {
    const auto spec = parse_job_spec(R"({"q":3, "drinfeld":{"rank":1, "c":"xi", "g":["1"]}})");
    const auto rep = run_compat_sweep(build_drinfeld_xi(spec), default_places(3), 1, 32);
    EXPECT_EQ(rep.assertion_failures, 0);
    EXPECT_EQ(rep.excluded_points, 0);
    EXPECT_EQ(point(rep, "xi").charpoly, "X+2*t");
    EXPECT_EQ(point(rep, "xi+2").charpoly, "X+2*t+1");
    EXPECT_EQ(point(rep, "xi+1").charpoly, "X+2*t+2");
}

TEST(CompatSweep, ExcludesZerosOfLeadingCoefficient) {
    const auto spec = parse_job_spec(R"({"q":3, "drinfeld":{"rank":2, "c":"0", "g":["1","xi"]}})");
    const auto rep = run_compat_sweep(build_drinfeld_xi(spec), default_places(3), 1, 16);
    EXPECT_EQ(point(rep, "xi").status, "excluded");
    EXPECT_EQ(point(rep, "xi").reason, "g_r(x)=0");
    EXPECT_EQ(rep.excluded_points, 1);
}

TEST(CompatSweep, DeterministicParallelAndRoundTrips) {
    const auto family = build_drinfeld_xi(parse_job_spec(kFamilyJob));
    const auto seq = run_compat_sweep(family, default_places(3), 2, 24, 1);
    const auto par = run_compat_sweep(family, default_places(3), 2, 24, 4);
    EXPECT_EQ(seq, par);
    const auto text = compat_report_to_json(seq);
    EXPECT_EQ(text, compat_report_to_json(par));
    EXPECT_EQ(text, compat_report_to_json(run_compat_sweep(family, default_places(3), 2, 24, 1)));
    EXPECT_EQ(compat_report_from_json(text), seq);
}

TEST(CompatSweep, PolygonVertices) {
    const std::vector<Slope> s{{Rational(0), 1}, {Rational(1), 1}};
    const auto v = polygon_vertices(s);
    ASSERT_EQ(v.size(), 3u);
    EXPECT_EQ(v[2].x, 2);
    EXPECT_EQ(v[2].y, 1);
}
