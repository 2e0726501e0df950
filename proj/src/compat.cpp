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

#include "isocrystal/compat.hpp"

#include <algorithm>
#include <atomic>
#include <set>
#include <thread>

#include "isocrystal/expr.hpp"
#include "json_format.hpp"

namespace isoc {

using json = nlohmann::ordered_json;

namespace {

[[noreturn]] void field_error(const std::string& field, const std::string& what) {
    throw ParseError("field '" + field + "': " + what);
}

void check_keys(const json& j, const std::string& where, const std::set<std::string>& allowed) {
    if (!j.is_object()) field_error(where.empty() ? "<root>" : where, "expected an object");
    for (const auto& [k, v] : j.items())
        if (!allowed.count(k)) field_error(where.empty() ? k : where + "." + k, "unknown key");
}

std::string get_string(const json& j, const std::string& field) {
    if (j.is_string()) return j.get<std::string>();
    if (j.is_number_integer()) return std::to_string(j.get<long long>());
    field_error(field, "expected an element expression string");
}

long long get_int(const json& j, const std::string& field, long long lo, long long hi) {
    if (!j.is_number_integer()) field_error(field, "expected an integer");
    long long v = j.get<long long>();
    if (v < lo || v > hi) field_error(field, "value " + std::to_string(v) + " outside [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
    return v;
}

bool is_identifier(const std::string& s) {
    if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
    return std::all_of(s.begin(), s.end(), [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

json slopes_json(const std::vector<Slope>& s) {
    json a = json::array();
    for (const auto& x : s) a.push_back(json::array({x.slope.str(), x.multiplicity}));
    return a;
}

std::vector<Slope> slopes_from_json(const json& a) {
    std::vector<Slope> out;
    for (const auto& x : a) out.push_back({Rational::parse(x.at(0).get<std::string>()), x.at(1).get<int>()});
    return out;
}

json vertices_json(const std::vector<Vertex>& v) {
    json a = json::array();
    for (const auto& x : v) a.push_back(json::array({x.x, x.y}));
    return a;
}

template <class T>
json optional_json(const std::optional<T>& v) {
    return v ? json(*v) : json(nullptr);
}

template <class T>
std::optional<T> optional_from(const json& j) {
    if (j.is_null()) return std::nullopt;
    return j.get<T>();
}

std::string relation_of(const NewtonPolygon& observed, const NewtonPolygon& generic) {
    if (observed == generic) return "equal";
    if (observed.rank() == generic.rank() && observed.endpoint() == generic.endpoint() && observed.on_or_above(generic))
        return "above";
    return "violated";
}

PointRecord sweep_point(const DrinfeldModule<XiFunc>& family, const CharacteristicInfo<XiFunc>& generic, const FqPoly& mx,
                        const std::vector<Place>& places, std::int64_t N, const std::string& xi_var) {
    XiName scope(xi_var);
    PointRecord rec;
    rec.point = mx.str(xi_var);
    rec.degree = mx.degree();
    try {
        const FqElem x = residue_root(mx);
        FqElem gr;
        try {
            gr = family.g.back().evaluate(x);
        } catch (const DomainError&) {
            rec.status = "excluded";
            rec.reason = "g_r has a pole at x";
            return rec;
        }
        if (gr.is_zero()) {
            rec.status = "excluded";
            rec.reason = "g_r(x)=0";
            return rec;
        }
        DrinfeldModule<FqElem> spec;
        try {
            spec = specialize(family, mx);
        } catch (const DomainError& e) {
            rec.status = "excluded";
            rec.reason = e.what();
            return rec;
        }
        const auto an = analyze(spec, places, N);
        rec.status = "analyzed";
        rec.charpoly = an.charpoly.str("X");
        for (const auto& c : an.charpoly.coeffs()) rec.coefficients.push_back(c.str("t"));
        rec.a_integral = an.a_integral;
        rec.degree_bounds = an.degree_bounds;
        rec.height = an.characteristic.height;
        rec.unit_root_degree = an.unit_root_degree;
        bool eps_vanishes = false;
        if (generic.epsilon) {
            try {
                eps_vanishes = generic.epsilon->evaluate(x).is_zero();
            } catch (const DomainError&) {
                eps_vanishes = true;
            }
        }
        for (const auto& pa : an.places) {
            PlaceRecord pr;
            pr.place = pa.place.str();
            pr.observed = pa.observed.slopes();
            const auto predicted = predicted_newton(family.rank(), generic, pa.place);
            pr.predicted = predicted.slopes();
            pr.relation = relation_of(pa.observed, predicted);
            const bool is_char = an.characteristic.place && *an.characteristic.place == pa.place;
            const bool generic_char = generic.place && *generic.place == pa.place;
            if (is_char && !generic_char) {
                pr.status = "excluded";
                pr.reason = "c(x)=p";
            } else if (generic_char && eps_vanishes) {
                pr.status = "excluded";
                pr.reason = "eps_p(x)=0";
            } else {
                pr.status = pa.observed == predicted && pa.match ? "match" : "mismatch";
            }
            if (!pa.match && pr.status == "excluded") pr.status = "mismatch";
            rec.places.push_back(std::move(pr));
        }
    } catch (const Error& e) {
        rec.status = "error";
        rec.reason = e.what();
    }
    return rec;
}

}  // namespace

JobSpec parse_job_spec(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("job file is not valid JSON: ") + e.what());
    }
    check_keys(j, "", {"q", "base", "drinfeld", "tau_module", "char", "precision", "places", "degree_bound", "slope_hints"});
    JobSpec s;
    if (j.contains("q")) s.q = static_cast<std::uint64_t>(get_int(j["q"], "q", 2, 1 << 16));
    try {
        FiniteField::of_order(s.q);
    } catch (const Error& e) {
        field_error("q", e.what());
    }
    if (j.contains("base")) {
        const auto& b = j["base"];
        check_keys(b, "base", {"kind", "var", "degree"});
        if (!b.contains("kind") || !b["kind"].is_string()) field_error("base.kind", "expected finite_field, poly_ring or function_field");
        const auto kind = b["kind"].get<std::string>();
        if (kind == "finite_field") {
            s.base.kind = BaseSpec::Kind::finite_field;
            s.base.var = "u";
        } else if (kind == "poly_ring") {
            s.base.kind = BaseSpec::Kind::poly_ring;
        } else if (kind == "function_field") {
            s.base.kind = BaseSpec::Kind::function_field;
        } else {
            field_error("base.kind", "unknown kind '" + kind + "'");
        }
        if (b.contains("var")) {
            if (!b["var"].is_string() || !is_identifier(b["var"].get<std::string>())) field_error("base.var", "expected an identifier");
            s.base.var = b["var"].get<std::string>();
            if (s.base.var == "t" || s.base.var == "X" || s.base.var == "z") field_error("base.var", "name '" + s.base.var + "' is reserved");
        }
        if (b.contains("degree")) {
            if (s.base.kind != BaseSpec::Kind::finite_field) field_error("base.degree", "only a finite field base has a degree");
            s.base.degree = static_cast<int>(get_int(b["degree"], "base.degree", 1, 12));
        }
    }
    if (s.base.kind != BaseSpec::Kind::finite_field && !is_prime(s.q))
        field_error("q", "a polynomial or function field base needs a prime q");
    if (s.base.kind == BaseSpec::Kind::finite_field) {
        try {
            const auto& f = FiniteField::of_order(s.q);
            FiniteField::get(f.characteristic(), f.degree() * s.base.degree);
        } catch (const Error& e) {
            field_error("base.degree", e.what());
        }
    }
    int objects = 0;
    if (j.contains("drinfeld")) {
        ++objects;
        const auto& d = j["drinfeld"];
        check_keys(d, "drinfeld", {"rank", "c", "g"});
        DrinfeldSpec ds;
        if (!d.contains("rank")) field_error("drinfeld.rank", "missing");
        ds.rank = static_cast<int>(get_int(d["rank"], "drinfeld.rank", 1, 8));
        ds.c = d.contains("c") ? get_string(d["c"], "drinfeld.c") : "0";
        if (!d.contains("g") || !d["g"].is_array()) field_error("drinfeld.g", "expected a list of rank coefficients");
        for (std::size_t i = 0; i < d["g"].size(); ++i) ds.g.push_back(get_string(d["g"][i], "drinfeld.g[" + std::to_string(i) + "]"));
        if (static_cast<int>(ds.g.size()) != ds.rank)
            field_error("drinfeld.g", "has " + std::to_string(ds.g.size()) + " entries, rank is " + std::to_string(ds.rank));
        s.drinfeld = ds;
    }
    if (j.contains("tau_module")) {
        ++objects;
        const auto& t = j["tau_module"];
        check_keys(t, "tau_module", {"matrix"});
        if (!t.contains("matrix") || !t["matrix"].is_array() || t["matrix"].empty()) field_error("tau_module.matrix", "expected a square list of rows");
        std::vector<std::vector<std::string>> rows;
        const auto n = t["matrix"].size();
        for (std::size_t i = 0; i < n; ++i) {
            const auto& row = t["matrix"][i];
            if (!row.is_array() || row.size() != n) field_error("tau_module.matrix[" + std::to_string(i) + "]", "expected " + std::to_string(n) + " entries");
            rows.emplace_back();
            for (std::size_t k = 0; k < n; ++k) rows.back().push_back(get_string(row[k], "tau_module.matrix[" + std::to_string(i) + "][" + std::to_string(k) + "]"));
        }
        s.tau_module = rows;
    }
    if (j.contains("char")) {
        ++objects;
        s.charpoly = get_string(j["char"], "char");
    }
    if (objects > 1) field_error("drinfeld", "give exactly one of drinfeld, tau_module, char");
    if (j.contains("precision")) s.precision = get_int(j["precision"], "precision", 1, 4096);
    if (j.contains("places")) {
        if (!j["places"].is_array()) field_error("places", "expected a list of place expressions");
        for (std::size_t i = 0; i < j["places"].size(); ++i) s.places.push_back(get_string(j["places"][i], "places[" + std::to_string(i) + "]"));
    }
    if (j.contains("degree_bound")) s.degree_bound = static_cast<int>(get_int(j["degree_bound"], "degree_bound", 1, 4));
    if (j.contains("slope_hints")) {
        if (!j["slope_hints"].is_array()) field_error("slope_hints", "expected a list of rationals");
        std::vector<std::string> h;
        for (std::size_t i = 0; i < j["slope_hints"].size(); ++i) {
            auto v = get_string(j["slope_hints"][i], "slope_hints[" + std::to_string(i) + "]");
            try {
                Rational::parse(v);
            } catch (const Error& e) {
                field_error("slope_hints[" + std::to_string(i) + "]", e.what());
            }
            h.push_back(v);
        }
        s.slope_hints = h;
    }
    return s;
}

std::string job_spec_to_json(const JobSpec& s) {
    json j;
    j["q"] = s.q;
    json b;
    b["kind"] = s.base.kind == BaseSpec::Kind::finite_field ? "finite_field" : s.base.kind == BaseSpec::Kind::poly_ring ? "poly_ring" : "function_field";
    b["var"] = s.base.var;
    if (s.base.kind == BaseSpec::Kind::finite_field) b["degree"] = s.base.degree;
    j["base"] = b;
    if (s.drinfeld) j["drinfeld"] = {{"rank", s.drinfeld->rank}, {"c", s.drinfeld->c}, {"g", s.drinfeld->g}};
    if (s.tau_module) j["tau_module"] = {{"matrix", *s.tau_module}};
    if (s.charpoly) j["char"] = *s.charpoly;
    j["precision"] = s.precision;
    if (!s.places.empty()) j["places"] = s.places;
    j["degree_bound"] = s.degree_bound;
    if (s.slope_hints) j["slope_hints"] = *s.slope_hints;
    return dump_json(j);
}

FqElem parse_fq_element(const std::string& text, const FiniteField& field, const std::string& var) {
    std::map<std::string, FqElem> vars{{var, FqElem(field, field.generator())}};
    return parse_expression(text, FqElem(field, 0), vars);
}

XiFunc parse_xi_element(const std::string& text, std::uint64_t q, const std::string& var, bool polynomial) {
    const auto& f = FiniteField::of_order(q);
    std::map<std::string, XiFunc> vars{{var, XiFunc::xi_power(f, 1)}};
    auto x = parse_expression(text, XiFunc::constant(f, 0), vars);
    if (polynomial && !x.is_zero() && (!x.is_laurent_polynomial() || x.shift() < 0))
        throw ParseError("'" + text + "' is not a polynomial in " + var);
    return x;
}

Place parse_place(const std::string& text, std::uint64_t q) {
    std::string trimmed;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) trimmed += c;
    if (trimmed == "inf" || trimmed == "infinity") return Place::infinity();
    const auto& f = FiniteField::of_order(q);
    const FqElem zero(f, 0);
    std::map<std::string, FqPoly> vars{{"t", FqPoly::x(zero)}};
    auto p = parse_expression(text, FqPoly(zero), vars);
    if (p.degree() < 1 || !(p.lead() == zero.one_like())) throw ParseError("place '" + text + "' is not a monic polynomial in t of positive degree");
    if (!is_irreducible(p)) throw DomainError("place '" + text + "' is not irreducible over " + f.describe());
    return Place::finite(p);
}

DrinfeldModule<FqElem> build_drinfeld_fq(const JobSpec& spec) {
    if (!spec.drinfeld) throw ParseError("field 'drinfeld': missing");
    if (spec.base.kind != BaseSpec::Kind::finite_field) throw DomainError("this command needs a finite field base");
    const auto& fq = FiniteField::of_order(spec.q);
    const auto& k = FiniteField::get(fq.characteristic(), fq.degree() * spec.base.degree);
    auto el = [&](const std::string& text, const std::string& field) {
        try {
            return parse_fq_element(text, k, spec.base.var);
        } catch (const Error& e) {
            field_error(field, e.what());
        }
    };
    std::vector<FqElem> g;
    for (std::size_t i = 0; i < spec.drinfeld->g.size(); ++i) g.push_back(el(spec.drinfeld->g[i], "drinfeld.g[" + std::to_string(i) + "]"));
    if (g.back().is_zero()) field_error("drinfeld.g[" + std::to_string(g.size() - 1) + "]", "leading coefficient g_r must be nonzero");
    return DrinfeldModule<FqElem>(spec.q, el(spec.drinfeld->c, "drinfeld.c"), g);
}

DrinfeldModule<XiFunc> build_drinfeld_xi(const JobSpec& spec) {
    if (!spec.drinfeld) throw ParseError("field 'drinfeld': missing");
    if (spec.base.kind == BaseSpec::Kind::finite_field) throw DomainError("this command needs a poly_ring or function_field base");
    const bool poly = spec.base.kind == BaseSpec::Kind::poly_ring;
    auto el = [&](const std::string& text, const std::string& field) {
        try {
            return parse_xi_element(text, spec.q, spec.base.var, poly);
        } catch (const Error& e) {
            field_error(field, e.what());
        }
    };
    std::vector<XiFunc> g;
    for (std::size_t i = 0; i < spec.drinfeld->g.size(); ++i) g.push_back(el(spec.drinfeld->g[i], "drinfeld.g[" + std::to_string(i) + "]"));
    if (g.back().is_zero()) field_error("drinfeld.g[" + std::to_string(g.size() - 1) + "]", "leading coefficient g_r must be nonzero");
    return DrinfeldModule<XiFunc>(spec.q, el(spec.drinfeld->c, "drinfeld.c"), g);
}

std::vector<Place> job_places(const JobSpec& spec) {
    std::vector<Place> out;
    if (spec.places.empty()) {
        out.push_back(Place::infinity());
        const auto& f = FiniteField::of_order(spec.q);
        for (int d = 1; d <= 2; ++d)
            for (auto& p : monic_irreducibles(f, d)) out.push_back(Place::finite(p));
    } else {
        for (std::size_t i = 0; i < spec.places.size(); ++i) {
            try {
                out.push_back(parse_place(spec.places[i], spec.q));
            } catch (const Error& e) {
                field_error("places[" + std::to_string(i) + "]", e.what());
            }
        }
    }
    sort_places(out);
    return out;
}

CompatReport run_compat_sweep(const DrinfeldModule<XiFunc>& family, const std::vector<Place>& places_in, int degree_bound,
                              std::int64_t N, int jobs) {
    const std::string var = XiName::current();
    CompatReport rep;
    rep.q = family.q;
    rep.family = family.phi_t().str();
    rep.degree_bound = degree_bound;
    std::vector<Place> places = places_in;
    sort_places(places);
    for (const auto& p : places) rep.places.push_back(p.str());
    const auto generic = characteristic_and_height(family);
    const auto& fq = FiniteField::of_order(family.q);
    std::vector<FqPoly> points;
    for (int d = 1; d <= degree_bound; ++d) {
        auto ps = monic_irreducibles(fq, d);
        std::sort(ps.begin(), ps.end(), lex_less);
        points.insert(points.end(), ps.begin(), ps.end());
    }
    rep.points.resize(points.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < points.size(); i = next++)
            rep.points[i] = sweep_point(family, generic, points[i], places, N, var);
    };
    const int nthreads = std::max(1, std::min<int>(jobs, static_cast<int>(points.size())));
    if (nthreads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    for (const auto& r : rep.points) {
        if (r.status == "excluded") ++rep.excluded_points;
        if (r.status == "error") {
            ++rep.errors;
            ++rep.assertion_failures;
        }
        if (r.status != "analyzed") continue;
        ++rep.analyzed;
        if (!r.a_integral) ++rep.assertion_failures;
        if (!r.degree_bounds) ++rep.assertion_failures;
        if (r.unit_root_degree && r.height && *r.unit_root_degree != family.rank() - *r.height) ++rep.assertion_failures;
        for (const auto& p : r.places) {
            if (p.status == "excluded") ++rep.excluded_places;
            if (p.status == "mismatch") ++rep.assertion_failures;
        }
    }
    return rep;
}

std::vector<Vertex> polygon_vertices(const std::vector<Slope>& slopes) {
    if (slopes.empty()) return {{0, 0}};
    return NewtonPolygon(slopes).vertices();
}

std::string compat_report_to_json(const CompatReport& r) {
    json j;
    j["q"] = r.q;
    j["family"] = r.family;
    j["degree_bound"] = r.degree_bound;
    j["places"] = r.places;
    j["summary"] = {{"points", r.points.size()},          {"analyzed", r.analyzed}, {"excluded_points", r.excluded_points},
                    {"excluded_places", r.excluded_places}, {"errors", r.errors},     {"assertion_failures", r.assertion_failures}};
    json pts = json::array();
    for (const auto& p : r.points) {
        json pj;
        pj["point"] = p.point;
        pj["degree"] = p.degree;
        pj["status"] = p.status;
        pj["reason"] = p.reason;
        pj["charpoly"] = p.charpoly;
        pj["coefficients"] = p.coefficients;
        pj["a_integral"] = p.a_integral;
        pj["degree_bounds"] = p.degree_bounds;
        pj["height"] = optional_json(p.height);
        pj["unit_root_degree"] = optional_json(p.unit_root_degree);
        json pls = json::array();
        for (const auto& pl : p.places) {
            json x;
            x["place"] = pl.place;
            x["status"] = pl.status;
            x["reason"] = pl.reason;
            x["observed"] = slopes_json(pl.observed);
            x["polygon"] = vertices_json(polygon_vertices(pl.observed));
            x["predicted"] = slopes_json(pl.predicted);
            x["relation"] = pl.relation;
            pls.push_back(std::move(x));
        }
        pj["places"] = std::move(pls);
        pts.push_back(std::move(pj));
    }
    j["points"] = std::move(pts);
    return dump_json(j);
}

CompatReport compat_report_from_json(const std::string& text) {
    try {
        const json j = json::parse(text);
        CompatReport r;
        r.q = j.at("q").get<std::uint64_t>();
        r.family = j.at("family").get<std::string>();
        r.degree_bound = j.at("degree_bound").get<int>();
        r.places = j.at("places").get<std::vector<std::string>>();
        const auto& s = j.at("summary");
        r.analyzed = s.at("analyzed").get<int>();
        r.excluded_points = s.at("excluded_points").get<int>();
        r.excluded_places = s.at("excluded_places").get<int>();
        r.errors = s.at("errors").get<int>();
        r.assertion_failures = s.at("assertion_failures").get<int>();
        for (const auto& pj : j.at("points")) {
            PointRecord p;
            p.point = pj.at("point").get<std::string>();
            p.degree = pj.at("degree").get<int>();
            p.status = pj.at("status").get<std::string>();
            p.reason = pj.at("reason").get<std::string>();
            p.charpoly = pj.at("charpoly").get<std::string>();
            p.coefficients = pj.at("coefficients").get<std::vector<std::string>>();
            p.a_integral = pj.at("a_integral").get<bool>();
            p.degree_bounds = pj.at("degree_bounds").get<bool>();
            p.height = optional_from<int>(pj.at("height"));
            p.unit_root_degree = optional_from<int>(pj.at("unit_root_degree"));
            for (const auto& x : pj.at("places")) {
                PlaceRecord pl;
                pl.place = x.at("place").get<std::string>();
                pl.status = x.at("status").get<std::string>();
                pl.reason = x.at("reason").get<std::string>();
                pl.observed = slopes_from_json(x.at("observed"));
                pl.predicted = slopes_from_json(x.at("predicted"));
                pl.relation = x.at("relation").get<std::string>();
                p.places.push_back(std::move(pl));
            }
            r.points.push_back(std::move(p));
        }
        return r;
    } catch (const json::exception& e) {
        throw ParseError(std::string("malformed compat report: ") + e.what());
    }
}

}  // namespace isoc
