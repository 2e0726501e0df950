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

#include "service.hpp"

#include <algorithm>
#include <sstream>

#include "isocrystal/compat.hpp"
#include "isocrystal/expr.hpp"
#include "isocrystal/frobenius.hpp"
#include "json.hpp"
#include "json_format.hpp"

namespace isoc {

using json = nlohmann::ordered_json;

namespace {

json slopes_json(const std::vector<Slope>& s) {
    json a = json::array();
    for (const auto& x : s) a.push_back(json::array({x.slope.str(), x.multiplicity}));
    return a;
}

json vertices_json(const std::vector<Vertex>& v) {
    json a = json::array();
    for (const auto& x : v) a.push_back(json::array({x.x, x.y}));
    return a;
}

std::string slopes_text(const std::vector<Slope>& s) {
    std::string out;
    for (const auto& x : s) out += (out.empty() ? "" : " ") + ("(" + x.slope.str() + "," + std::to_string(x.multiplicity) + ")");
    return out;
}

std::string vertices_text(const std::vector<Vertex>& v) {
    std::string out;
    for (const auto& x : v) out += (out.empty() ? "" : " ") + ("(" + std::to_string(x.x) + "," + std::to_string(x.y) + ")");
    return out;
}

/// Lower convex hull of the points (i, ord a_i), break points only.
std::vector<Vertex> coefficient_hull(const CharPoly& p, const Place& place) {
    std::vector<Vertex> pts, hull;
    for (int i = 0; i <= p.degree(); ++i)
        if (!p.coeff(i).is_zero()) pts.push_back({i, ord_at_place(p.coeff(i), place)});
    for (const auto& v : pts) {
        while (hull.size() >= 2) {
            const auto& a = hull[hull.size() - 2];
            const auto& b = hull.back();
            if ((b.y - a.y) * (v.x - a.x) >= (v.y - a.y) * (b.x - a.x)) hull.pop_back();
            else break;
        }
        hull.push_back(v);
    }
    return hull;
}

const FiniteField& base_field(const JobSpec& s) {
    const auto& fq = FiniteField::of_order(s.q);
    if (s.base.kind != BaseSpec::Kind::finite_field) return fq;
    return FiniteField::get(fq.characteristic(), fq.degree() * s.base.degree);
}

int base_degree(const JobSpec& s) { return s.base.kind == BaseSpec::Kind::finite_field ? s.base.degree : 1; }

bool xi_base(const JobSpec& s) { return s.base.kind != BaseSpec::Kind::finite_field; }

[[noreturn]] void need(const std::string& what) { throw ParseError("field '" + what + "': missing"); }

template <class F>
auto field_guard(const std::string& field, F&& f) {
    try {
        return f();
    } catch (const ParseError& e) {
        throw ParseError("field '" + field + "': " + e.what());
    }
}

FqRat t_function(const FiniteField& k) {
    const FqElem zero(k, 0);
    return FqRat(FqPoly::x(zero));
}

CharPoly parse_charpoly(const std::string& text, const FiniteField& f) {
    const FqRat rz(FqPoly(FqElem(f, 0)));
    std::map<std::string, CharPoly> vars{{"X", CharPoly::x(rz)}, {"t", CharPoly::constant(t_function(f))}};
    auto p = field_guard("char", [&] { return parse_expression(text, CharPoly(rz), vars); });
    if (p.degree() < 1) throw DomainError("field 'char': expected a polynomial of positive degree in X");
    const auto lead = p.lead();
    if (!(lead == rz.one_like())) throw DomainError("field 'char': polynomial must be monic in X");
    return p;
}

GlobalModule parse_global_module(const JobSpec& s) {
    const auto& k = base_field(s);
    const FqRat rz(FqPoly(FqElem(k, 0)));
    std::map<std::string, FqRat> vars{{"t", t_function(k)}, {s.base.var, FqRat(FqPoly::constant(FqElem(k, k.generator())))}};
    std::vector<std::vector<FqRat>> rows;
    for (std::size_t i = 0; i < s.tau_module->size(); ++i) {
        rows.emplace_back();
        for (std::size_t j = 0; j < (*s.tau_module)[i].size(); ++j) {
            const auto name = "tau_module.matrix[" + std::to_string(i) + "][" + std::to_string(j) + "]";
            rows.back().push_back(field_guard(name, [&] { return parse_expression((*s.tau_module)[i][j], rz, vars); }));
        }
    }
    auto phi = Matrix<FqRat>::from_rows(rows);
    if (det_bareiss(phi).is_zero()) throw DomainError("field 'tau_module.matrix': determinant is zero");
    return GlobalModule(phi, global_ring(s.q));
}

template <class K>
LocalIsocrystal<K> parse_local_module(const JobSpec& s, std::int64_t N) {
    using S = Series<K>;
    K kzero, gen;
    if constexpr (std::is_same_v<K, XiFunc>) {
        const auto& f = FiniteField::of_order(s.q);
        kzero = XiFunc::constant(f, 0);
        gen = XiFunc::xi_power(f, 1);
    } else {
        const auto& k = base_field(s);
        kzero = FqElem(k, 0);
        gen = FqElem(k, k.generator());
    }
    std::map<std::string, S> vars{{"z", S::monomial(kzero.one_like(), 1)}, {s.base.var, S::constant(gen)}};
    std::vector<std::vector<S>> rows;
    for (std::size_t i = 0; i < s.tau_module->size(); ++i) {
        rows.emplace_back();
        for (std::size_t j = 0; j < (*s.tau_module)[i].size(); ++j) {
            const auto name = "tau_module.matrix[" + std::to_string(i) + "][" + std::to_string(j) + "]";
            rows.back().push_back(field_guard(name, [&] { return parse_expression((*s.tau_module)[i][j], S::zero(kzero), vars); }).truncated(N));
        }
    }
    auto phi = SeriesMatrix<K>::from_rows(rows);
    if (det_division_free(phi).is_zero()) throw DomainError("field 'tau_module.matrix': determinant vanishes modulo z^" + std::to_string(N));
    return LocalIsocrystal<K>(phi, local_ring(s.q));
}

/// Expected slopes from the job, checked by newton and slopes.
bool hints_hold(const JobSpec& s, const NewtonPolygon& np) {
    if (!s.slope_hints) return true;
    std::vector<Rational> want, got;
    for (const auto& h : *s.slope_hints) want.push_back(Rational::parse(h));
    for (const auto& x : np.slopes()) got.push_back(x.slope);
    std::sort(want.begin(), want.end());
    want.erase(std::unique(want.begin(), want.end()), want.end());
    return want == got;
}

struct CharSource {
    CharPoly charpoly;
    int m = 1;
    std::optional<Analysis> analysis;
};

CharSource char_source(const JobSpec& s, std::int64_t N) {
    CharSource out;
    out.m = base_degree(s);
    if (s.charpoly) {
        out.charpoly = parse_charpoly(*s.charpoly, FiniteField::of_order(s.q));
    } else if (s.drinfeld) {
        auto an = analyze(build_drinfeld_fq(s), {}, N, true);
        out.charpoly = an.charpoly;
        out.analysis = std::move(an);
    } else if (s.tau_module) {
        if (xi_base(s)) throw DomainError("field 'base.kind': a characteristic polynomial needs a finite_field base");
        out.charpoly = charpoly_global(parse_global_module(s), true);
    } else {
        need("char");
    }
    return out;
}

std::vector<std::string> coefficient_strings(const CharPoly& p) {
    std::vector<std::string> out;
    for (const auto& c : p.coeffs()) out.push_back(c.str("t"));
    return out;
}

Place characteristic_or(const JobSpec& s, const std::optional<Place>& fallback) {
    if (!s.places.empty()) return job_places(s).front();
    if (fallback) return *fallback;
    throw ParseError("field 'places': give the place to work at");
}

std::vector<Place> requested_places(const JobSpec& s, const std::optional<Place>& fallback) {
    if (!s.places.empty()) {
        // keep the order of the request for single-place commands
        std::vector<Place> out;
        for (std::size_t i = 0; i < s.places.size(); ++i)
            out.push_back(field_guard("places[" + std::to_string(i) + "]", [&] { return parse_place(s.places[i], s.q); }));
        sort_places(out);
        return out;
    }
    if (fallback) return {*fallback};
    throw ParseError("field 'places': give the places to work at");
}

CommandResult cmd_charpoly(const JobSpec& s) {
    GeneratorName gname(s.base.var);
    auto src = char_source(s, s.precision);
    CommandResult r;
    json j;
    j["command"] = "charpoly";
    j["q"] = s.q;
    j["m"] = src.m;
    j["charpoly"] = src.charpoly.str("X");
    j["coefficients"] = coefficient_strings(src.charpoly);
    bool in_a = std::all_of(src.charpoly.coeffs().begin(), src.charpoly.coeffs().end(), [](const FqRat& c) { return c.is_polynomial(); });
    j["coefficients_in_A"] = in_a;
    if (src.analysis) {
        j["rank"] = src.analysis->rank;
        j["a_integral"] = src.analysis->a_integral;
        j["degree_bounds"] = src.analysis->degree_bounds;
        r.assertions_failed += !src.analysis->a_integral + !src.analysis->degree_bounds;
    }
    r.json = dump_json(j);
    r.table.header = {"i", "a_i"};
    for (int i = 0; i <= src.charpoly.degree(); ++i) r.table.rows.push_back({std::to_string(i), src.charpoly.coeff(i).str("t")});
    return r;
}

CommandResult cmd_newton(const JobSpec& s) {
    GeneratorName gname(s.base.var);
    auto src = char_source(s, s.precision);
    std::vector<Place> places = job_places(s);
    CommandResult r;
    json j;
    j["command"] = "newton";
    j["q"] = s.q;
    j["m"] = src.m;
    j["charpoly"] = src.charpoly.str("X");
    json pl = json::array();
    r.table.header = {"place", "vertices", "slopes", "polygon"};
    if (src.analysis) r.table.header.push_back("predicted");
    for (const auto& p : places) {
        const auto np = newton_at_place(src.charpoly, p, src.m);
        json x;
        x["place"] = p.str();
        x["vertices"] = vertices_json(coefficient_hull(src.charpoly, p));
        x["slopes"] = slopes_json(np.slopes());
        x["polygon"] = vertices_json(np.vertices());
        if (s.slope_hints) {
            x["hints_hold"] = hints_hold(s, np);
        }
        r.assertions_failed += !hints_hold(s, np);
        std::vector<std::string> row{p.str(), vertices_text(coefficient_hull(src.charpoly, p)), slopes_text(np.slopes()), vertices_text(np.vertices())};
        if (src.analysis) {
            const auto pred = predicted_newton(src.analysis->rank, src.analysis->characteristic, p);
            x["predicted"] = slopes_json(pred.slopes());
            x["match"] = pred == np;
            r.assertions_failed += !(pred == np);
            row.push_back(slopes_text(pred.slopes()));
        }
        pl.push_back(std::move(x));
        r.table.rows.push_back(std::move(row));
    }
    j["places"] = std::move(pl);
    r.json = dump_json(j);
    return r;
}

/// Newton polygon of a local isocrystal; over F_q(xi) it is read off the
/// slope filtration.
template <class K>
NewtonPolygon local_polygon(const LocalIsocrystal<K>& m, std::int64_t N) {
    if constexpr (std::is_same_v<K, XiFunc>) {
        std::vector<Slope> s;
        for (const auto& st : slope_filtration(m, N)) s.push_back(st.slope);
        return NewtonPolygon(s);
    } else {
        (void)N;
        return newton_polygon_local(m);
    }
}

template <class K>
CommandResult slopes_for(const JobSpec& s) {
    CommandResult r;
    json j;
    j["command"] = "slopes";
    j["q"] = s.q;
    // Over F_q(xi) the series coefficients grow like q^n in degree; the
    // polygon is already determined at modest precision.
    const std::int64_t N = std::is_same_v<K, XiFunc> ? std::min<std::int64_t>(s.precision, 16) : s.precision;
    const auto M = working_precision<K>(N) + 8;
    r.table.header = {"place", "status", "slopes", "polygon", "predicted"};
    if (s.tau_module) {
        const auto np = local_polygon(parse_local_module<K>(s, M), working_precision<K>(N));
        j["slopes"] = slopes_json(np.slopes());
        j["polygon"] = vertices_json(np.vertices());
        if (s.slope_hints) j["hints_hold"] = hints_hold(s, np);
        r.assertions_failed += !hints_hold(s, np);
        r.table.rows.push_back({"", "computed", slopes_text(np.slopes()), vertices_text(np.vertices()), ""});
    } else if (s.drinfeld) {
        DrinfeldModule<K> phi;
        if constexpr (std::is_same_v<K, XiFunc>) phi = build_drinfeld_xi(s);
        else phi = build_drinfeld_fq(s);
        const auto info = characteristic_and_height(phi);
        const auto motive = motive_matrix(phi);
        json pl = json::array();
        for (const auto& p : requested_places(s, info.place)) {
            json x;
            x["place"] = p.str();
            const auto pred = predicted_newton(phi.rank(), info, p);
            x["predicted"] = slopes_json(pred.slopes());
            try {
                const auto np = local_polygon(localize_at_place(motive, p, M), working_precision<K>(N));
                x["status"] = np == pred ? "match" : "mismatch";
                x["slopes"] = slopes_json(np.slopes());
                x["polygon"] = vertices_json(np.vertices());
                r.assertions_failed += !(np == pred);
                r.table.rows.push_back({p.str(), x["status"], slopes_text(np.slopes()), vertices_text(np.vertices()), slopes_text(pred.slopes())});
            } catch (const NotImplementedPlace& e) {
                x["status"] = "unsupported";
                x["reason"] = e.what();
                r.table.rows.push_back({p.str(), "unsupported", "", "", slopes_text(pred.slopes())});
            }
            pl.push_back(std::move(x));
        }
        j["places"] = std::move(pl);
    } else {
        need("tau_module");
    }
    r.json = dump_json(j);
    return r;
}

template <class K>
LocalIsocrystal<K> local_object(const JobSpec& s, std::int64_t N, std::optional<Place>& at) {
    if (s.tau_module) return parse_local_module<K>(s, N);
    if (!s.drinfeld) need("tau_module");
    DrinfeldModule<K> phi;
    if constexpr (std::is_same_v<K, XiFunc>) phi = build_drinfeld_xi(s);
    else phi = build_drinfeld_fq(s);
    at = characteristic_or(s, characteristic_and_height(phi).place);
    return localize_at_place(motive_matrix(phi), *at, N);
}

template <class K>
CommandResult filtration_for(const JobSpec& s) {
    const auto N = s.precision;
    std::optional<Place> at;
    const auto m = local_object<K>(s, s.tau_module ? N + working_precision<K>(N) : working_precision<K>(N) + 8, at);
    std::optional<std::vector<Rational>> hints;
    if (s.slope_hints) {
        hints.emplace();
        for (const auto& h : *s.slope_hints) hints->push_back(Rational::parse(h));
    }
    const auto steps = slope_filtration(m, working_precision<K>(N), hints);
    CommandResult r;
    json j;
    j["command"] = "filtration";
    j["q"] = s.q;
    j["precision"] = N;
    if (at) j["place"] = at->str();
    std::vector<Slope> slopes;
    for (const auto& st : steps) slopes.push_back(st.slope);
    j["slopes"] = slopes_json(slopes);
    j["polygon"] = vertices_json(NewtonPolygon(slopes).vertices());
    json js = json::array();
    r.table.header = {"step", "slope", "multiplicity", "n", "generators"};
    int done = 0;
    for (std::size_t i = 0; i < steps.size(); ++i) {
        const auto& st = steps[i];
        json x;
        x["slope"] = st.slope.slope.str();
        x["multiplicity"] = st.slope.multiplicity;
        x["n"] = st.n;
        json gens = json::array();
        std::string gtext;
        for (int c = done; c < st.basis.cols(); ++c) {
            json col = json::array();
            for (int row = 0; row < st.basis.rows(); ++row) {
                const auto e = st.basis(row, c).truncated(N).str("z");
                col.push_back(e);
                gtext += (row == 0 ? (gtext.empty() ? "[" : " [") : ", ") + e;
            }
            gtext += "]";
            gens.push_back(std::move(col));
        }
        done = st.basis.cols();
        x["generators"] = std::move(gens);
        js.push_back(std::move(x));
        r.table.rows.push_back({std::to_string(i + 1), st.slope.slope.str(), std::to_string(st.slope.multiplicity), std::to_string(st.n), gtext});
    }
    j["steps"] = std::move(js);
    r.json = dump_json(j);
    return r;
}

CommandResult cmd_factor(const JobSpec& s) {
    GeneratorName gname(s.base.var);
    const auto N = s.precision;
    auto src = char_source(s, N);
    std::optional<Place> fallback;
    if (src.analysis) fallback = src.analysis->characteristic.place;
    const Place at = characteristic_or(s, fallback);
    if (at.is_infinite() || at.degree() != 1) throw DomainError("field 'places': factor needs a degree-one finite place");
    const auto local = localize_charpoly(src.charpoly, at, N);
    const auto factors = slope_factorize(local, N, Rational(1, src.m));
    CommandResult r;
    json j;
    j["command"] = "factor";
    j["q"] = s.q;
    j["place"] = at.str();
    j["precision"] = N;
    j["charpoly"] = src.charpoly.str("X");
    json fs = json::array();
    r.table.header = {"slope", "degree", "factor"};
    LocalPoly product = LocalPoly::constant(local.lead().one_like());
    std::optional<int> unit_degree;
    for (const auto& f : factors) {
        json x;
        x["slope"] = f.slope.str();
        x["degree"] = f.factor.degree();
        std::vector<std::string> coeffs;
        for (const auto& c : f.factor.coeffs()) coeffs.push_back(c.truncated(N).str("z"));
        x["coefficients"] = coeffs;
        fs.push_back(std::move(x));
        if (f.slope == Rational(0)) unit_degree = f.factor.degree();
        r.table.rows.push_back({f.slope.str(), std::to_string(f.factor.degree()), f.factor.map([N](const Series<FqElem>& c) { return c.truncated(N); }).str("X")});
        product = product * f.factor;
    }
    bool remultiplies = product.degree() == local.degree();
    for (int i = 0; remultiplies && i <= local.degree(); ++i)
        remultiplies = (product.coeff(i) - local.coeff(i)).truncated(N).is_zero();
    j["factors"] = std::move(fs);
    j["remultiplies"] = remultiplies;
    j["unit_root_degree"] = unit_degree.value_or(0);
    r.assertions_failed += !remultiplies;
    if (src.analysis && src.analysis->characteristic.place && *src.analysis->characteristic.place == at) {
        const int expected = src.analysis->rank - *src.analysis->characteristic.height;
        j["expected_unit_root_degree"] = expected;
        r.assertions_failed += unit_degree.value_or(0) != expected;
    }
    r.json = dump_json(j);
    return r;
}

CommandResult cmd_drinfeld(const JobSpec& s) {
    if (!s.drinfeld) need("drinfeld");
    GeneratorName gname(s.base.var);
    const auto phi = build_drinfeld_fq(s);
    const auto an = analyze(phi, job_places(s), s.precision, true);
    CommandResult r;
    json j;
    j["command"] = "drinfeld";
    j["q"] = s.q;
    j["m"] = an.m;
    j["rank"] = an.rank;
    j["phi_t"] = phi.phi_t().str();
    j["characteristic"] = an.characteristic.place ? json(an.characteristic.place->str()) : json(nullptr);
    j["height"] = an.characteristic.height ? json(*an.characteristic.height) : json(nullptr);
    j["charpoly"] = an.charpoly.str("X");
    j["coefficients"] = coefficient_strings(an.charpoly);
    j["a_integral"] = an.a_integral;
    j["degree_bounds"] = an.degree_bounds;
    j["unit_root_degree"] = an.unit_root_degree ? json(*an.unit_root_degree) : json(nullptr);
    r.assertions_failed += !an.a_integral + !an.degree_bounds + an.mismatches();
    if (an.unit_root_degree && an.characteristic.height && *an.unit_root_degree != an.rank - *an.characteristic.height) ++r.assertions_failed;
    json pl = json::array();
    r.table.header = {"place", "observed", "predicted", "polygon", "match"};
    for (const auto& pa : an.places) {
        json x;
        x["place"] = pa.place.str();
        x["observed"] = slopes_json(pa.observed.slopes());
        x["polygon"] = vertices_json(pa.observed.vertices());
        x["predicted"] = slopes_json(pa.predicted.slopes());
        x["match"] = pa.match;
        pl.push_back(std::move(x));
        r.table.rows.push_back({pa.place.str(), slopes_text(pa.observed.slopes()), slopes_text(pa.predicted.slopes()),
                                vertices_text(pa.observed.vertices()), pa.match ? "yes" : "no"});
    }
    j["places"] = std::move(pl);
    r.json = dump_json(j);
    return r;
}

CommandResult cmd_compat(const JobSpec& s, int jobs) {
    if (!s.drinfeld) need("drinfeld");
    if (!xi_base(s)) throw DomainError("field 'base.kind': compat needs a poly_ring base F_q[xi]");
    XiName xname(s.base.var);
    const auto rep = run_compat_sweep(build_drinfeld_xi(s), job_places(s), s.degree_bound, s.precision, jobs);
    CommandResult r;
    r.json = compat_report_to_json(rep);
    r.assertions_failed = rep.assertion_failures;
    r.table.header = {"point", "deg", "status", "charpoly", "place", "observed", "predicted", "relation", "note"};
    for (const auto& p : rep.points) {
        if (p.status != "analyzed") {
            r.table.rows.push_back({p.point, std::to_string(p.degree), p.status, "", "", "", "", "", p.reason});
            continue;
        }
        for (const auto& pl : p.places)
            r.table.rows.push_back({p.point, std::to_string(p.degree), pl.status, p.charpoly, pl.place, slopes_text(pl.observed),
                                    slopes_text(pl.predicted), pl.relation, pl.reason});
    }
    return r;
}

}  // namespace

CommandResult run_command(const std::string& command, const std::string& job_json, int jobs) {
    const auto s = parse_job_spec(job_json);
    if (command == "charpoly") return cmd_charpoly(s);
    if (command == "newton") return cmd_newton(s);
    if (command == "factor") return cmd_factor(s);
    if (command == "drinfeld") return cmd_drinfeld(s);
    if (command == "compat") return cmd_compat(s, jobs);
    if (command == "slopes" || command == "filtration") {
        const bool filt = command == "filtration";
        if (xi_base(s)) {
            XiName xname(s.base.var);
            return filt ? filtration_for<XiFunc>(s) : slopes_for<XiFunc>(s);
        }
        GeneratorName gname(s.base.var);
        return filt ? filtration_for<FqElem>(s) : slopes_for<FqElem>(s);
    }
    throw ParseError("unknown command '" + command + "'");
}

std::string render_table(const Table& t) {
    std::vector<std::size_t> w(t.header.size(), 0);
    for (std::size_t c = 0; c < t.header.size(); ++c) w[c] = t.header[c].size();
    for (const auto& row : t.rows)
        for (std::size_t c = 0; c < row.size() && c < w.size(); ++c) w[c] = std::max(w[c], row[c].size());
    std::ostringstream os;
    auto line = [&](const std::vector<std::string>& row) {
        std::string out;
        for (std::size_t c = 0; c < w.size(); ++c) {
            std::string cell = c < row.size() ? row[c] : "";
            out += cell;
            if (c + 1 < w.size()) out += std::string(w[c] - cell.size() + 2, ' ');
        }
        while (!out.empty() && out.back() == ' ') out.pop_back();
        os << out << "\n";
    };
    line(t.header);
    std::vector<std::string> rule;
    for (auto x : w) rule.push_back(std::string(x, '-'));
    line(rule);
    for (const auto& row : t.rows) line(row);
    return os.str();
}

std::string render_csv(const Table& t) {
    auto cell = [](const std::string& s) {
        if (s.find_first_of(",\"\n") == std::string::npos) return s;
        std::string out = "\"";
        for (char c : s) {
            if (c == '"') out += '"';
            out += c;
        }
        return out + "\"";
    };
    std::ostringstream os;
    auto line = [&](const std::vector<std::string>& row) {
        for (std::size_t c = 0; c < row.size(); ++c) os << (c ? "," : "") << cell(row[c]);
        os << "\n";
    };
    line(t.header);
    for (const auto& row : t.rows) line(row);
    return os.str();
}

}  // namespace isoc
