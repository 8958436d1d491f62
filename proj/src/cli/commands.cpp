#include "ellsurf/cli/commands.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "ellsurf/expr.hpp"
#include "ellsurf/pdescent.hpp"

namespace ellsurf::cli {

namespace {

struct Context {
    const Manifest& m;
    const Options& opt;
    json results = json::object();
    json checks = json::array();

    std::string str(const FieldElement& f) const { return format_field_element(f, m.variable); }
    int n_max() const { return opt.n_max.value_or(m.n_max); }
    int pole_bound() const { return opt.pole_bound.value_or(m.pole_bound); }

    void check(const std::string& name, bool pass, const std::string& detail) {
        checks.push_back({{"name", name}, {"pass", pass}, {"detail", detail}});
    }

    std::vector<std::pair<std::string, CurvePoint>> selected_points() const {
        if (opt.point) return {{*opt.point, m.point(*opt.point)}};
        if (m.points.empty()) throw InputError("this command needs at least one point in [points]");
        return m.points;
    }
};

json inputs_json(const Manifest& m, const Options& opt) {
    json in = {{"characteristic", m.field.characteristic()},
               {"base_variable", m.base_variable},
               {"variable", m.variable},
               {"curve", m.curve_text},
               {"depressed", m.depressed},
               {"n_max", opt.n_max.value_or(m.n_max)},
               {"pole_bound", opt.pole_bound.value_or(m.pole_bound)}};
    json cover = json::array();
    for (const auto& [v, e] : m.cover_steps) cover.push_back({{"variable", v}, {"substitution", e}});
    in["cover"] = cover;
    json points = json::object();
    for (const auto& [n, t] : m.point_texts) points[n] = t;
    in["points"] = points;
    if (m.operator_text)
        in["operator"] = {{"A", m.operator_text->A}, {"B", m.operator_text->B}, {"C", m.operator_text->C}, {"F", m.operator_text->F}};
    return in;
}

std::string frame_name(OmegaFrame f) { return f == OmegaFrame::Differential ? "dx/y" : "dx/2y"; }

json places_json(const std::vector<Place>& ps, const std::string& var) {
    json a = json::array();
    for (const auto& v : ps) a.push_back(place_json(v, var));
    return a;
}

void degree_check(Context& c, const std::string& what, const DivisorReport& d) {
    c.check(what + " degree identity", d.identity_holds(),
            "degree " + std::to_string(d.degree) + ", expected " + std::to_string(d.expected_degree));
}

json operator_json(const Context& c, const PFOperator& L) {
    return {{"A", c.str(L.A)}, {"B", c.str(L.B)}, {"C", c.str(L.C)}, {"F", format_curve_function(L.F, c.m.variable)},
            {"derivation", (L.delta.scale.is_one() ? "" : "(" + c.str(L.delta.scale) + ")*") + "d/d" + c.m.variable}};
}

void cmd_invariants(Context& c) {
    const WeierstrassModel& E = c.m.E();
    json bad = json::array();
    for (const auto& [v, type] : bad_places(E)) {
        json row = place_json(v, c.m.variable);
        row["type"] = type.to_string();
        row["ord_disc_min"] = minimal_model_at(E, v).ord_disc;
        bad.push_back(row);
    }
    int d = deg_omega(E);
    c.results = {{"model", {{"c2", c.str(E.c2())}, {"c1", c.str(E.c1())}, {"c0", c.str(E.c0())}}},
                 {"a4", c.str(E.a4())},
                 {"a6", c.str(E.a6())},
                 {"discriminant", c.str(E.discriminant())},
                 {"j", c.str(E.j_invariant())},
                 {"deg_omega", d},
                 {"bad_places", bad},
                 {"delta", bad_place_count(E)},
                 {"semistable", is_semistable(E)}};
    FieldElement a4 = E.a4(), a6 = E.a6();
    const ConstantField k = E.field();
    c.check("discriminant = -16(4 a4^3 + 27 a6^2)",
            E.discriminant() == constant(k, -16) * (constant(k, 4) * a4 * a4 * a4 + constant(k, 27) * a6 * a6), "");
    long total = 0;
    for (const auto& row : bad) total += row["degree"].get<long>() * row["ord_disc_min"].get<long>();
    c.check("minimal discriminant degree = 12 deg omega", total == 12L * d, std::to_string(total) + " = 12*" + std::to_string(d));
}

void cmd_lambda(Context& c) {
    GradedSection lam = lambda_section(c.m.E());
    HasseData h = hasse_data(c.m.E());
    DivisorReport D = divisor(lam);
    c.results = {{"lambda", section_json(lam, c.m.variable)}, {"hasse_A", c.str(h.A)}};
    degree_check(c, "lambda", D);
}

void cmd_mu(Context& c) {
    for (const auto& [name, P] : c.selected_points()) {
        FieldElement m = mu(c.m.E(), P);
        c.results[name] = {{"point", format_point(P, c.m.variable)}, {"mu", c.str(m)}};
        const long p = static_cast<long>(c.m.field.characteristic());
        c.check("mu(" + std::to_string(p) + "*" + name + ") = 0", mu(c.m.E(), scalar_mul(c.m.E(), p, P)).is_zero(), "");
    }
}

void cmd_nu(Context& c) {
    for (const auto& [name, P] : c.selected_points()) {
        GradedSection s = nu(c.m.E(), P);
        c.results[name] = {{"point", format_point(P, c.m.variable)}, {"nu", section_json(s, c.m.variable)}};
        if (!s.is_zero()) degree_check(c, "nu(" + name + ")", divisor(s));
    }
}

json hit_json(const Context& c, const TangencyHit& h) {
    json j = place_json(h.place, c.m.variable);
    j["n"] = h.n;
    j["iota"] = h.iota;
    j["ord_nu"] = h.ord_nu;
    j["refined_bound"] = h.refined_bound;
    j["refined_holds"] = h.refined_holds;
    return j;
}

void cmd_descent_bound(Context& c) {
    for (const auto& [name, P] : c.selected_points()) {
        CharPBoundReport r = bound_report_charp(c.m.E(), P, c.n_max());
        const std::string& var = c.m.variable;
        json orders = json::array();
        for (const auto& co : r.descent.component_orders) {
            json j = place_json(co.place, var);
            j["type"] = co.type.to_string();
            j["order"] = co.order;
            orders.push_back(j);
        }
        json hits = json::array();
        for (const auto& h : r.hits) hits.push_back(hit_json(c, h));
        json out = {{"p", r.p},
                    {"genus", r.genus},
                    {"d", r.d},
                    {"delta", r.delta},
                    {"bound", r.bound},
                    {"torsion", r.torsion},
                    {"D0", divisor_json(r.descent.D0, var)},
                    {"Dinf", divisor_json(r.descent.Dinf, var)},
                    {"Dprime", divisor_json(r.descent.Dprime, var)},
                    {"D", divisor_json(r.descent.D, var)},
                    {"component_orders", orders},
                    {"membership_holds", r.membership_holds},
                    {"membership_failures", places_json(r.membership_failures, var)},
                    {"hits", hits},
                    {"T", places_json(r.T, var)},
                    {"T_s", places_json(r.T_s, var)},
                    {"T_o", places_json(r.T_o, var)},
                    {"weighted", r.weighted},
                    {"bound_holds", r.bound_holds},
                    {"n_max", r.n_max},
                    {"scanned", r.scanned},
                    {"not_scanned", "multiples n > " + std::to_string(r.n_max) + " and multiples divisible by p"}};
        if (!r.torsion) out["nu_divisor"] = divisor_json(r.nu_divisor, var);
        c.results[name] = out;
        if (r.torsion) {
            c.check(name + " is not in pE(K)", false, "nu vanishes; no tangency data");
            continue;
        }
        c.check(name + ": ord nu >= -ord D everywhere", r.membership_holds, std::to_string(r.membership_failures.size()) + " failures");
        c.check(name + ": |T_o| + p|T_s| <= p(2g-2-d) + (p-1)delta", r.bound_holds,
                std::to_string(r.weighted) + " <= " + std::to_string(r.bound));
        for (const auto& h : r.hits)
            c.check(name + ": refined bound at n = " + std::to_string(h.n) + ", " + h.place.to_string(var), h.refined_holds,
                    std::to_string(h.ord_nu) + " >= " + std::to_string(h.refined_bound));
        degree_check(c, "nu(" + name + ")", r.nu_divisor);
    }
}

void cmd_check_tau(Context& c) {
    json rows = json::array();
    for (const auto& r : check_lemma_tau(c.m.E())) {
        json j = place_json(r.place, c.m.variable);
        j["type"] = r.type.to_string();
        j["ell"] = r.ell;
        j["expectation"] = r.expectation;
        j["pass"] = r.pass;
        rows.push_back(j);
        c.check("lambda table at " + r.place.to_string(c.m.variable), r.pass,
                r.type.to_string() + ": ell = " + std::to_string(r.ell) + ", expected " + r.expectation);
    }
    c.results = {{"rows", rows}, {"p", c.m.field.characteristic()}};
}

void cmd_verify_pf(Context& c) {
    if (!c.m.operator_text) throw InputError("verify-pf needs an [operator] section");
    if (!c.m.field.is_rationals()) throw InputError("Picard-Fuchs operators need characteristic 0");
    const Manifest& m = c.m;
    const WeierstrassModel& B = *m.base_curve;
    PFOperator L{parse_field_element(m.operator_text->A, m.field, m.base_variable),
                 parse_field_element(m.operator_text->B, m.field, m.base_variable),
                 parse_field_element(m.operator_text->C, m.field, m.base_variable),
                 parse_curve_function(m.operator_text->F, B, m.base_variable), Derivation::standard(m.field)};
    bool base_ok = verify_pf(B, L);
    bool ok = base_ok;
    json out = {{"verified_base", base_ok}};
    if (m.cover) {
        PFOperator Lu = pullback_pf(L, *m.cover);
        bool cover_ok = verify_pf(m.E(), Lu);
        out["verified_after_cover"] = cover_ok;
        out["operator"] = operator_json(c, Lu);
        ok = ok && cover_ok;
    }
    out["verified"] = ok;
    c.results = out;
    c.check("L(dx/y) = dF", ok, "");
}

void cmd_find_pf(Context& c) {
    PFOperator L = find_pf(c.m.E(), c.pole_bound());
    c.results = {{"operator", operator_json(c, L)}};
    c.check("L(dx/y) = dF", verify_pf(c.m.E(), L), "");
}

void cmd_manin(Context& c) {
    PFOperator L = c.m.pf_operator();
    c.results["operator"] = operator_json(c, L);
    for (const auto& [name, P] : c.selected_points()) {
        FieldElement M = manin_M(c.m.E(), L, P);
        GradedSection s = manin_section(c.m.E(), L, P);
        json out = {{"point", format_point(P, c.m.variable)}, {"M", c.str(M)}, {"section", section_json(s, c.m.variable)}};
        c.results[name] = out;
        if (!s.is_zero()) {
            DivisorReport D = divisor(s);
            degree_check(c, "M(" + name + ")", D);
            c.check("M(" + name + ") degree = -4 - deg omega", D.degree == -4 - deg_omega(c.m.E()), std::to_string(D.degree));
        }
    }
}

json exceptional_json(const Context& c, const ExceptionalSet& S) {
    json places = json::array();
    for (const auto& e : S.places) {
        json j = place_json(e.place, c.m.variable);
        j["reason"] = to_string(e.reason);
        places.push_back(j);
    }
    return {{"places", places}, {"size", S.size}};
}

void cmd_exceptional_set(Context& c) { c.results = exceptional_json(c, exceptional_set(c.m.E())); }

void cmd_tangency(Context& c) {
    PFOperator L = c.m.pf_operator();
    const std::string& var = c.m.variable;
    for (const auto& [name, P] : c.selected_points()) {
        TangencyReport r = tangency_report(c.m.E(), L, P);
        json out = {{"point", format_point(P, var)}, {"torsion", r.torsion}, {"S", exceptional_json(c, r.S)},
                    {"genus", r.genus}, {"d", r.d}, {"bound", r.bound}};
        if (r.torsion) {
            c.results[name] = out;
            c.check(name + " has infinite order", false, "M vanishes; no tangency data");
            continue;
        }
        json rows = json::array(), T = json::array();
        for (const auto& row : r.rows) {
            json j = place_json(row.place, var);
            j["J"] = row.J;
            j["in_S"] = row.in_S;
            j["pass"] = row.pass;
            if (!row.in_S) j["I"] = row.J + 2;
            rows.push_back(j);
            if (!row.in_S && row.J > 0) T.push_back(j);
        }
        out["section"] = section_json(*r.section, var);
        out["divisor"] = divisor_json(r.divisor, var);
        out["rows"] = rows;
        out["T"] = T;
        out["sum_off_S"] = r.sum_off_S;
        out["local_bounds_hold"] = r.local_bounds_hold;
        out["bound_holds"] = r.bound_holds;
        c.results[name] = out;
        c.check(name + ": J >= 0 off S and J >= -1 on S", r.local_bounds_hold, "");
        c.check(name + ": sum of J off S <= 4g - 4 - d + |S|", r.bound_holds,
                std::to_string(r.sum_off_S) + " <= " + std::to_string(r.bound));
        degree_check(c, "M(" + name + ")", r.divisor);
    }
}

const std::map<std::string, std::function<void(Context&)>>& table() {
    static const std::map<std::string, std::function<void(Context&)>> t = {
        {"invariants", cmd_invariants},       {"lambda", cmd_lambda},       {"mu", cmd_mu},
        {"nu", cmd_nu},                       {"descent-bound", cmd_descent_bound}, {"check-tau", cmd_check_tau},
        {"verify-pf", cmd_verify_pf},         {"find-pf", cmd_find_pf},     {"manin", cmd_manin},
        {"exceptional-set", cmd_exceptional_set}, {"tangency", cmd_tangency},
    };
    return t;
}

Outcome failure(const std::string& command, const std::string& kind, const std::string& message, int code,
                const std::string& hypothesis = "") {
    json err = {{"kind", kind}, {"message", message}};
    if (!hypothesis.empty()) err["hypothesis"] = hypothesis;
    return {{{"command", command}, {"error", err}}, code};
}

template <class Body>
Outcome guarded(const std::string& command, Body body) {
    try {
        return body();
    } catch (const ParseError& e) {
        return failure(command, "parse-error", e.what(), kInputError);
    } catch (const InputError& e) {
        return failure(command, "input-error", e.what(), kInputError);
    } catch (const HypothesisError& e) {
        return failure(command, "hypothesis-failure", e.what(), kHypothesisFailure, e.hypothesis());
    } catch (const NotFound& e) {
        return failure(command, "not-found", e.what(), kHypothesisFailure);
    } catch (const DivisionByZero& e) {
        return failure(command, "division-by-zero", e.what(), kInputError);
    } catch (const std::exception& e) {
        return failure(command, "error", e.what(), kHypothesisFailure);
    }
}

void render(std::ostringstream& out, const json& j, int indent);

std::string scalar_text(const json& j) {
    if (j.is_string()) return j.get<std::string>();
    if (j.is_boolean()) return j.get<bool>() ? "yes" : "no";
    return j.dump();
}

bool is_flat_object(const json& j) {
    return j.is_object() && std::all_of(j.begin(), j.end(), [](const json& v) { return v.is_primitive(); });
}

// Arrays of flat objects print as aligned columns.
void render_rows(std::ostringstream& out, const json& rows, int indent) {
    std::vector<std::string> cols;
    for (const auto& r : rows)
        for (auto it = r.begin(); it != r.end(); ++it)
            if (std::find(cols.begin(), cols.end(), it.key()) == cols.end()) cols.push_back(it.key());
    std::vector<std::size_t> width;
    for (const auto& c : cols) {
        std::size_t w = c.size();
        for (const auto& r : rows)
            if (r.contains(c)) w = std::max(w, scalar_text(r[c]).size());
        width.push_back(w);
    }
    auto line = [&](const std::function<std::string(std::size_t)>& cell) {
        out << std::string(static_cast<std::size_t>(indent), ' ');
        for (std::size_t i = 0; i < cols.size(); ++i) {
            std::string s = cell(i);
            out << s << std::string(width[i] - s.size() + (i + 1 < cols.size() ? 2 : 0), ' ');
        }
        out << '\n';
    };
    line([&](std::size_t i) { return cols[i]; });
    for (const auto& r : rows) line([&](std::size_t i) { return r.contains(cols[i]) ? scalar_text(r[cols[i]]) : std::string("-"); });
}

void render(std::ostringstream& out, const json& j, int indent) {
    const std::string pad(static_cast<std::size_t>(indent), ' ');
    for (auto it = j.begin(); it != j.end(); ++it) {
        const json& v = it.value();
        if (v.is_primitive()) {
            out << pad << it.key() << ": " << scalar_text(v) << '\n';
        } else if (v.is_array() && (v.empty() || std::all_of(v.begin(), v.end(), [](const json& e) { return e.is_primitive(); }))) {
            std::string items;
            for (const auto& e : v) items += (items.empty() ? "" : ", ") + scalar_text(e);
            out << pad << it.key() << ": [" << items << "]\n";
        } else if (v.is_array() && std::all_of(v.begin(), v.end(), is_flat_object)) {
            out << pad << it.key() << ":\n";
            render_rows(out, v, indent + 2);
        } else if (v.is_array()) {
            out << pad << it.key() << ":\n";
            for (const auto& e : v) {
                out << pad << "  -\n";
                render(out, e, indent + 4);
            }
        } else {
            out << pad << it.key() << ":\n";
            render(out, v, indent + 2);
        }
    }
}

}  // namespace

const std::vector<std::string>& command_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> n;
        for (const auto& [k, f] : table()) n.push_back(k);
        return n;
    }();
    return names;
}

Outcome run(const std::string& command, const std::string& manifest_text, const Options& options) {
    auto it = table().find(command);
    if (it == table().end()) return failure(command, "input-error", "unknown command " + command, kInputError);
    return guarded(command, [&] {
        Manifest m = parse_manifest(manifest_text);
        Context c{m, options};
        it->second(c);
        bool all_pass = std::all_of(c.checks.begin(), c.checks.end(), [](const json& ch) { return ch["pass"].get<bool>(); });
        json doc = {{"command", command}, {"inputs", inputs_json(m, options)}, {"results", c.results}, {"checks", c.checks}};
        return Outcome{doc, all_pass ? kSuccess : kHypothesisFailure};
    });
}

Outcome run_file(const std::string& command, const std::string& path, const Options& options) {
    std::ifstream in(path);
    if (!in) return failure(command, "input-error", "cannot read manifest " + path, kInputError);
    std::ostringstream buf;
    buf << in.rdbuf();
    return run(command, buf.str(), options);
}

std::string to_json_text(const json& doc) { return doc.dump(2) + "\n"; }

std::string to_table(const json& doc) {
    std::ostringstream out;
    render(out, doc, 0);
    return out.str();
}

json place_json(const Place& v, const std::string& var) {
    return {{"place", v.is_infinite() ? "inf" : format_polynomial(v.polynomial(), var)}, {"degree", v.degree()}};
}

json divisor_json(const DivisorReport& d, const std::string& var) {
    json entries = json::array();
    for (const auto& e : d.entries) {
        json j = place_json(e.place, var);
        j["ord"] = e.ord;
        entries.push_back(j);
    }
    return {{"entries", entries}, {"degree", d.degree}, {"expected_degree", d.expected_degree}};
}

json section_json(const GradedSection& s, const std::string& var) {
    json j = {{"value", format_field_element(s.value, var)},
              {"weight", s.weight},
              {"diff_degree", s.diff_degree},
              {"frame", frame_name(s.frame)},
              {"zero", s.is_zero()}};
    if (!s.is_zero()) j["divisor"] = divisor_json(divisor(s), var);
    return j;
}

}  // namespace ellsurf::cli
