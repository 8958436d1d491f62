#include "ellsurf/cli/manifest.hpp"

#include <cctype>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "ellsurf/expr.hpp"

namespace ellsurf::cli {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

std::string at_line(int line, const std::string& what) { return "line " + std::to_string(line) + ": " + what; }

// Strips a trailing comment that is not inside a string.
std::string strip_comment(const std::string& s) {
    bool quoted = false;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '"') quoted = !quoted;
        if (s[i] == '#' && !quoted) return s.substr(0, i);
    }
    return s;
}

std::string parse_value(const std::string& raw, int line) {
    if (raw.empty()) throw InputError(at_line(line, "missing value"));
    if (raw.front() == '"') {
        if (raw.size() < 2 || raw.back() != '"' || raw.find('"', 1) != raw.size() - 1)
            throw InputError(at_line(line, "unterminated or malformed string"));
        return raw.substr(1, raw.size() - 2);
    }
    std::size_t start = raw[0] == '-' ? 1 : 0;
    if (start == raw.size() || raw.find_first_not_of("0123456789", start) != std::string::npos)
        throw InputError(at_line(line, "value must be a quoted string or an integer: " + raw));
    return raw;
}

int parse_int(const RawEntry& e, int lo) {
    long v;
    try {
        std::size_t used = 0;
        v = std::stol(e.value, &used);
        if (used != e.value.size()) throw std::invalid_argument("");
    } catch (const std::exception&) {
        throw InputError(at_line(e.line, e.key + " must be an integer"));
    }
    if (v < lo || v > 1000000) throw InputError(at_line(e.line, e.key + " out of range"));
    return static_cast<int>(v);
}

struct CubicAlgebra {
    ConstantField k;
    const std::string& var;
    XFraction integer(const mpz_class& n) const { return XFraction(constant(k, mpq_class(n))); }
    XFraction variable(const std::string& name, std::size_t pos) const {
        if (name == "x") return XFraction::variable(constant(k, 0));
        if (name == var) return XFraction(coordinate(k));
        throw ParseError("unknown variable '" + name + "' (expected x or " + var + ")", pos);
    }
};

struct CurveAlgebra {
    const WeierstrassModel& E;
    const std::string& var;
    CurveFunction integer(const mpz_class& n) const { return CurveFunction::from_k(E, constant(E.field(), mpq_class(n))); }
    CurveFunction variable(const std::string& name, std::size_t pos) const {
        if (name == "x") return CurveFunction::x_coordinate(E);
        if (name == "y") return CurveFunction::y_coordinate(E);
        if (name == var) return CurveFunction::from_k(E, coordinate(E.field()));
        throw ParseError("unknown variable '" + name + "' (expected x, y or " + var + ")", pos);
    }
};

// Integer combination of named points, or a bare integer.
struct Combination {
    std::map<std::string, mpz_class> terms;
    std::optional<mpz_class> scalar;

    bool is_zero() const { return scalar && *scalar == 0; }
    Combination operator-() const {
        Combination r = *this;
        if (r.scalar) *r.scalar = -*r.scalar;
        for (auto& [n, c] : r.terms) c = -c;
        return r;
    }
    friend Combination operator+(const Combination& a, const Combination& b) {
        if (a.scalar || b.scalar) {
            if (!(a.scalar && b.scalar)) throw InputError("cannot add an integer to a point");
            return {{}, *a.scalar + *b.scalar};
        }
        Combination r = a;
        for (const auto& [n, c] : b.terms) r.terms[n] += c;
        return r;
    }
    friend Combination operator-(const Combination& a, const Combination& b) { return a + (-b); }
    friend Combination operator*(const Combination& a, const Combination& b) {
        if (a.scalar && b.scalar) return {{}, *a.scalar * *b.scalar};
        if (!a.scalar && !b.scalar) throw InputError("cannot multiply two points");
        const Combination& p = a.scalar ? b : a;
        const mpz_class& c = a.scalar ? *a.scalar : *b.scalar;
        Combination r = p;
        for (auto& [n, v] : r.terms) v *= c;
        return r;
    }
    friend Combination operator/(const Combination&, const Combination&) {
        throw InputError("division is not allowed in point combinations");
    }
    Combination pow(long) const { throw InputError("powers are not allowed in point combinations"); }
};

struct CombinationAlgebra {
    const std::vector<std::pair<std::string, CurvePoint>>& known;
    Combination integer(const mpz_class& n) const { return {{}, n}; }
    Combination variable(const std::string& name, std::size_t pos) const {
        if (name == "O") return {};
        for (const auto& [n, P] : known)
            if (n == name) return {{{name, 1}}, std::nullopt};
        throw ParseError("unknown point '" + name + "'", pos);
    }
};

// Splits "(a, b)" at its top-level comma.
std::optional<std::pair<std::string, std::string>> split_pair(const std::string& text) {
    std::string s = trim(text);
    if (s.size() < 2 || s.front() != '(' || s.back() != ')') return std::nullopt;
    int depth = 0;
    for (std::size_t i = 1; i + 1 < s.size(); ++i) {
        if (s[i] == '(') ++depth;
        if (s[i] == ')') --depth;
        if (s[i] == ',' && depth == 0) return std::make_pair(s.substr(1, i - 1), s.substr(i + 1, s.size() - i - 2));
    }
    return std::nullopt;
}

CurvePoint evaluate_point(const std::string& name, const std::string& text, const Manifest& m,
                          const WeierstrassModel& E, const std::vector<std::pair<std::string, CurvePoint>>& known) {
    if (auto xy = split_pair(text)) {
        CurvePoint P(parse_field_element(xy->first, m.field, m.variable), parse_field_element(xy->second, m.field, m.variable));
        if (!on_curve(E, P)) throw InputError("point not on curve: " + name);
        return P;
    }
    CombinationAlgebra alg{known};
    Combination c = evaluate<Combination>(parse_expression(text), alg);
    if (c.scalar) throw InputError("point " + name + " is an integer, not a point");
    CurvePoint R = CurvePoint::zero();
    for (const auto& [n, coeff] : c.terms) {
        if (!coeff.fits_slong_p()) throw InputError("coefficient too large in point " + name);
        for (const auto& [kn, P] : known)
            if (kn == n) R = add(E, R, scalar_mul(E, coeff.get_si(), P));
    }
    return R;
}

}  // namespace

std::vector<RawSection> parse_sections(const std::string& text) {
    std::vector<RawSection> out;
    std::istringstream in(text);
    std::string line;
    int number = 0;
    std::set<std::string> seen_sections;
    while (std::getline(in, line)) {
        ++number;
        std::string s = trim(strip_comment(line));
        if (s.empty()) continue;
        if (s.front() == '[') {
            if (s.back() != ']') throw InputError(at_line(number, "malformed section header"));
            std::string name = trim(s.substr(1, s.size() - 2));
            if (!seen_sections.insert(name).second) throw InputError(at_line(number, "duplicate section [" + name + "]"));
            out.push_back({name, {}});
            continue;
        }
        std::size_t eq = s.find('=');
        if (eq == std::string::npos) throw InputError(at_line(number, "expected key = value"));
        if (out.empty()) throw InputError(at_line(number, "entry outside of a section"));
        std::string key = trim(s.substr(0, eq));
        if (key.empty()) throw InputError(at_line(number, "empty key"));
        for (const auto& e : out.back().entries)
            if (e.key == key) throw InputError(at_line(number, "duplicate key " + key));
        out.back().entries.push_back({key, parse_value(trim(s.substr(eq + 1)), number), number});
    }
    return out;
}

const CurvePoint& Manifest::point(const std::string& name) const {
    for (const auto& [n, P] : points)
        if (n == name) return P;
    throw InputError("unknown point " + name);
}

PFOperator Manifest::pf_operator() const {
    if (!field.is_rationals()) throw InputError("Picard-Fuchs operators need characteristic 0");
    PFOperator L = [&] {
        if (!operator_text) return find_pf(*base_curve, pole_bound);
        const WeierstrassModel& B = *base_curve;
        PFOperator given{parse_field_element(operator_text->A, field, base_variable),
                         parse_field_element(operator_text->B, field, base_variable),
                         parse_field_element(operator_text->C, field, base_variable),
                         parse_curve_function(operator_text->F, B, base_variable), Derivation::standard(field)};
        if (given.A.is_zero()) throw InputError("operator coefficient A must be nonzero");
        if (!verify_pf(B, given)) throw HypothesisError("exactness of L(dx/y)", "L(dx/y) differs from dF for the given operator");
        return given;
    }();
    return cover ? pullback_pf(L, *cover) : L;
}

Manifest parse_manifest(const std::string& text) {
    Manifest m;
    std::map<std::string, const RawSection*> by_name;
    auto sections = parse_sections(text);
    for (const auto& s : sections) {
        if (s.name != "curve" && s.name != "cover" && s.name != "points" && s.name != "operator" && s.name != "parameters")
            throw InputError("unknown section [" + s.name + "]");
        by_name[s.name] = &s;
    }
    if (!by_name.count("curve")) throw InputError("missing [curve] section");

    m.base_variable = "t";
    long characteristic = 0;
    for (const auto& e : by_name["curve"]->entries) {
        if (e.key == "characteristic") characteristic = parse_int(e, 0);
        else if (e.key == "variable") m.base_variable = e.value;
        else if (e.key == "f") m.curve_text = e.value;
        else throw InputError(at_line(e.line, "unknown key " + e.key + " in [curve]"));
    }
    if (m.curve_text.empty()) throw InputError("missing f in [curve]");
    if (m.base_variable.empty() || !std::isalpha(static_cast<unsigned char>(m.base_variable[0])) || m.base_variable == "x" ||
        m.base_variable == "y")
        throw InputError("variable must be an identifier other than x and y");
    m.field = characteristic == 0 ? ConstantField::rationals() : ConstantField::prime(static_cast<std::uint32_t>(characteristic));

    CubicAlgebra alg{m.field, m.base_variable};
    XFraction f = evaluate<XFraction>(parse_expression(m.curve_text), alg);
    if (!f.is_polynomial()) throw InputError("f must be a polynomial in x");
    WeierstrassModel base = WeierstrassModel::from_cubic(f.num());

    m.variable = m.base_variable;
    if (by_name.count("cover")) {
        for (const auto& e : by_name["cover"]->entries) {
            if (e.key != m.variable)
                throw InputError(at_line(e.line, "cover step must substitute for " + m.variable + ", not " + e.key));
            auto vars = variables_of(parse_expression(e.value));
            if (vars.size() != 1) throw InputError(at_line(e.line, "cover step must be a rational function of one new variable"));
            if (vars[0] == "x" || vars[0] == "y") throw InputError(at_line(e.line, "x and y are reserved"));
            CoverMap step{parse_field_element(e.value, m.field, vars[0])};
            m.cover = m.cover ? m.cover->then(step) : step;
            m.cover_steps.emplace_back(e.key, e.value);
            m.variable = vars[0];
        }
    }
    WeierstrassModel over = m.cover ? base.pullback(*m.cover) : base;

    if (by_name.count("points")) {
        std::vector<std::pair<std::string, CurvePoint>> raw;
        for (const auto& e : by_name["points"]->entries) {
            if (e.key == "O") throw InputError(at_line(e.line, "O names the zero point"));
            m.point_texts.emplace_back(e.key, e.value);
            raw.emplace_back(e.key, evaluate_point(e.key, e.value, m, over, raw));
        }
        for (auto& [n, P] : raw) m.points.emplace_back(n, m.field.is_rationals() ? P : to_depressed(over, P));
    }

    if (by_name.count("operator")) {
        OperatorSpec op;
        std::set<std::string> got;
        for (const auto& e : by_name["operator"]->entries) {
            if (e.key == "A") op.A = e.value;
            else if (e.key == "B") op.B = e.value;
            else if (e.key == "C") op.C = e.value;
            else if (e.key == "F") op.F = e.value;
            else throw InputError(at_line(e.line, "unknown key " + e.key + " in [operator]"));
            got.insert(e.key);
        }
        if (got.size() != 4) throw InputError("[operator] needs A, B, C and F");
        m.operator_text = op;
    }

    if (by_name.count("parameters")) {
        for (const auto& e : by_name["parameters"]->entries) {
            if (e.key == "n_max") m.n_max = parse_int(e, 1);
            else if (e.key == "pole_bound") m.pole_bound = parse_int(e, 0);
            else throw InputError(at_line(e.line, "unknown key " + e.key + " in [parameters]"));
        }
    }

    m.depressed = !m.field.is_rationals() && !base.is_short();
    m.base_curve = m.field.is_rationals() ? base : base.depressed();
    m.curve = m.field.is_rationals() ? over : over.depressed();
    return m;
}

Manifest load_manifest(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot read manifest " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_manifest(buf.str());
}

CurveFunction parse_curve_function(const std::string& text, const WeierstrassModel& E, const std::string& var) {
    CurveAlgebra alg{E, var};
    try {
        return evaluate<CurveFunction>(parse_expression(text), alg);
    } catch (const DivisionByZero&) {
        throw InputError("division by zero in '" + text + "'");
    }
}

std::string format_curve_function(const CurveFunction& g, const std::string& var) {
    std::string even = g.r1().is_zero() ? "" : format_fraction_over_field(g.r1(), var, "x");
    if (g.r2().is_zero()) return even.empty() ? "0" : even;
    std::string odd = "y*(" + format_fraction_over_field(g.r2(), var, "x") + ")";
    return even.empty() ? odd : even + " + " + odd;
}

std::string format_point(const CurvePoint& P, const std::string& var) {
    if (P.is_zero()) return "O";
    return "(" + format_field_element(P.x(), var) + ", " + format_field_element(P.y(), var) + ")";
}

}  // namespace ellsurf::cli
