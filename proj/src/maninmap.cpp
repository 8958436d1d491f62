#include "ellsurf/maninmap.hpp"

#include <algorithm>
#include <set>

#include "ellsurf/error.hpp"

namespace ellsurf {

namespace {

using Matrix = std::vector<std::vector<FieldElement>>;

// Row-reduces m in place; returns the pivot column of each nonzero row.
std::vector<std::size_t> row_reduce(Matrix& m) {
    std::vector<std::size_t> pivots;
    if (m.empty()) return pivots;
    const std::size_t rows = m.size(), cols = m.front().size();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t piv = r;
        while (piv < rows && m[piv][c].is_zero()) ++piv;
        if (piv == rows) continue;
        std::swap(m[r], m[piv]);
        FieldElement inv = m[r][c].inverse();
        for (auto& e : m[r]) e *= inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || m[i][c].is_zero()) continue;
            FieldElement factor = m[i][c];
            for (std::size_t j = c; j < cols; ++j) m[i][j] -= factor * m[r][j];
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

std::vector<std::vector<FieldElement>> kernel(Matrix m, const FieldElement& zero) {
    const std::size_t cols = m.front().size();
    std::vector<std::size_t> pivots = row_reduce(m);
    std::vector<std::vector<FieldElement>> basis;
    for (std::size_t free = 0; free < cols; ++free) {
        if (std::find(pivots.begin(), pivots.end(), free) != pivots.end()) continue;
        std::vector<FieldElement> v(cols, zero);
        v[free] = zero.one_like();
        for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -m[i][free];
        basis.push_back(std::move(v));
    }
    return basis;
}

XPoly apply_to_coeffs(const XPoly& f, const Derivation& delta) {
    return f.map_coeffs([&](const FieldElement& c) { return delta(c); });
}

// Columns of the exactness system: numerator pieces multiplying A, B, C.
struct Numerators {
    XPoly a, b, c;
};

Numerators numerators(const WeierstrassModel& E, const Derivation& delta) {
    const ConstantField k = E.field();
    XPoly f = E.cubic();
    XPoly df = apply_to_coeffs(f, delta);
    XPoly d2f = apply_to_coeffs(df, delta);
    FieldElement quarter = constant(k, mpq_class(1, 4)), half = constant(k, mpq_class(1, 2));
    XPoly a = (f * d2f * constant(k, -2) + df * df * constant(k, 3)) * quarter;
    XPoly b = f * df * (-half);
    return {a, b, f * f};
}

// H'f - (3/2) H f' for H = x^i.
XPoly witness_image(const XPoly& f, int i) {
    const FieldElement one = f.lc().one_like();
    XPoly xi = XPoly::monomial(one, i);
    XPoly dxi = xi.derivative();
    return dxi * f - xi * f.derivative() * constant(field_of(one), mpq_class(3, 2));
}

constexpr int kWitnessDegree = 4;

void fill_column(Matrix& m, std::size_t col, const XPoly& p) {
    for (std::size_t row = 0; row < m.size(); ++row) m[row][col] = p.coeff(static_cast<int>(row));
}

CurveFunction witness_from(const WeierstrassModel& E, const std::vector<FieldElement>& h) {
    XPoly H(h, E.c0());
    XPoly f = E.cubic();
    return CurveFunction(E, XFraction(XPoly(E.c0().zero_like())), XFraction(H, f * f));
}

void require_char0(const WeierstrassModel& E) {
    if (!E.field().is_rationals()) throw InputError("this operation needs characteristic 0 (constant field Q)");
}

}  // namespace

CurveFunction pf_form(const WeierstrassModel& E, const FieldElement& A, const FieldElement& B, const FieldElement& C,
                      const Derivation& delta) {
    // With 1/y = y/f every term is y times a rational function of x: the result is y N/f^3.
    Numerators n = numerators(E, delta);
    XPoly N = n.a * A + n.b * B + n.c * C;
    XPoly f = E.cubic();
    return CurveFunction(E, XFraction(XPoly(E.c0().zero_like())), XFraction(N, f * f * f));
}

bool verify_pf(const WeierstrassModel& E, const PFOperator& L) {
    if (L.A.is_zero()) return false;
    return pf_form(E, L.A, L.B, L.C, L.delta) == L.F.d_dx();
}

std::optional<CurveFunction> find_witness(const WeierstrassModel& E, const FieldElement& A, const FieldElement& B,
                                          const FieldElement& C, const Derivation& delta) {
    Numerators n = numerators(E, delta);
    XPoly rhs = n.a * A + n.b * B + n.c * C;
    XPoly f = E.cubic();
    const FieldElement zero = E.c0().zero_like();
    Matrix m(7, std::vector<FieldElement>(kWitnessDegree + 2, zero));
    for (int i = 0; i <= kWitnessDegree; ++i) fill_column(m, static_cast<std::size_t>(i), witness_image(f, i));
    fill_column(m, kWitnessDegree + 1, rhs);
    std::vector<std::size_t> pivots = row_reduce(m);
    if (!pivots.empty() && pivots.back() == kWitnessDegree + 1) return std::nullopt;
    std::vector<FieldElement> h(kWitnessDegree + 1, zero);
    for (std::size_t i = 0; i < pivots.size(); ++i) h[pivots[i]] = m[i][kWitnessDegree + 1];
    XPoly lhs(E.c0().zero_like());
    for (int i = 0; i <= kWitnessDegree; ++i) lhs += witness_image(f, i) * h[static_cast<std::size_t>(i)];
    if (!(lhs == rhs)) return std::nullopt;
    return witness_from(E, h);
}

PFOperator find_pf(const WeierstrassModel& E, int pole_bound) {
    require_char0(E);
    const Derivation delta = Derivation::standard(E.field());
    Numerators n = numerators(E, delta);
    XPoly f = E.cubic();
    const FieldElement zero = E.c0().zero_like();
    Matrix m(7, std::vector<FieldElement>(3 + kWitnessDegree + 1, zero));
    fill_column(m, 0, n.a);
    fill_column(m, 1, n.b);
    fill_column(m, 2, n.c);
    for (int i = 0; i <= kWitnessDegree; ++i) fill_column(m, static_cast<std::size_t>(3 + i), -witness_image(f, i));
    auto basis = kernel(m, zero);
    if (basis.size() != 1)
        throw NotFound("no unique Picard-Fuchs operator: solution space has dimension " + std::to_string(basis.size()) +
                       " (isotrivial or degenerate family)");
    std::vector<FieldElement> v = basis.front();
    if (v[0].is_zero()) throw NotFound("the exactness system only admits operators with A = 0 (isotrivial family)");
    // Clear denominators of A, B, C, remove their common factor, make A monic.
    Polynomial l = v[0].den();
    for (int i = 1; i < 3; ++i) l = exact_div(l * v[i].den(), gcd(l, v[i].den()));
    Polynomial g = (v[0] * FieldElement(l)).num();
    for (int i = 1; i < 3; ++i)
        if (!v[i].is_zero()) g = gcd(g, (v[i] * FieldElement(l)).num());
    FieldElement scale = FieldElement(l) / FieldElement(g);
    scale = scale / FieldElement((v[0] * scale).num().lc());
    for (auto& e : v) e *= scale;
    for (int i = 0; i < 3; ++i)
        if (v[i].num().degree() > pole_bound)
            throw NotFound("Picard-Fuchs coefficients have degree " + std::to_string(v[i].num().degree()) + " > pole bound " +
                           std::to_string(pole_bound));
    PFOperator L{v[0], v[1], v[2], witness_from(E, std::vector<FieldElement>(v.begin() + 3, v.end())), delta};
    if (!verify_pf(E, L)) throw Error("solved Picard-Fuchs operator failed verification");
    return L;
}

PFOperator change_derivation(const PFOperator& L, const Derivation& delta) {
    FieldElement g = delta.scale / L.delta.scale;
    FieldElement g2 = g * g;
    return PFOperator{L.A / g2, L.B / g - L.A * L.delta(g) / g2, L.C, L.F, delta};
}

PFOperator pullback_pf(const PFOperator& L, const CoverMap& phi) {
    PFOperator base = change_derivation(L, Derivation::standard(field_of(L.A)));
    FieldElement r1 = phi.image.derivative();
    if (r1.is_zero()) throw HypothesisError("separable cover", "the substitution has zero derivative");
    FieldElement r2 = r1.derivative();
    FieldElement A = pullback(phi, base.A), B = pullback(phi, base.B), C = pullback(phi, base.C);
    return PFOperator{A / (r1 * r1), B / r1 - A * r2 / (r1 * r1 * r1), C, base.F.pullback(phi),
                      Derivation::standard(field_of(phi.image))};
}

PFOperator pf_for_scaled_model(const WeierstrassModel& E, const PFOperator& L, const FieldElement& u) {
    // dx'/y' = v dx/y with v = 1/u; choose L' with L'(v w) = v L(w).
    FieldElement v = u.inverse();
    FieldElement dv = L.delta(v), d2v = L.delta(dv);
    FieldElement B = L.B - constant(E.field(), 2) * L.A * dv / v;
    FieldElement C = L.C - (L.A * d2v + B * dv) / v;
    WeierstrassModel Es = E.scaled(u);
    auto F = find_witness(Es, L.A, B, C, L.delta);
    if (!F) throw Error("transported operator has no exactness witness");
    return PFOperator{L.A, B, C, *F, L.delta};
}

FieldElement manin_M(const WeierstrassModel& E, const PFOperator& L, const CurvePoint& P) {
    require_char0(E);
    const ConstantField k = E.field();
    if (P.is_zero()) return constant(k, 0);
    if (!on_curve(E, P)) throw InputError("point not on curve");
    if (P.y().is_zero()) return constant(k, 0);
    const FieldElement& x = P.x();
    const FieldElement& y = P.y();
    FieldElement xp = L.delta(x);
    FieldElement dfP = apply_to_coeffs(E.cubic(), L.delta)(x);
    FieldElement q = xp / y;
    FieldElement term = -(xp * dfP) / (constant(k, 2) * y * y * y) + L.delta(q);
    return L.F.at(P) - value_at_O(L.F) + L.A * term + L.B * q;
}

GradedSection manin_section(const WeierstrassModel& E, const PFOperator& L, const CurvePoint& P) {
    FieldElement M = manin_M(E, L, P);
    FieldElement a = L.delta.scale;
    return GradedSection{M / (L.A * a * a), -1, 2, E, OmegaFrame::Differential};
}

std::string to_string(ExceptionalReason r) {
    switch (r) {
        case ExceptionalReason::BadReduction: return "bad-reduction";
        case ExceptionalReason::DjVanishes: return "dj-vanishes";
        case ExceptionalReason::JZeroExcess: return "j=0-excess";
        case ExceptionalReason::J1728Excess: return "j=1728-excess";
    }
    return "?";
}

bool ExceptionalSet::contains(const Place& v) const {
    return std::any_of(places.begin(), places.end(), [&](const ExceptionalPlace& e) { return e.place == v; });
}

ExceptionalSet exceptional_set(const WeierstrassModel& E) {
    const ConstantField k = E.field();
    FieldElement j = E.j_invariant();
    FieldElement dj = j.derivative();
    if (dj.is_zero()) throw HypothesisError("non-isotrivial family", "j is constant");
    FieldElement j1728 = j - constant(k, 1728);
    std::set<Place> cand;
    for (const auto& v : model_candidate_places(E)) cand.insert(v);
    for (const auto& v : candidate_places({j, dj, j1728})) cand.insert(v);
    std::set<Place> bad;
    for (const auto& [v, type] : bad_places(E)) bad.insert(v);
    ExceptionalSet S;
    for (const auto& v : cand) {
        std::optional<ExceptionalReason> reason;
        if (bad.count(v)) {
            reason = ExceptionalReason::BadReduction;
        } else {
            int od = ord_differential({dj}, v);
            if (ord_at(j, v) > 0) {
                if (od > 2) reason = ExceptionalReason::JZeroExcess;
            } else if (ord_at(j1728, v) > 0) {
                if (od > 1) reason = ExceptionalReason::J1728Excess;
            } else if (od > 0) {
                reason = ExceptionalReason::DjVanishes;
            }
        }
        if (reason) {
            S.places.push_back({v, *reason});
            S.size += v.degree();
        }
    }
    return S;
}

TangencyReport tangency_report(const WeierstrassModel& E, const PFOperator& L, const CurvePoint& P) {
    TangencyReport r;
    r.S = exceptional_set(E);
    r.d = deg_omega(E);
    r.bound = 4L * r.genus - 4 - r.d + r.S.size;
    GradedSection M = manin_section(E, L, P);
    r.section = M;
    if (M.is_zero()) {
        r.torsion = true;
        return r;
    }
    r.divisor = divisor(M);
    std::set<Place> places;
    for (const auto& e : r.divisor.entries) places.insert(e.place);
    for (const auto& e : r.S.places) places.insert(e.place);
    for (const auto& v : places) {
        int J = r.divisor.ord_at(v);
        bool in_S = r.S.contains(v);
        bool pass = in_S ? J >= -1 : J >= 0;
        r.local_bounds_hold = r.local_bounds_hold && pass;
        r.rows.push_back({v, J, in_S, pass});
        if (!in_S) {
            r.sum_off_S += static_cast<long>(v.degree()) * J;
            if (J > 0) r.T.push_back(v);
        }
    }
    r.bound_holds = r.sum_off_S <= r.bound;
    return r;
}

}  // namespace ellsurf
