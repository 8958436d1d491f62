#include "ellsurf/pdescent.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "ellsurf/error.hpp"

namespace ellsurf {

namespace {

std::uint32_t require_charp_short(const WeierstrassModel& E) {
    const ConstantField k = E.field();
    if (k.is_rationals()) throw InputError("this operation needs a constant field F_p with p > 3");
    if (!E.is_short()) throw InputError("this operation needs a short model y^2 = x^3 + a4 x + a6");
    return k.characteristic();
}

// a4/(18 a6) * delta(j)/j.
FieldElement lambda_coefficient(const WeierstrassModel& E, const Derivation& delta) {
    const ConstantField k = E.field();
    if (E.a6().is_zero())
        throw HypothesisError("a6 != 0 for the lambda formula", "a6 vanishes identically, so j = 1728 and the formula for lambda degenerates");
    if (E.a4().is_zero())
        throw HypothesisError("j != 0 for the lambda formula", "a4 vanishes identically, so j = 0 and the formula for lambda degenerates");
    FieldElement j = E.j_invariant();
    FieldElement dj = delta(j);
    if (dj.is_zero())
        throw HypothesisError("j not a p-th power", "dj = 0, so j lies in K^p and lambda vanishes");
    return E.a4() * dj / (constant(k, 18) * E.a6() * j);
}

GradedSection hasse_section(const WeierstrassModel& E) {
    const std::uint32_t p = E.field().characteristic();
    return GradedSection{hasse_data(E).A, static_cast<int>(p) - 1, 0, E};
}

}  // namespace

HasseData hasse_data(const WeierstrassModel& E) {
    const std::uint32_t p = require_charp_short(E);
    XPoly g = E.cubic().pow((p - 1) / 2);
    const FieldElement zero = E.a4().zero_like();
    std::vector<FieldElement> m, l;
    for (int i = static_cast<int>(p); i <= g.degree(); ++i) m.push_back(g.coeff(i));
    for (int i = 0; i + 1 < static_cast<int>(p); ++i) l.push_back(g.coeff(i));
    HasseData h{g.coeff(static_cast<int>(p) - 1), XPoly(m, zero), XPoly(l, zero)};
    XPoly check = XPoly::monomial(zero.one_like(), static_cast<int>(p)) * h.M + h.L;
    if (!h.A.is_zero()) check += XPoly::monomial(h.A, static_cast<int>(p) - 1);
    if (!(check == g)) throw Error("Hasse data failed to re-expand");
    return h;
}

GradedSection lambda_section(const WeierstrassModel& E) {
    require_charp_short(E);
    return GradedSection{lambda_coefficient(E, Derivation::standard(E.field())), -2, 1, E};
}

std::pair<int, bool> tau_expectation(const KodairaType& type, std::uint32_t p) {
    using F = KodairaType::Family;
    switch (type.family) {
        case F::I:
            if (type.m == 0 || type.m % static_cast<int>(p) == 0) return {0, false};
            return {-1, true};
        case F::II:
        case F::III:
        case F::IV: return {-1, false};
        case F::IStar:
            if (type.m % static_cast<int>(p) == 0) return {-1, false};
            return {-2, true};
        case F::IVStar:
        case F::IIIStar:
        case F::IIStar: return {-2, false};
    }
    return {0, false};
}

std::vector<TauRow> check_lemma_tau(const WeierstrassModel& E) {
    const std::uint32_t p = require_charp_short(E);
    GradedSection lam = lambda_section(E);
    std::vector<TauRow> rows;
    for (const auto& v : section_candidate_places(lam)) {
        KodairaType type = kodaira_type(E, v);
        int ell = ord_section(lam, v);
        auto [bound, exact] = tau_expectation(type, p);
        rows.push_back({v, type, ell, (exact ? "= " : ">= ") + std::to_string(bound), exact ? ell == bound : ell >= bound});
    }
    return rows;
}

FieldElement mu(const WeierstrassModel& E, const CurvePoint& P, const Derivation& delta) {
    const std::uint32_t p = require_charp_short(E);
    const ConstantField k = E.field();
    if (!on_curve(E, P)) throw InputError("point not on curve");
    if (P.is_zero() || P.y().is_zero()) return constant(k, 0);
    HasseData h = hasse_data(E);
    FieldElement lam = lambda_coefficient(E, delta);
    const FieldElement& x = P.x();
    const FieldElement& y = P.y();
    FieldElement dlog_disc = delta(E.discriminant()) / E.discriminant();
    FieldElement z = delta(x) / (constant(k, 2) * y) / lam -
                     (constant(k, 12) * x * x + dlog_disc / lam * x + constant(k, 8) * E.a4()) / (constant(k, 12) * y);
    return y * h.M(x) + z.pow(static_cast<long>(p)) - h.A * z;
}

FieldElement mu(const WeierstrassModel& E, const CurvePoint& P) { return mu(E, P, Derivation::standard(E.field())); }

GradedSection nu(const WeierstrassModel& E, const CurvePoint& P) {
    const std::uint32_t p = require_charp_short(E);
    FieldElement lam = lambda_coefficient(E, Derivation::standard(E.field()));
    return GradedSection{mu(E, P) * lam, static_cast<int>(p) - 2, 1, E};
}

DescentDivisor descent_divisor(const WeierstrassModel& E, const CurvePoint& P, int n_max) {
    const std::uint32_t p = require_charp_short(E);
    if (!is_semistable(E)) throw HypothesisError("semistable reduction", "E has a place of additive reduction");
    DescentDivisor out;
    auto [zeros, poles] = divisor(lambda_section(E)).split();
    out.D0 = zeros;
    out.Dinf = poles;
    std::vector<DivisorEntry> dprime;
    for (const auto& [v, type] : bad_places(E)) {
        int cap = std::min(n_max, type.m);
        std::optional<int> order = component_order(E, P, v, cap);
        if (!order)
            throw HypothesisError("component order determined within the scan",
                                  "no multiple nP with n <= " + std::to_string(cap) + " reaches the identity component at " +
                                      v.to_string("t"));
        out.component_orders.push_back({v, type, *order});
        if (*order % static_cast<int>(p) == 0) dprime.push_back({v, 1});
    }
    out.Dprime = make_divisor(std::move(dprime));
    out.Dprime.expected_degree = out.Dprime.degree;
    out.D = (static_cast<int>(p) - 1) * out.D0 + static_cast<int>(p) * out.Dprime;
    out.D.expected_degree = out.D.degree;
    return out;
}

CharPBoundReport bound_report_charp(const WeierstrassModel& E, const CurvePoint& P, int n_max) {
    const std::uint32_t p = require_charp_short(E);
    CharPBoundReport r;
    r.p = p;
    r.n_max = n_max;
    if (!is_semistable(E)) throw HypothesisError("semistable reduction", "E has a place of additive reduction");
    for (const auto& [v, type] : bad_places(E))
        if (type.m % static_cast<int>(p) == 0)
            throw HypothesisError("component groups of order prime to p",
                                  "type " + type.to_string() + " at " + v.to_string("t") + " has component group of order divisible by p");
    r.d = deg_omega(E);
    r.delta = bad_place_count(E);
    r.bound = static_cast<long>(p) * (2L * r.genus - 2 - r.d) + (static_cast<long>(p) - 1) * r.delta;
    r.descent = descent_divisor(E, P, n_max);

    GradedSection nu_p = nu(E, P);
    if (nu_p.is_zero()) {
        r.torsion = true;
        return r;
    }
    r.nu_divisor = divisor(nu_p);
    std::set<Place> places;
    for (const auto& e : r.nu_divisor.entries) places.insert(e.place);
    for (const auto& e : r.descent.D.entries) places.insert(e.place);
    for (const auto& v : places) {
        if (r.nu_divisor.ord_at(v) < -r.descent.D.ord_at(v)) {
            r.membership_holds = false;
            r.membership_failures.push_back(v);
        }
    }

    GradedSection lam = lambda_section(E);
    GradedSection hasse = hasse_section(E);
    std::vector<Place> model_places = model_candidate_places(E);
    std::map<Place, int> max_iota;
    std::map<Place, LocalMinimalModel> local_models;
    CurvePoint Q = CurvePoint::zero();
    for (int n = 1; n <= n_max; ++n) {
        Q = add(E, Q, P);
        if (Q.is_zero()) break;
        if (n % static_cast<int>(p) == 0) continue;
        r.scanned.push_back(n);
        // iota >= 2 away from the model candidates needs pi^4 | den x(nP); places with iota = 1
        // there are implied by the membership check and are not enumerated.
        std::set<Place> cand(model_places.begin(), model_places.end());
        for (const auto& [part, e] : squarefree_decomposition(Q.x().den()))
            if (e >= 4)
                for (const auto& [q, m] : factor(part).factors) cand.insert(Place::finite(q, false));
        for (const auto& v : cand) {
            auto it = local_models.find(v);
            if (it == local_models.end()) it = local_models.emplace(v, minimal_model_at(E, v)).first;
            int iota = intersection_with_zero(E, Q, v, it->second);
            if (iota <= 0) continue;
            int ord_d = r.descent.D.ord_at(v);
            int ord_a = hasse.value.is_zero() ? kInfiniteOrder : ord_section(hasse, v);
            long rhs1 = static_cast<long>(p) * (iota - 1) - ord_d;
            long rhs2 = ord_a == kInfiniteOrder ? rhs1 : static_cast<long>(iota) - 1 + ord_a;
            int bound = static_cast<int>(std::min(rhs1, rhs2));
            int ord_nu = r.nu_divisor.ord_at(v);
            r.hits.push_back({n, v, iota, ord_nu, bound, ord_nu >= bound});
            max_iota[v] = std::max(max_iota[v], iota);
        }
    }
    for (const auto& [v, iota] : max_iota) {
        if (iota <= 1) continue;
        r.T.push_back(v);
        if (ord_section(lam, v) > 0) {
            r.T_s.push_back(v);
            r.weighted += static_cast<long>(p) * v.degree();
        } else {
            r.T_o.push_back(v);
            r.weighted += v.degree();
        }
    }
    r.bound_holds = r.weighted <= r.bound;
    return r;
}

}  // namespace ellsurf
