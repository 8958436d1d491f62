#ifndef ELLSURF_MANINMAP_HPP
#define ELLSURF_MANINMAP_HPP

#include <optional>
#include <string>
#include <vector>

#include "ellsurf/sections.hpp"

namespace ellsurf {

// L = A delta^2 + B delta + C with L(dx/y) = dF, delta extended to K(E) by delta(x) = 0.
struct PFOperator {
    FieldElement A, B, C;
    CurveFunction F;
    Derivation delta;
};

// The dx-coefficient of L(dx/y): A delta^2(1/y) + B delta(1/y) + C/y.
CurveFunction pf_form(const WeierstrassModel& E, const FieldElement& A, const FieldElement& B, const FieldElement& C,
                      const Derivation& delta);
bool verify_pf(const WeierstrassModel& E, const PFOperator& L);

// F = y H(x)/f^2 with deg H <= 4 and dF = L(dx/y), when it exists. Every odd exactness
// witness regular at O has this shape up to a constant.
std::optional<CurveFunction> find_witness(const WeierstrassModel& E, const FieldElement& A, const FieldElement& B,
                                          const FieldElement& C, const Derivation& delta);

// Solves for (A, B, C, F) by linear algebra over K. A, B, C are returned as coprime
// polynomials with A monic. Throws NotFound when the solution space is not a single
// line with A != 0 (isotrivial curves) or when a degree exceeds pole_bound.
PFOperator find_pf(const WeierstrassModel& E, int pole_bound);

// The same operator written with respect to another derivation.
PFOperator change_derivation(const PFOperator& L, const Derivation& delta);
// Transport along t = r(u); the result uses d/du. Throws HypothesisError when r' = 0.
PFOperator pullback_pf(const PFOperator& L, const CoverMap& phi);
// Operator for E.scaled(u) acting on its dx'/y', with a fresh witness.
PFOperator pf_for_scaled_model(const WeierstrassModel& E, const PFOperator& L, const FieldElement& u);

// M(P) = F(P) - F(O) + A(x' (-delta f)(P)/(2y^3) + (x'/y)') + B x'/y; 0 for O and 2-torsion.
FieldElement manin_M(const WeierstrassModel& E, const PFOperator& L, const CurvePoint& P);
// M(P) eta^2/(A dx/y) with eta dual to delta: kappa = -1, m = 2, dx/y frame, dt^2 frame.
GradedSection manin_section(const WeierstrassModel& E, const PFOperator& L, const CurvePoint& P);

enum class ExceptionalReason { BadReduction, DjVanishes, JZeroExcess, J1728Excess };
std::string to_string(ExceptionalReason r);

struct ExceptionalPlace {
    Place place;
    ExceptionalReason reason;
};

struct ExceptionalSet {
    std::vector<ExceptionalPlace> places;
    int size = 0;  // degree-weighted
    bool contains(const Place& v) const;
};

// Throws HypothesisError for isotrivial E.
ExceptionalSet exceptional_set(const WeierstrassModel& E);

struct TangencyRow {
    Place place;
    int J;
    bool in_S;
    bool pass;  // J >= 0 off S, J >= -1 on S
};

struct TangencyReport {
    bool torsion = false;  // M(P) = 0: no tangency data
    std::optional<GradedSection> section;
    DivisorReport divisor;
    ExceptionalSet S;
    std::vector<TangencyRow> rows;  // every place in S or in the support of the divisor
    std::vector<Place> T;           // off S with J > 0; I = J + 2 there
    int genus = 0;
    int d = 0;
    long bound = 0;   // 4g - 4 - d + |S|
    long sum_off_S = 0;
    bool local_bounds_hold = true;
    bool bound_holds = true;
};

TangencyReport tangency_report(const WeierstrassModel& E, const PFOperator& L, const CurvePoint& P);

}  // namespace ellsurf

#endif
