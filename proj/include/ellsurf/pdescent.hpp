#ifndef ELLSURF_PDESCENT_HPP
#define ELLSURF_PDESCENT_HPP

#include <optional>
#include <string>
#include <vector>

#include "ellsurf/sections.hpp"

namespace ellsurf {

// f^((p-1)/2) = x^p M(x) + A x^(p-1) + L(x) with deg L < p - 1.
struct HasseData {
    FieldElement A;
    XPoly M;
    XPoly L;
};

// E must be short over F_p.
HasseData hasse_data(const WeierstrassModel& E);

// lambda = a4/(18 a6) * dj/j as a section with kappa = -2, m = 1, value in the dt frame.
// Throws HypothesisError when a6 = 0, j = 0 or j is a p-th power (dj = 0).
GradedSection lambda_section(const WeierstrassModel& E);

struct TauRow {
    Place place;
    KodairaType type;
    int ell;
    std::string expectation;  // e.g. "= -1", ">= 0"
    bool pass;
};

// Expected bound on ord(lambda (dx/2y)^-2) for a reduction type: (value, exact).
std::pair<int, bool> tau_expectation(const KodairaType& type, std::uint32_t p);
std::vector<TauRow> check_lemma_tau(const WeierstrassModel& E);

// mu(P) in K for a short model over F_p. Zero for O and for points with y = 0.
FieldElement mu(const WeierstrassModel& E, const CurvePoint& P, const Derivation& delta);
FieldElement mu(const WeierstrassModel& E, const CurvePoint& P);

// nu(P) = mu(P) lambda (dx/2y)^(p-2): kappa = p - 2, m = 1.
GradedSection nu(const WeierstrassModel& E, const CurvePoint& P);

struct ComponentOrder {
    Place place;
    KodairaType type;
    int order;
};

struct DescentDivisor {
    DivisorReport D0, Dinf, Dprime, D;
    std::vector<ComponentOrder> component_orders;  // at each multiplicative place
};

// Requires semistable reduction. Throws HypothesisError when a component order
// is not found among n <= min(n_max, m).
DescentDivisor descent_divisor(const WeierstrassModel& E, const CurvePoint& P, int n_max);

struct TangencyHit {
    int n;
    Place place;
    int iota;            // (nP.O)_v
    int ord_nu;          // ord_v(nu(P))
    int refined_bound;   // min(p(iota-1) - ord D, iota - 1 + ord A)
    bool refined_holds;
};

struct CharPBoundReport {
    std::uint32_t p = 0;
    int genus = 0;
    int d = 0;      // deg omega
    int delta = 0;  // degree-weighted bad places
    long bound = 0; // p(2g - 2 - d) + (p - 1) delta
    bool torsion = false;  // nu(P) = 0
    DescentDivisor descent;
    DivisorReport nu_divisor;
    bool membership_holds = true;  // ord nu >= -ord D everywhere
    std::vector<Place> membership_failures;
    std::vector<TangencyHit> hits;  // every (n, v) with iota > 0 found by the scan
    std::vector<Place> T, T_s, T_o;
    long weighted = 0;  // |T_o| + p |T_s|, degree-weighted
    bool bound_holds = true;
    int n_max = 0;
    std::vector<int> scanned;  // multiples n <= n_max prime to p
};

// Requires semistable reduction with every component-group order prime to p.
CharPBoundReport bound_report_charp(const WeierstrassModel& E, const CurvePoint& P, int n_max);

}  // namespace ellsurf

#endif
