#ifndef ELLSURF_ELLIPTIC_HPP
#define ELLSURF_ELLIPTIC_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ellsurf/funcfield.hpp"

namespace ellsurf {

// Polynomials and rational functions in the fiber coordinate x over K.
using XPoly = Poly<FieldElement>;
using XFraction = Fraction<FieldElement>;

// y^2 = x^3 + c2 x^2 + c1 x + c0 over K, with nonzero discriminant.
class WeierstrassModel {
public:
    // Throws HypothesisError when the discriminant vanishes.
    WeierstrassModel(FieldElement c2, FieldElement c1, FieldElement c0);
    static WeierstrassModel short_form(const FieldElement& a4, const FieldElement& a6);
    // f must be a monic cubic in x.
    static WeierstrassModel from_cubic(const XPoly& f);

    const FieldElement& c2() const { return c2_; }
    const FieldElement& c1() const { return c1_; }
    const FieldElement& c0() const { return c0_; }
    ConstantField field() const { return field_of(c0_); }
    bool is_short() const { return c2_.is_zero(); }

    // Coefficients of the depressed model obtained by x -> x - c2/3.
    const FieldElement& a4() const { return a4_; }
    const FieldElement& a6() const { return a6_; }
    // The shift s = c2/3; depressed x equals x + s.
    FieldElement shift() const;
    WeierstrassModel depressed() const { return short_form(a4_, a6_); }

    XPoly cubic() const;
    // x^3 + c2 x^2 + c1 x + c0 evaluated at x.
    FieldElement cubic_at(const FieldElement& x) const;
    // d/dx of the cubic evaluated at x.
    FieldElement cubic_derivative_at(const FieldElement& x) const;

    // Delta = 16 disc(f); equals -16(4 a4^3 + 27 a6^2).
    const FieldElement& discriminant() const { return disc_; }
    FieldElement j_invariant() const;

    // Model with x' = u^2 x, y' = u^3 y.
    WeierstrassModel scaled(const FieldElement& u) const;
    // The same curve over k(u) via t -> r(u).
    WeierstrassModel pullback(const CoverMap& phi) const;

    friend bool operator==(const WeierstrassModel& a, const WeierstrassModel& b) {
        return a.c2_ == b.c2_ && a.c1_ == b.c1_ && a.c0_ == b.c0_;
    }

private:
    FieldElement c2_, c1_, c0_;
    FieldElement a4_, a6_, disc_;
};

// O or an affine point (x, y).
class CurvePoint {
public:
    static CurvePoint zero() { return CurvePoint(); }
    CurvePoint(FieldElement x, FieldElement y) : xy_(std::make_pair(std::move(x), std::move(y))) {}

    bool is_zero() const { return !xy_.has_value(); }
    const FieldElement& x() const { return xy_->first; }
    const FieldElement& y() const { return xy_->second; }

    friend bool operator==(const CurvePoint& a, const CurvePoint& b) { return a.xy_ == b.xy_; }

private:
    CurvePoint() = default;
    std::optional<std::pair<FieldElement, FieldElement>> xy_;
};

bool on_curve(const WeierstrassModel& E, const CurvePoint& P);
CurvePoint negate(const WeierstrassModel& E, const CurvePoint& P);
CurvePoint add(const WeierstrassModel& E, const CurvePoint& P, const CurvePoint& Q);
CurvePoint scalar_mul(const WeierstrassModel& E, long n, const CurvePoint& P);

// Coordinates of P in E.depressed() and in E.scaled(u).
CurvePoint to_depressed(const WeierstrassModel& E, const CurvePoint& P);
CurvePoint scale_point(const CurvePoint& P, const FieldElement& u);
CurvePoint pullback_point(const CoverMap& phi, const CurvePoint& P);

// Element R1(x) + y R2(x) of the function field K(E), reduced modulo y^2 = f(x).
class CurveFunction {
public:
    CurveFunction(const WeierstrassModel& E, XFraction r1, XFraction r2);
    static CurveFunction from_k(const WeierstrassModel& E, const FieldElement& c);
    static CurveFunction x_coordinate(const WeierstrassModel& E);
    static CurveFunction y_coordinate(const WeierstrassModel& E);

    const XFraction& r1() const { return r1_; }
    const XFraction& r2() const { return r2_; }
    const XPoly& cubic() const { return f_; }

    bool is_zero() const { return r1_.is_zero() && r2_.is_zero(); }

    CurveFunction operator-() const { return {f_, -r1_, -r2_}; }
    friend CurveFunction operator+(const CurveFunction& a, const CurveFunction& b) { return {a.f_, a.r1_ + b.r1_, a.r2_ + b.r2_}; }
    friend CurveFunction operator-(const CurveFunction& a, const CurveFunction& b) { return {a.f_, a.r1_ - b.r1_, a.r2_ - b.r2_}; }
    friend CurveFunction operator*(const CurveFunction& a, const CurveFunction& b);
    friend CurveFunction operator/(const CurveFunction& a, const CurveFunction& b) { return a * b.inverse(); }
    CurveFunction inverse() const;
    CurveFunction pow(long e) const;
    CurveFunction scaled(const FieldElement& c) const;

    // Coefficient of dx in dF (a derivation of K(E) over K).
    CurveFunction d_dx() const;
    // Extension of a derivation of K with delta(x) = 0, so delta(y) = delta(f)/(2y).
    CurveFunction apply_derivation(const Derivation& delta) const;

    // Value at an affine point; throws DivisionByZero at a pole.
    FieldElement at(const CurvePoint& P) const;

    CurveFunction pullback(const CoverMap& phi) const;

    friend bool operator==(const CurveFunction& a, const CurveFunction& b) {
        return a.f_ == b.f_ && a.r1_ == b.r1_ && a.r2_ == b.r2_;
    }

private:
    CurveFunction(XPoly f, XFraction r1, XFraction r2) : r1_(std::move(r1)), r2_(std::move(r2)), f_(std::move(f)) {}
    XFraction r1_, r2_;
    XPoly f_;
};

// Laurent series sum_{i} coeffs[i] z^(start + i), known for exponents < precision.
struct LaurentSeries {
    int start = 0;
    std::vector<FieldElement> coeffs;
    int precision = 0;

    FieldElement coefficient(int exponent) const;
    // First exponent with a nonzero known coefficient, or precision when none.
    int valuation() const;
};
LaurentSeries operator*(const LaurentSeries& a, const LaurentSeries& b);

// Expansion at O in the parameter z with x = z^-2 and y = z^-3 sqrt(1 + c2 z^2 + c1 z^4 + c0 z^6),
// the square root normalized to constant term 1. Exact for exponents < order.
LaurentSeries expand_at_infinity(const CurveFunction& g, int order);
// g(O); throws HypothesisError if g has a pole at O.
FieldElement value_at_O(const CurveFunction& g);

struct KodairaType {
    enum class Family { I, IStar, II, III, IV, IVStar, IIIStar, IIStar };
    Family family = Family::I;
    int m = 0;  // for I_m and I_m*

    bool is_good() const { return family == Family::I && m == 0; }
    bool is_multiplicative() const { return family == Family::I && m > 0; }
    bool is_additive() const { return family != Family::I; }
    std::string to_string() const;
    friend bool operator==(const KodairaType&, const KodairaType&) = default;
};

// The depressed model of E rescaled to be regular and minimal at v.
struct LocalMinimalModel {
    Place place;
    WeierstrassModel model;  // short, minimal at v
    int twist;               // k with x' = pi^(2k) x_depressed, a4' = pi^(4k) a4
    FieldElement scale;      // pi^k
    int ord_a4, ord_a6, ord_disc;
    KodairaType type;
};

LocalMinimalModel minimal_model_at(const WeierstrassModel& E, const Place& v);
KodairaType kodaira_type(const WeierstrassModel& E, const Place& v);

// (P.O)_v = max(0, -ord_v(x'(P))/2) on the v-minimal model; refuses additive places.
int intersection_with_zero(const WeierstrassModel& E, const CurvePoint& P, const Place& v);
// Same, with local = minimal_model_at(E, v) already in hand.
int intersection_with_zero(const WeierstrassModel& E, const CurvePoint& P, const Place& v, const LocalMinimalModel& local);

// Places where the depressed model can fail to be minimal or have bad reduction.
std::vector<Place> model_candidate_places(const WeierstrassModel& E);
// deg(omega) = (1/12) sum deg(v) ord_v(Delta_min).
int deg_omega(const WeierstrassModel& E);
std::vector<std::pair<Place, KodairaType>> bad_places(const WeierstrassModel& E);
// delta: degree-weighted number of bad places.
int bad_place_count(const WeierstrassModel& E);
bool is_semistable(const WeierstrassModel& E);

// Whether P reduces into the identity component at v: to O or to a smooth point
// of the reduction of the v-minimal model.
bool in_identity_component(const WeierstrassModel& E, const CurvePoint& P, const Place& v);
// Smallest n in [1, n_max] with nP in the identity component at v; nullopt when none.
std::optional<int> component_order(const WeierstrassModel& E, const CurvePoint& P, const Place& v, int n_max);

}  // namespace ellsurf

#endif
