#include "ellsurf/elliptic.hpp"

#include <algorithm>

#include "ellsurf/error.hpp"

namespace ellsurf {

namespace {

FieldElement k_const(const FieldElement& like, long c) { return constant(field_of(like), c); }

FieldElement cube(const FieldElement& a) { return a * a * a; }

// ceil(a / b) for b > 0.
int ceil_div(int a, int b) { return a >= 0 ? (a + b - 1) / b : -((-a) / b); }

XFraction pullback_fraction(const XFraction& r, const CoverMap& phi) {
    auto map = [&](const FieldElement& c) { return phi(c); };
    return XFraction(r.num().map_coeffs(map), r.den().map_coeffs(map));
}

}  // namespace

// ---------------------------------------------------------------- model

WeierstrassModel::WeierstrassModel(FieldElement c2, FieldElement c1, FieldElement c0)
    : c2_(std::move(c2)), c1_(std::move(c1)), c0_(std::move(c0)), a4_(c0_), a6_(c0_), disc_(c0_) {
    const FieldElement three = k_const(c0_, 3);
    a4_ = c1_ - c2_ * c2_ / three;
    a6_ = c0_ - c1_ * c2_ / three + k_const(c0_, 2) * cube(c2_) / k_const(c0_, 27);
    disc_ = k_const(c0_, -16) * (k_const(c0_, 4) * cube(a4_) + k_const(c0_, 27) * a6_ * a6_);
    if (disc_.is_zero()) throw HypothesisError("nonsingular Weierstrass model", "the discriminant vanishes identically");
}

WeierstrassModel WeierstrassModel::short_form(const FieldElement& a4, const FieldElement& a6) {
    return WeierstrassModel(a4.zero_like(), a4, a6);
}

WeierstrassModel WeierstrassModel::from_cubic(const XPoly& f) {
    if (f.degree() != 3 || !f.lc().is_one()) throw InputError("the curve must be y^2 = f(x) with f a monic cubic in x");
    return WeierstrassModel(f.coeff(2), f.coeff(1), f.coeff(0));
}

FieldElement WeierstrassModel::shift() const { return c2_ / k_const(c0_, 3); }

XPoly WeierstrassModel::cubic() const { return XPoly({c0_, c1_, c2_, c0_.one_like()}, c0_); }

FieldElement WeierstrassModel::cubic_at(const FieldElement& x) const { return ((x + c2_) * x + c1_) * x + c0_; }

FieldElement WeierstrassModel::cubic_derivative_at(const FieldElement& x) const {
    return (k_const(x, 3) * x + k_const(x, 2) * c2_) * x + c1_;
}

FieldElement WeierstrassModel::j_invariant() const {
    return k_const(c0_, -1728) * cube(k_const(c0_, 4) * a4_) / disc_;
}

WeierstrassModel WeierstrassModel::scaled(const FieldElement& u) const {
    FieldElement u2 = u * u;
    return WeierstrassModel(c2_ * u2, c1_ * u2 * u2, c0_ * u2 * u2 * u2);
}

WeierstrassModel WeierstrassModel::pullback(const CoverMap& phi) const {
    return WeierstrassModel(phi(c2_), phi(c1_), phi(c0_));
}

// ---------------------------------------------------------------- points

bool on_curve(const WeierstrassModel& E, const CurvePoint& P) {
    return P.is_zero() || P.y() * P.y() == E.cubic_at(P.x());
}

CurvePoint negate(const WeierstrassModel&, const CurvePoint& P) {
    if (P.is_zero()) return P;
    return CurvePoint(P.x(), -P.y());
}

CurvePoint add(const WeierstrassModel& E, const CurvePoint& P, const CurvePoint& Q) {
    if (P.is_zero()) return Q;
    if (Q.is_zero()) return P;
    FieldElement slope = P.x();
    if (P.x() == Q.x()) {
        if (P.y() != Q.y() || P.y().is_zero()) return CurvePoint::zero();
        slope = E.cubic_derivative_at(P.x()) / (k_const(P.y(), 2) * P.y());
    } else {
        slope = (Q.y() - P.y()) / (Q.x() - P.x());
    }
    FieldElement x3 = slope * slope - E.c2() - P.x() - Q.x();
    FieldElement y3 = slope * (P.x() - x3) - P.y();
    return CurvePoint(std::move(x3), std::move(y3));
}

CurvePoint scalar_mul(const WeierstrassModel& E, long n, const CurvePoint& P) {
    if (n < 0) return scalar_mul(E, -n, negate(E, P));
    CurvePoint result = CurvePoint::zero(), base = P;
    while (n) {
        if (n & 1) result = add(E, result, base);
        n >>= 1;
        if (n) base = add(E, base, base);
    }
    return result;
}

CurvePoint to_depressed(const WeierstrassModel& E, const CurvePoint& P) {
    if (P.is_zero() || E.is_short()) return P;
    return CurvePoint(P.x() + E.shift(), P.y());
}

CurvePoint scale_point(const CurvePoint& P, const FieldElement& u) {
    if (P.is_zero()) return P;
    FieldElement u2 = u * u;
    return CurvePoint(P.x() * u2, P.y() * u2 * u);
}

CurvePoint pullback_point(const CoverMap& phi, const CurvePoint& P) {
    if (P.is_zero()) return P;
    return CurvePoint(phi(P.x()), phi(P.y()));
}

// ---------------------------------------------------------------- functions on E

CurveFunction::CurveFunction(const WeierstrassModel& E, XFraction r1, XFraction r2)
    : r1_(std::move(r1)), r2_(std::move(r2)), f_(E.cubic()) {}

CurveFunction CurveFunction::from_k(const WeierstrassModel& E, const FieldElement& c) {
    XFraction z(XPoly(c.zero_like()));
    return CurveFunction(E, XFraction(XPoly::constant(c)), z);
}

CurveFunction CurveFunction::x_coordinate(const WeierstrassModel& E) {
    const FieldElement zero = E.c0().zero_like();
    return CurveFunction(E, XFraction::variable(zero), XFraction(XPoly(zero)));
}

CurveFunction CurveFunction::y_coordinate(const WeierstrassModel& E) {
    const FieldElement zero = E.c0().zero_like();
    return CurveFunction(E, XFraction(XPoly(zero)), XFraction(XPoly::constant(zero.one_like())));
}

CurveFunction operator*(const CurveFunction& a, const CurveFunction& b) {
    XFraction f(a.f_);
    XFraction r1 = a.r1_ * b.r1_;
    if (!a.r2_.is_zero() && !b.r2_.is_zero()) r1 += f * a.r2_ * b.r2_;
    XFraction r2 = a.r1_ * b.r2_ + a.r2_ * b.r1_;
    return CurveFunction(a.f_, std::move(r1), std::move(r2));
}

CurveFunction CurveFunction::inverse() const {
    XFraction norm = r1_ * r1_ - XFraction(f_) * r2_ * r2_;
    if (norm.is_zero()) throw DivisionByZero("inverse of the zero function on E");
    XFraction inv = norm.inverse();
    return CurveFunction(f_, r1_ * inv, -(r2_ * inv));
}

CurveFunction CurveFunction::pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    XFraction one = r1_.one_like();
    CurveFunction result(f_, one, r1_.zero_like()), base = *this;
    while (e) {
        if (e & 1) result = result * base;
        e >>= 1;
        if (e) base = base * base;
    }
    return result;
}

CurveFunction CurveFunction::scaled(const FieldElement& c) const {
    XFraction s(XPoly::constant(c));
    return CurveFunction(f_, r1_ * s, r2_ * s);
}

CurveFunction CurveFunction::d_dx() const {
    XFraction f(f_);
    XFraction fp(f_.derivative());
    XFraction two(XPoly::constant(k_const(f_.lc(), 2)));
    XFraction r2 = r2_.derivative();
    if (!r2_.is_zero()) r2 += r2_ * fp / (two * f);
    return CurveFunction(f_, r1_.derivative(), std::move(r2));
}

CurveFunction CurveFunction::apply_derivation(const Derivation& delta) const {
    XFraction f(f_);
    XFraction df(f_.map_coeffs(delta));
    XFraction two(XPoly::constant(k_const(f_.lc(), 2)));
    XFraction r2 = r2_.coefficient_derivative(delta);
    if (!r2_.is_zero() && !df.is_zero()) r2 += r2_ * df / (two * f);
    return CurveFunction(f_, r1_.coefficient_derivative(delta), std::move(r2));
}

FieldElement CurveFunction::at(const CurvePoint& P) const {
    if (P.is_zero()) throw InputError("CurveFunction::at needs an affine point; use value_at_O");
    FieldElement v = r1_.is_zero() ? P.x().zero_like() : r1_(P.x());
    if (!r2_.is_zero()) v += P.y() * r2_(P.x());
    return v;
}

CurveFunction CurveFunction::pullback(const CoverMap& phi) const {
    auto map = [&](const FieldElement& c) { return phi(c); };
    return CurveFunction(f_.map_coeffs(map), pullback_fraction(r1_, phi), pullback_fraction(r2_, phi));
}

// ---------------------------------------------------------------- expansion at O

namespace {

using Series = std::vector<FieldElement>;  // truncated power series, fixed length

Series ps_mul(const Series& a, const Series& b, std::size_t n) {
    Series r(n, a.front().zero_like());
    for (std::size_t i = 0; i < std::min(n, a.size()); ++i) {
        if (a[i].is_zero()) continue;
        for (std::size_t j = 0; i + j < n && j < b.size(); ++j) r[i + j] += a[i] * b[j];
    }
    return r;
}

Series ps_inv(const Series& a, std::size_t n) {
    Series r(n, a.front().zero_like());
    FieldElement inv0 = a.front().inverse();
    r[0] = inv0;
    for (std::size_t k = 1; k < n; ++k) {
        FieldElement s = a.front().zero_like();
        for (std::size_t i = 1; i <= k && i < a.size(); ++i) s += a[i] * r[k - i];
        r[k] = -(s * inv0);
    }
    return r;
}

// Square root with constant term 1 of a series with constant term 1.
Series ps_sqrt1(const Series& a, std::size_t n) {
    Series r(n, a.front().zero_like());
    r[0] = a.front().one_like();
    const FieldElement half = k_const(a.front(), 2).inverse();
    for (std::size_t k = 1; k < n; ++k) {
        FieldElement s = k < a.size() ? a[k] : a.front().zero_like();
        for (std::size_t i = 1; i < k; ++i) s -= r[i] * r[k - i];
        r[k] = s * half;
    }
    return r;
}

// Series in z of P(z^-2) * z^(2 deg P), i.e. reversed coefficients spaced by 2.
Series reversed_even(const XPoly& p, std::size_t n) {
    Series r(n, p.zero_coeff());
    for (int i = 0; i <= p.degree(); ++i) {
        std::size_t e = static_cast<std::size_t>(2 * (p.degree() - i));
        if (e < n) r[e] = p.coeff(i);
    }
    return r;
}

// Expansion of R(x) at x = z^-2 as z^shift * series, length n.
std::pair<int, Series> expand_fraction(const XFraction& r, std::size_t n) {
    int shift = 2 * (r.den().degree() - r.num().degree());
    Series s = ps_mul(reversed_even(r.num(), n), ps_inv(reversed_even(r.den(), n), n), n);
    return {shift, s};
}

}  // namespace

FieldElement LaurentSeries::coefficient(int exponent) const {
    if (exponent >= precision) throw std::out_of_range("Laurent coefficient beyond precision");
    if (exponent < start || exponent - start >= static_cast<int>(coeffs.size()))
        return coeffs.empty() ? FieldElement(Scalar()) : coeffs.front().zero_like();
    return coeffs[static_cast<std::size_t>(exponent - start)];
}

int LaurentSeries::valuation() const {
    for (std::size_t i = 0; i < coeffs.size(); ++i)
        if (!coeffs[i].is_zero()) return start + static_cast<int>(i);
    return precision;
}

LaurentSeries operator*(const LaurentSeries& a, const LaurentSeries& b) {
    LaurentSeries r;
    r.start = a.start + b.start;
    r.precision = std::min(a.start + b.precision, b.start + a.precision);
    if (a.coeffs.empty() || b.coeffs.empty() || r.precision <= r.start) return r;
    std::size_t n = static_cast<std::size_t>(r.precision - r.start);
    r.coeffs = ps_mul(a.coeffs, b.coeffs, n);
    return r;
}

LaurentSeries expand_at_infinity(const CurveFunction& g, int order) {
    const FieldElement zero = g.cubic().zero_coeff();
    LaurentSeries out;
    out.precision = order;
    struct Part {
        int shift;
        Series s;
    };
    std::vector<Part> parts;
    if (!g.r1().is_zero()) {
        int shift = 2 * (g.r1().den().degree() - g.r1().num().degree());
        if (order > shift) {
            auto [sh, s] = expand_fraction(g.r1(), static_cast<std::size_t>(order - shift));
            parts.push_back({sh, std::move(s)});
        }
    }
    if (!g.r2().is_zero()) {
        int shift = 2 * (g.r2().den().degree() - g.r2().num().degree()) - 3;
        if (order > shift) {
            std::size_t n = static_cast<std::size_t>(order - shift);
            auto [sh, s] = expand_fraction(g.r2(), n);
            // 1 + c2 z^2 + c1 z^4 + c0 z^6
            Series w(n, zero);
            w[0] = zero.one_like();
            const XPoly& f = g.cubic();
            for (int i = 1; i <= 3; ++i)
                if (static_cast<std::size_t>(2 * i) < n) w[static_cast<std::size_t>(2 * i)] = f.coeff(3 - i);
            parts.push_back({sh - 3, ps_mul(s, ps_sqrt1(w, n), n)});
        }
    }
    if (parts.empty()) {
        out.start = order;
        return out;
    }
    out.start = order;
    for (auto& p : parts) out.start = std::min(out.start, p.shift);
    out.coeffs.assign(static_cast<std::size_t>(order - out.start), zero);
    for (auto& p : parts)
        for (std::size_t i = 0; i < p.s.size(); ++i) {
            int e = p.shift + static_cast<int>(i);
            if (e < order) out.coeffs[static_cast<std::size_t>(e - out.start)] += p.s[i];
        }
    return out;
}

FieldElement value_at_O(const CurveFunction& g) {
    LaurentSeries s = expand_at_infinity(g, 1);
    if (s.valuation() < 0)
        throw HypothesisError("function regular at the zero section", "pole of order " + std::to_string(-s.valuation()) + " at O");
    return s.coefficient(0);
}

// ---------------------------------------------------------------- local invariants

std::string KodairaType::to_string() const {
    switch (family) {
        case Family::I: return "I" + std::to_string(m);
        case Family::IStar: return "I" + std::to_string(m) + "*";
        case Family::II: return "II";
        case Family::III: return "III";
        case Family::IV: return "IV";
        case Family::IVStar: return "IV*";
        case Family::IIIStar: return "III*";
        case Family::IIStar: return "II*";
    }
    return "?";
}

namespace {

KodairaType classify(int alpha, int beta, int gamma) {
    using F = KodairaType::Family;
    if (gamma == 0) return {F::I, 0};
    if (alpha == 0) return {F::I, gamma};
    if (alpha == 2 && beta == 3 && gamma > 6) return {F::IStar, gamma - 6};
    switch (gamma) {
        case 2: return {F::II, 0};
        case 3: return {F::III, 0};
        case 4: return {F::IV, 0};
        case 6: return {F::IStar, 0};
        case 8: return {F::IVStar, 0};
        case 9: return {F::IIIStar, 0};
        case 10: return {F::IIStar, 0};
        default: break;
    }
    throw Error("inconsistent valuations ord(a4)=" + std::to_string(alpha) + ", ord(a6)=" + std::to_string(beta) +
                ", ord(Delta)=" + std::to_string(gamma) + " on a minimal model");
}

}  // namespace

LocalMinimalModel minimal_model_at(const WeierstrassModel& E, const Place& v) {
    const FieldElement& a4 = E.a4();
    const FieldElement& a6 = E.a6();
    int o4 = ord_at(a4, v), o6 = ord_at(a6, v), od = ord_at(E.discriminant(), v);
    int k = std::numeric_limits<int>::min();
    if (o4 != kInfiniteOrder) k = std::max(k, ceil_div(-o4, 4));
    if (o6 != kInfiniteOrder) k = std::max(k, ceil_div(-o6, 6));
    FieldElement u = v.uniformizer().pow(k);
    WeierstrassModel m = E.depressed().scaled(u);
    int a = o4 == kInfiniteOrder ? o4 : o4 + 4 * k;
    int b = o6 == kInfiniteOrder ? o6 : o6 + 6 * k;
    int g = od + 12 * k;
    return LocalMinimalModel{v, std::move(m), k, std::move(u), a, b, g, classify(a, b, g)};
}

KodairaType kodaira_type(const WeierstrassModel& E, const Place& v) { return minimal_model_at(E, v).type; }

int intersection_with_zero(const WeierstrassModel& E, const CurvePoint& P, const Place& v) {
    return intersection_with_zero(E, P, v, minimal_model_at(E, v));
}

int intersection_with_zero(const WeierstrassModel& E, const CurvePoint& P, const Place& v, const LocalMinimalModel& local) {
    if (P.is_zero()) throw InputError("intersection_with_zero: P is the zero section");
    if (local.type.is_additive())
        throw HypothesisError("semistable reduction at the place",
                              "local intersection with O is only defined here at places of good or multiplicative reduction, got " +
                                  local.type.to_string());
    CurvePoint Q = to_depressed(E, P);
    int ox = ord_at(Q.x(), v);
    if (ox == kInfiniteOrder) return 0;
    ox += 2 * local.twist;
    if (ox >= 0) return 0;
    int oy = ord_at(Q.y(), v) + 3 * local.twist;
    if (ox % 2 != 0 || 3 * ox != 2 * oy)
        throw Error("inconsistent pole orders ord(x)=" + std::to_string(ox) + ", ord(y)=" + std::to_string(oy));
    return -ox / 2;
}

std::vector<Place> model_candidate_places(const WeierstrassModel& E) {
    std::vector<FieldElement> els{E.discriminant()};
    if (!E.a4().is_zero()) els.push_back(E.a4());
    if (!E.a6().is_zero()) els.push_back(E.a6());
    return candidate_places(els);
}

int deg_omega(const WeierstrassModel& E) {
    long total = 0;
    for (const auto& v : model_candidate_places(E)) total += static_cast<long>(v.degree()) * minimal_model_at(E, v).ord_disc;
    if (total % 12 != 0) throw Error("model inconsistency: sum of minimal discriminant orders " + std::to_string(total) + " is not divisible by 12");
    return static_cast<int>(total / 12);
}

std::vector<std::pair<Place, KodairaType>> bad_places(const WeierstrassModel& E) {
    std::vector<std::pair<Place, KodairaType>> out;
    for (const auto& v : model_candidate_places(E)) {
        KodairaType t = kodaira_type(E, v);
        if (!t.is_good()) out.emplace_back(v, t);
    }
    return out;
}

int bad_place_count(const WeierstrassModel& E) {
    int n = 0;
    for (auto& [v, t] : bad_places(E)) n += v.degree();
    return n;
}

bool is_semistable(const WeierstrassModel& E) {
    for (auto& [v, t] : bad_places(E))
        if (t.is_additive()) return false;
    return true;
}

bool in_identity_component(const WeierstrassModel& E, const CurvePoint& P, const Place& v) {
    if (P.is_zero()) return true;
    LocalMinimalModel local = minimal_model_at(E, v);
    CurvePoint Q = scale_point(to_depressed(E, P), local.scale);
    if (ord_at(Q.x(), v) < 0) return true;
    if (ord_at(Q.y(), v) <= 0) return true;
    FieldElement partial = constant(E.field(), 3) * Q.x() * Q.x() + local.model.a4();
    return ord_at(partial, v) <= 0;
}

std::optional<int> component_order(const WeierstrassModel& E, const CurvePoint& P, const Place& v, int n_max) {
    CurvePoint Q = P;
    for (int n = 1; n <= n_max; ++n) {
        if (in_identity_component(E, Q, v)) return n;
        Q = add(E, Q, P);
    }
    return std::nullopt;
}

}  // namespace ellsurf
