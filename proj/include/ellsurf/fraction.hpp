#ifndef ELLSURF_FRACTION_HPP
#define ELLSURF_FRACTION_HPP

#include <utility>

#include "ellsurf/poly.hpp"

namespace ellsurf {

// Rational function num/den in one variable over a field R, kept in canonical
// form: gcd(num, den) = 1 and den monic. Canonical form is unique, so equality
// is structural.
template <class R>
class Fraction {
public:
    using Coeff = R;
    using PolyT = Poly<R>;

    explicit Fraction(const R& c) : num_(PolyT::constant(c)), den_(PolyT::constant(c.one_like())) {}
    explicit Fraction(PolyT num) : num_(std::move(num)), den_(num_.one_like()) {}
    Fraction(PolyT num, PolyT den) : num_(std::move(num)), den_(std::move(den)) { normalize(); }

    static Fraction variable(const R& like) { return Fraction(PolyT::variable(like)); }

    const PolyT& num() const { return num_; }
    const PolyT& den() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const { return den_.degree() == 0 && num_.degree() == 0 && num_.lc() == den_.lc(); }
    bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
    bool is_polynomial() const { return den_.degree() == 0; }
    // Value of a constant fraction.
    R constant_value() const { return num_.coeff(0); }

    Fraction zero_like() const { return Fraction(num_.zero_like()); }
    Fraction one_like() const { return Fraction(num_.one_like()); }
    Fraction constant_like(const R& c) const { return Fraction(PolyT::constant(c)); }
    const R& zero_coeff() const { return num_.zero_coeff(); }

    Fraction operator-() const { return Fraction(-num_, den_, Canonical{}); }

    friend Fraction operator+(const Fraction& a, const Fraction& b) { return add(a, b, false); }
    friend Fraction operator-(const Fraction& a, const Fraction& b) { return add(a, b, true); }

    friend Fraction operator*(const Fraction& a, const Fraction& b) {
        if (a.is_zero() || b.is_zero()) return a.zero_like();
        if (a.den_.degree() == 0 && b.den_.degree() == 0) return Fraction(a.num_ * b.num_, a.den_, Canonical{});
        PolyT g1 = gcd(a.num_, b.den_);
        PolyT g2 = gcd(b.num_, a.den_);
        PolyT n = reduce_by(a.num_, g1) * reduce_by(b.num_, g2);
        PolyT d = reduce_by(a.den_, g2) * reduce_by(b.den_, g1);
        return Fraction(std::move(n), std::move(d), MonicOnly{});
    }
    friend Fraction operator*(const Fraction& a, const R& s) {
        if (s.is_zero()) return a.zero_like();
        return Fraction(a.num_ * s, a.den_, Canonical{});
    }
    friend Fraction operator/(const Fraction& a, const Fraction& b) { return a * b.inverse(); }

    Fraction& operator+=(const Fraction& o) { return *this = *this + o; }
    Fraction& operator-=(const Fraction& o) { return *this = *this - o; }
    Fraction& operator*=(const Fraction& o) { return *this = *this * o; }
    Fraction& operator/=(const Fraction& o) { return *this = *this / o; }

    Fraction inverse() const {
        if (is_zero()) throw DivisionByZero();
        return Fraction(den_, num_, MonicOnly{});
    }

    Fraction pow(long e) const {
        if (e < 0) return inverse().pow(-e);
        auto ue = static_cast<unsigned>(e);
        return Fraction(num_.pow(ue), den_.pow(ue), Canonical{});
    }

    // d/d(variable), quotient rule.
    Fraction derivative() const {
        if (den_.degree() == 0) return Fraction(num_.derivative(), den_, Canonical{});
        return Fraction(num_.derivative() * den_ - num_ * den_.derivative(), den_ * den_);
    }

    // Applies a derivation D of the coefficient ring (extended by D(var) = 0).
    template <class D>
    Fraction coefficient_derivative(D&& d) const {
        PolyT dn = num_.map_coeffs(d);
        PolyT dd = den_.map_coeffs(d);
        if (dd.is_zero()) return Fraction(std::move(dn), den_);
        return Fraction(dn * den_ - num_ * dd, den_ * den_);
    }

    // Evaluates at x; throws DivisionByZero at a pole.
    R operator()(const R& x) const {
        R d = den_(x);
        if (d.is_zero()) throw DivisionByZero("evaluation at a pole");
        return num_(x) / d;
    }

    friend bool operator==(const Fraction& a, const Fraction& b) { return a.num_ == b.num_ && a.den_ == b.den_; }
    friend bool operator!=(const Fraction& a, const Fraction& b) { return !(a == b); }

private:
    struct Canonical {};
    struct MonicOnly {};
    // Already coprime with monic denominator.
    Fraction(PolyT num, PolyT den, Canonical) : num_(std::move(num)), den_(std::move(den)) {}
    // Already coprime; only the denominator needs scaling.
    Fraction(PolyT num, PolyT den, MonicOnly) : num_(std::move(num)), den_(std::move(den)) { make_monic(); }

    static PolyT reduce_by(const PolyT& a, const PolyT& g) { return g.degree() <= 0 ? a : exact_div(a, g); }

    static Fraction add(const Fraction& a, const Fraction& b, bool subtract) {
        if (b.is_zero()) return a;
        if (a.is_zero()) return subtract ? -b : b;
        if (a.den_ == b.den_) {
            PolyT n = subtract ? a.num_ - b.num_ : a.num_ + b.num_;
            if (a.den_.degree() == 0) return Fraction(std::move(n), a.den_, Canonical{});
            PolyT g = gcd(n, a.den_);
            return Fraction(reduce_by(n, g), reduce_by(a.den_, g), Canonical{});
        }
        PolyT g = gcd(a.den_, b.den_);
        PolyT bd = reduce_by(b.den_, g), ad = reduce_by(a.den_, g);
        PolyT n = subtract ? a.num_ * bd - b.num_ * ad : a.num_ * bd + b.num_ * ad;
        PolyT d = a.den_ * bd;
        if (g.degree() > 0) {
            PolyT g2 = gcd(n, g);
            if (g2.degree() > 0) {
                n = exact_div(n, g2);
                d = exact_div(d, g2);
            }
        }
        return Fraction(std::move(n), std::move(d), Canonical{});
    }

    void make_monic() {
        if (den_.is_zero()) throw DivisionByZero();
        if (num_.is_zero()) {
            den_ = den_.one_like();
            return;
        }
        if (!den_.lc().is_one()) {
            R inv = den_.lc().one_like() / den_.lc();
            num_ = num_ * inv;
            den_ = den_ * inv;
        }
    }

    void normalize() {
        if (den_.is_zero()) throw DivisionByZero();
        if (!num_.is_zero() && den_.degree() > 0) {
            PolyT g = gcd(num_, den_);
            if (g.degree() > 0) {
                num_ = exact_div(num_, g);
                den_ = exact_div(den_, g);
            }
        }
        make_monic();
    }

    PolyT num_;
    PolyT den_;
};

}  // namespace ellsurf

#endif
