#ifndef ELLSURF_SCALAR_HPP
#define ELLSURF_SCALAR_HPP

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>

#include <gmpxx.h>

#include "ellsurf/poly.hpp"

namespace ellsurf {

// The constant field k: either Q or F_p with p prime, p > 3.
class ConstantField {
public:
    constexpr ConstantField() = default;

    static constexpr ConstantField rationals() { return ConstantField(); }
    // Throws InputError unless p is a prime greater than 3.
    static ConstantField prime(std::uint32_t p);

    constexpr std::uint32_t characteristic() const { return p_; }
    constexpr bool is_rationals() const { return p_ == 0; }

    friend constexpr bool operator==(ConstantField, ConstantField) = default;

    std::string name() const;

private:
    constexpr explicit ConstantField(std::uint32_t p) : p_(p) {}
    std::uint32_t p_ = 0;
};

// An element of a ConstantField. Rationals are stored exactly in GMP, residues
// modulo p as a machine integer in [0, p).
class Scalar {
public:
    Scalar() : q_(mpq_class(0)) {}
    Scalar(ConstantField field, long value);
    // Throws DivisionByZero if the denominator of q vanishes modulo p.
    Scalar(ConstantField field, const mpq_class& q);

    ConstantField field() const { return field_; }

    bool is_zero() const { return q_ ? sgn(*q_) == 0 : r_ == 0; }
    bool is_one() const { return q_ ? *q_ == 1 : r_ == 1; }

    Scalar zero_like() const { return Scalar(field_, 0L); }
    Scalar one_like() const { return Scalar(field_, 1L); }

    Scalar operator-() const;
    Scalar& operator+=(const Scalar& o) {
        check_same(o);
        if (q_) {
            *q_ += *o.q_;
        } else {
            r_ += o.r_;
            if (r_ >= field_.characteristic()) r_ -= field_.characteristic();
        }
        return *this;
    }
    Scalar& operator-=(const Scalar& o) {
        check_same(o);
        if (q_)
            *q_ -= *o.q_;
        else
            r_ = r_ >= o.r_ ? r_ - o.r_ : r_ + field_.characteristic() - o.r_;
        return *this;
    }
    Scalar& operator*=(const Scalar& o) {
        check_same(o);
        if (q_)
            *q_ *= *o.q_;
        else
            r_ = r_ * o.r_ % field_.characteristic();
        return *this;
    }
    Scalar& operator/=(const Scalar& o);
    friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
    friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
    friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

    Scalar inverse() const;
    Scalar pow(long e) const;

    friend bool operator==(const Scalar& a, const Scalar& b);

    // Exact value; only valid over Q.
    const mpq_class& rational() const;
    // Residue in [0, p); only valid over F_p.
    std::uint64_t residue() const { return r_; }

    // Sign used by the printer: over F_p residues above p/2 print as negatives.
    bool prints_negative() const;
    std::string to_string() const;

    friend std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.to_string(); }

private:
    [[noreturn]] static void mixed_fields(ConstantField a, ConstantField b);
    void check_same(const Scalar& o) const {
        if (field_ != o.field_) mixed_fields(field_, o.field_);
    }

    ConstantField field_;
    std::uint64_t r_ = 0;
    std::optional<mpq_class> q_;
};

// Over Q the gcd goes through integer polynomials. Over F_p, gcd, products and
// division run on raw residues.
template <>
struct PolyBackend<Scalar> {
    static constexpr bool enabled = true;
    static Poly<Scalar> gcd(const Poly<Scalar>& a, const Poly<Scalar>& b);
    static std::optional<Poly<Scalar>> mul(const Poly<Scalar>& a, const Poly<Scalar>& b);
    static std::optional<std::pair<Poly<Scalar>, Poly<Scalar>>> divmod(const Poly<Scalar>& a, const Poly<Scalar>& b);
};

}  // namespace ellsurf

#endif
