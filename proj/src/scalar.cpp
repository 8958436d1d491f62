#include "ellsurf/scalar.hpp"

#include "ellsurf/error.hpp"

namespace ellsurf {

namespace {

bool is_prime(std::uint32_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

std::uint64_t reduce(const mpz_class& z, std::uint32_t p) {
    mpz_class r = z % p;
    if (r < 0) r += p;
    return r.get_ui();
}

std::uint64_t inv_mod(std::uint64_t a, std::uint64_t p) {
    // Fermat; p is prime.
    std::uint64_t result = 1, base = a % p, e = p - 2;
    while (e) {
        if (e & 1) result = result * base % p;
        base = base * base % p;
        e >>= 1;
    }
    return result;
}

}  // namespace

ConstantField ConstantField::prime(std::uint32_t p) {
    if (p <= 3 || !is_prime(p) || p > (1u << 31))
        throw InputError("characteristic must be 0 or a prime p with 3 < p < 2^31, got " + std::to_string(p));
    return ConstantField(p);
}

std::string ConstantField::name() const {
    return p_ == 0 ? std::string("Q") : "F_" + std::to_string(p_);
}

Scalar::Scalar(ConstantField field, long value) : field_(field) {
    if (field.is_rationals()) {
        q_ = mpq_class(value);
    } else {
        long p = field.characteristic();
        long r = value % p;
        r_ = static_cast<std::uint64_t>(r < 0 ? r + p : r);
    }
}

Scalar::Scalar(ConstantField field, const mpq_class& q) : field_(field) {
    if (field.is_rationals()) {
        q_ = q;
        q_->canonicalize();
        return;
    }
    std::uint32_t p = field.characteristic();
    std::uint64_t d = reduce(q.get_den(), p);
    if (d == 0) throw DivisionByZero("denominator " + q.get_den().get_str() + " vanishes in " + field.name());
    r_ = reduce(q.get_num(), p) * inv_mod(d, p) % p;
}

void Scalar::mixed_fields(ConstantField a, ConstantField b) {
    throw std::logic_error("mixed constant fields " + a.name() + " and " + b.name());
}

Scalar Scalar::operator-() const {
    Scalar r = *this;
    if (q_) {
        *r.q_ = -*q_;
    } else if (r_ != 0) {
        r.r_ = field_.characteristic() - r_;
    }
    return r;
}

Scalar& Scalar::operator/=(const Scalar& o) { return *this *= o.inverse(); }

Scalar Scalar::inverse() const {
    if (is_zero()) throw DivisionByZero();
    Scalar r = *this;
    if (q_) {
        *r.q_ = 1 / *q_;
    } else {
        r.r_ = inv_mod(r_, field_.characteristic());
    }
    return r;
}

Scalar Scalar::pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    Scalar result = one_like(), base = *this;
    while (e) {
        if (e & 1) result *= base;
        base *= base;
        e >>= 1;
    }
    return result;
}

bool operator==(const Scalar& a, const Scalar& b) {
    if (a.field_ != b.field_) return false;
    return a.q_ ? *a.q_ == *b.q_ : a.r_ == b.r_;
}

const mpq_class& Scalar::rational() const {
    if (!q_) throw std::logic_error("Scalar::rational() on a prime-field element");
    return *q_;
}

bool Scalar::prints_negative() const {
    if (q_) return sgn(*q_) < 0;
    return r_ > field_.characteristic() / 2;
}

std::string Scalar::to_string() const {
    if (q_) return q_->get_str();
    if (prints_negative()) return "-" + std::to_string(field_.characteristic() - r_);
    return std::to_string(r_);
}

}  // namespace ellsurf
