#ifndef ELLSURF_POLY_HPP
#define ELLSURF_POLY_HPP

#include <algorithm>
#include <optional>
#include <tuple>
#include <utility>
#include <vector>

#include "ellsurf/error.hpp"

namespace ellsurf {

// Dense univariate polynomial over a field R.
//
// R must provide the field operations together with is_zero(), zero_like() and
// one_like(); the latter two let a zero polynomial remember which field it lives
// over (F_5 and Q(t) both need a runtime context). Coefficients are stored from
// the constant term upwards with no trailing zeros.
// Coefficient rings may supply faster kernels by specializing this. With enabled set,
// gcd is always delegated, and mul/divmod are used whenever they return a value.
template <class R>
struct PolyBackend {
    static constexpr bool enabled = false;
};

template <class R>
class Poly {
public:
    explicit Poly(R zero) : zero_(zero.zero_like()) {}
    Poly(std::vector<R> coeffs, const R& like) : c_(std::move(coeffs)), zero_(like.zero_like()) { trim(); }

    static Poly constant(const R& c) { return Poly(std::vector<R>{c}, c); }
    static Poly monomial(const R& c, int degree) {
        std::vector<R> v(static_cast<std::size_t>(degree) + 1, c.zero_like());
        v.back() = c;
        return Poly(std::move(v), c);
    }
    // The variable itself.
    static Poly variable(const R& like) { return monomial(like.one_like(), 1); }

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    bool is_constant() const { return c_.size() <= 1; }
    const R& coeff(int i) const {
        return i >= 0 && i < static_cast<int>(c_.size()) ? c_[static_cast<std::size_t>(i)] : zero_;
    }
    const R& lc() const { return c_.empty() ? zero_ : c_.back(); }
    const std::vector<R>& coeffs() const { return c_; }
    const R& zero_coeff() const { return zero_; }

    Poly zero_like() const { return Poly(zero_); }
    Poly one_like() const { return constant(zero_.one_like()); }

    Poly operator-() const {
        Poly r = *this;
        for (auto& c : r.c_) c = -c;
        return r;
    }
    Poly& operator+=(const Poly& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), zero_);
        for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
        trim();
        return *this;
    }
    Poly& operator-=(const Poly& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), zero_);
        for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
        trim();
        return *this;
    }
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }

    friend Poly operator*(const Poly& a, const Poly& b) {
        if (a.is_zero() || b.is_zero()) return Poly(a.zero_);
        if constexpr (PolyBackend<R>::enabled)
            if (auto fast = PolyBackend<R>::mul(a, b)) return std::move(*fast);
        std::vector<R> r(a.c_.size() + b.c_.size() - 1, a.zero_);
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i].is_zero()) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
        }
        return Poly(std::move(r), a.zero_);
    }
    Poly& operator*=(const Poly& o) { return *this = *this * o; }

    friend Poly operator*(Poly a, const R& s) {
        if (s.is_zero()) return Poly(a.zero_);
        for (auto& c : a.c_) c *= s;
        a.trim();
        return a;
    }
    friend Poly operator*(const R& s, Poly a) { return std::move(a) * s; }

    // Euclidean division; throws DivisionByZero for a zero divisor.
    friend std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
        if (b.is_zero()) throw DivisionByZero("polynomial division by zero");
        if (a.degree() < b.degree()) return {Poly(a.zero_), a};
        if constexpr (PolyBackend<R>::enabled)
            if (auto fast = PolyBackend<R>::divmod(a, b)) return std::move(*fast);
        std::vector<R> rem = a.c_;
        std::vector<R> quo(static_cast<std::size_t>(a.degree() - b.degree() + 1), a.zero_);
        const R inv_lc = b.lc().one_like() / b.lc();
        const int db = b.degree();
        for (int i = a.degree(); i >= db; --i) {
            R q = rem[static_cast<std::size_t>(i)] * inv_lc;
            if (q.is_zero()) continue;
            quo[static_cast<std::size_t>(i - db)] = q;
            for (int j = 0; j <= db; ++j) rem[static_cast<std::size_t>(i - db + j)] -= q * b.c_[static_cast<std::size_t>(j)];
        }
        rem.erase(rem.begin() + db, rem.end());
        return {Poly(std::move(quo), a.zero_), Poly(std::move(rem), a.zero_)};
    }
    friend Poly operator/(const Poly& a, const Poly& b) { return divmod(a, b).first; }
    friend Poly operator%(const Poly& a, const Poly& b) { return divmod(a, b).second; }

    // Exact quotient; throws if b does not divide a.
    friend Poly exact_div(const Poly& a, const Poly& b) {
        auto [q, r] = divmod(a, b);
        if (!r.is_zero()) throw Error("exact_div: inexact polynomial division");
        return q;
    }

    Poly monic() const {
        if (is_zero()) return *this;
        return *this * (lc().one_like() / lc());
    }

    // Monic gcd; gcd(0, 0) = 0.
    friend Poly gcd(Poly a, Poly b) {
        if constexpr (PolyBackend<R>::enabled)
            return PolyBackend<R>::gcd(a, b);
        else
            return euclid_gcd(std::move(a), std::move(b));
    }
    static Poly euclid_gcd(Poly a, Poly b) {
        while (!b.is_zero()) {
            Poly r = a % b;
            a = std::move(b);
            b = std::move(r);
        }
        return a.monic();
    }

    // Returns (g, s, t) with s*a + t*b = g monic.
    friend std::tuple<Poly, Poly, Poly> xgcd(const Poly& a, const Poly& b) {
        Poly r0 = a, r1 = b;
        Poly s0 = a.one_like(), s1 = a.zero_like();
        Poly t0 = a.zero_like(), t1 = a.one_like();
        while (!r1.is_zero()) {
            auto [q, r] = divmod(r0, r1);
            r0 = std::move(r1);
            r1 = std::move(r);
            Poly s2 = s0 - q * s1;
            s0 = std::move(s1);
            s1 = std::move(s2);
            Poly t2 = t0 - q * t1;
            t0 = std::move(t1);
            t1 = std::move(t2);
        }
        if (r0.is_zero()) return {r0, s0, t0};
        R inv = r0.lc().one_like() / r0.lc();
        return {r0 * inv, s0 * inv, t0 * inv};
    }

    Poly derivative() const {
        if (c_.size() <= 1) return Poly(zero_);
        std::vector<R> r;
        r.reserve(c_.size() - 1);
        R k = zero_;
        const R one = zero_.one_like();
        for (std::size_t i = 1; i < c_.size(); ++i) {
            k += one;
            r.push_back(c_[i] * k);
        }
        return Poly(std::move(r), zero_);
    }

    Poly pow(unsigned e) const {
        Poly result = one_like(), base = *this;
        while (e) {
            if (e & 1u) result *= base;
            e >>= 1u;
            if (e) base *= base;
        }
        return result;
    }

    R operator()(const R& x) const {
        R acc = zero_;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
        return acc;
    }

    // Horner evaluation in an algebra T over R; lift maps coefficients into T.
    template <class T, class Lift>
    T evaluate(const T& x, Lift&& lift) const {
        T acc = lift(zero_);
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + lift(*it);
        return acc;
    }

    // Applies f to every coefficient, producing a polynomial over the same ring.
    template <class F>
    Poly map_coeffs(F&& f) const {
        std::vector<R> r;
        r.reserve(c_.size());
        for (const auto& c : c_) r.push_back(f(c));
        return Poly(std::move(r), zero_);
    }

    friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

private:
    void trim() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }

    std::vector<R> c_;
    R zero_;
};

}  // namespace ellsurf

#endif
