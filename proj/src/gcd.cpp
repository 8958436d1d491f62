// Heuristic gcd over Z (evaluate at a large integer, take the integer gcd,
// read the result back in base xi); falls back to Euclid over Q. Over F_p, the
// classical kernels on raw residues.

#include <algorithm>

#include "ellsurf/scalar.hpp"

namespace ellsurf {

namespace {

using ZPoly = std::vector<mpz_class>;

// Primitive integer polynomial with positive leading coefficient, proportional to f.
ZPoly primitive_part(const Poly<Scalar>& f) {
    mpz_class l = 1;
    for (const auto& c : f.coeffs()) l = lcm(l, c.rational().get_den());
    ZPoly z;
    mpz_class g = 0;
    for (const auto& c : f.coeffs()) {
        mpz_class v = c.rational().get_num() * (l / c.rational().get_den());
        g = gcd(g, v);
        z.push_back(v);
    }
    if (z.back() < 0) g = -g;
    for (auto& v : z) v /= g;
    return z;
}

mpz_class max_norm(const ZPoly& z) {
    mpz_class m = 0;
    for (const auto& c : z) m = std::max(m, mpz_class(abs(c)));
    return m;
}

mpz_class eval(const ZPoly& z, const mpz_class& x) {
    mpz_class r = 0;
    for (auto it = z.rbegin(); it != z.rend(); ++it) r = r * x + *it;
    return r;
}

// Whether d divides a in Z[x].
bool divides(const ZPoly& d, ZPoly a) {
    const std::size_t n = d.size() - 1;
    const mpz_class& lc = d.back();
    while (a.size() > n) {
        if (a.back() == 0) {
            a.pop_back();
            continue;
        }
        if (!mpz_divisible_p(a.back().get_mpz_t(), lc.get_mpz_t())) return false;
        mpz_class q = a.back() / lc;
        std::size_t shift = a.size() - 1 - n;
        for (std::size_t i = 0; i <= n; ++i) a[shift + i] -= q * d[i];
        a.pop_back();
    }
    return std::all_of(a.begin(), a.end(), [](const mpz_class& c) { return c == 0; });
}

std::optional<ZPoly> heuristic_gcd(const ZPoly& a, const ZPoly& b) {
    mpz_class xi = 2 * std::min(max_norm(a), max_norm(b)) + 29;
    for (int attempt = 0; attempt < 6; ++attempt) {
        if (mpz_sizeinbase(xi.get_mpz_t(), 2) * std::max(a.size(), b.size()) > 4000000) return std::nullopt;
        mpz_class h = gcd(eval(a, xi), eval(b, xi));
        ZPoly g;
        mpz_class half = xi / 2;
        while (h != 0) {
            mpz_class r = h % xi;
            if (r < 0) r += xi;
            if (r > half) r -= xi;
            g.push_back(r);
            h = (h - r) / xi;
        }
        if (!g.empty()) {
            mpz_class c = 0;
            for (const auto& v : g) c = gcd(c, v);
            if (g.back() < 0) c = -c;
            for (auto& v : g) v /= c;
            if (divides(g, a) && divides(g, b)) return g;
        }
        mpz_class r4;
        mpz_root(r4.get_mpz_t(), xi.get_mpz_t(), 4);
        xi = xi * r4 * 73794 / 27011;
    }
    return std::nullopt;
}

using Residues = std::vector<std::uint64_t>;

// Barrett reduction of x < 2^63 by a fixed p < 2^31.
struct Modulus {
    std::uint64_t p;
    std::uint64_t m;
    explicit Modulus(std::uint64_t p_) : p(p_), m(~std::uint64_t{0} / p_) {}
    std::uint64_t operator()(std::uint64_t x) const {
        std::uint64_t q = static_cast<std::uint64_t>((static_cast<unsigned __int128>(x) * m) >> 64);
        std::uint64_t r = x - q * p;
        return r >= p ? r - p : r;
    }
};

std::uint64_t inv_residue(std::uint64_t a, std::uint64_t p) {
    std::uint64_t r = 1, e = p - 2;
    while (e) {
        if (e & 1) r = r * a % p;
        a = a * a % p;
        e >>= 1;
    }
    return r;
}

// Below this, sums of up to 2^31 products of residues fit in 64 bits, so inner loops
// can skip the reduction.
constexpr std::uint64_t kLazyBound = 1u << 16;

// Long division of r by d in place: r becomes the remainder, with length at most
// deg d, and the quotient goes to q when given. d has a nonzero leading entry.
void long_divide(Residues& r, const Residues& d, const Modulus& p, Residues* q) {
    const std::size_t db = d.size() - 1;
    const std::uint64_t inv = inv_residue(d.back(), p.p);
    const bool lazy = p.p < kLazyBound;
    for (std::size_t i = r.size(); i-- > db;) {
        const std::uint64_t c = p(p(r[i]) * inv);
        if (q) (*q)[i - db] = c;
        if (c == 0) continue;
        const std::uint64_t nc = p.p - c;
        std::uint64_t* row = r.data() + (i - db);
        if (lazy)
            for (std::size_t j = 0; j < db; ++j) row[j] += nc * d[j];
        else
            for (std::size_t j = 0; j < db; ++j) row[j] = p(row[j] + nc * d[j]);
    }
    if (r.size() > db) r.resize(db);
    for (auto& v : r) v = p(v);
}

// a mod b in place, trimmed.
void reduce_by(Residues& a, const Residues& b, const Modulus& p) {
    long_divide(a, b, p, nullptr);
    while (!a.empty() && a.back() == 0) a.pop_back();
}

// Product of residue vectors; Karatsuba above a cutoff, schoolbook below.
Residues residue_mul(const Residues& x, const Residues& y, const Modulus& p) {
    if (x.empty() || y.empty()) return {};
    constexpr std::size_t kCutoff = 40;
    if (x.size() < kCutoff || y.size() < kCutoff) {
        Residues r(x.size() + y.size() - 1, 0);
        const bool lazy = p.p < kLazyBound;
        for (std::size_t i = 0; i < x.size(); ++i) {
            if (x[i] == 0) continue;
            if (lazy)
                for (std::size_t j = 0; j < y.size(); ++j) r[i + j] += x[i] * y[j];
            else
                for (std::size_t j = 0; j < y.size(); ++j) r[i + j] = p(r[i + j] + x[i] * y[j]);
        }
        if (lazy)
            for (auto& v : r) v = p(v);
        return r;
    }
    const std::size_t h = std::max(x.size(), y.size()) / 2;
    auto split = [h](const Residues& v) {
        if (v.size() <= h) return std::make_pair(v, Residues{});
        return std::make_pair(Residues(v.begin(), v.begin() + static_cast<long>(h)), Residues(v.begin() + static_cast<long>(h), v.end()));
    };
    auto sum = [&p](const Residues& u, const Residues& v) {
        Residues s(std::max(u.size(), v.size()), 0);
        for (std::size_t i = 0; i < u.size(); ++i) s[i] = u[i];
        for (std::size_t i = 0; i < v.size(); ++i) s[i] = p(s[i] + v[i]);
        return s;
    };
    auto [x0, x1] = split(x);
    auto [y0, y1] = split(y);
    Residues z0 = residue_mul(x0, y0, p), z2 = residue_mul(x1, y1, p);
    Residues z1 = residue_mul(sum(x0, x1), sum(y0, y1), p);
    for (std::size_t i = 0; i < z0.size(); ++i) z1[i] = p(z1[i] + p.p - z0[i]);
    for (std::size_t i = 0; i < z2.size(); ++i) z1[i] = p(z1[i] + p.p - z2[i]);
    Residues r(x.size() + y.size() - 1, 0);
    auto accumulate = [&](const Residues& z, std::size_t shift) {
        for (std::size_t i = 0; i < z.size() && i + shift < r.size(); ++i) r[i + shift] = p(r[i + shift] + z[i]);
    };
    accumulate(z0, 0);
    accumulate(z1, h);
    accumulate(z2, 2 * h);
    return r;
}

Residues load(const Poly<Scalar>& h) {
    Residues r;
    r.reserve(h.coeffs().size());
    for (const auto& c : h.coeffs()) r.push_back(c.residue());
    return r;
}

Poly<Scalar> store(const Residues& r, const Scalar& zero) {
    std::vector<Scalar> c;
    c.reserve(r.size());
    for (auto v : r) c.emplace_back(zero.field(), static_cast<long>(v));
    return Poly<Scalar>(std::move(c), zero);
}

Poly<Scalar> residue_gcd(const Poly<Scalar>& f, const Poly<Scalar>& g) {
    const Scalar zero = f.zero_coeff();
    const Modulus p(zero.field().characteristic());
    Residues a = load(f), b = load(g);
    while (!b.empty()) {
        reduce_by(a, b, p);
        std::swap(a, b);
    }
    const std::uint64_t inv = a.empty() ? 0 : inv_residue(a.back(), p.p);
    for (auto& v : a) v = p(v * inv);
    return store(a, zero);
}

}  // namespace

Poly<Scalar> PolyBackend<Scalar>::gcd(const Poly<Scalar>& a, const Poly<Scalar>& b) {
    const Scalar zero = a.zero_coeff();
    if (!zero.field().is_rationals()) return residue_gcd(a, b);
    if (a.is_zero() || b.is_zero()) return Poly<Scalar>::euclid_gcd(a, b);
    if (a.degree() == 0 || b.degree() == 0) return a.one_like();
    if (auto g = heuristic_gcd(primitive_part(a), primitive_part(b))) {
        std::vector<Scalar> c;
        for (const auto& v : *g) c.emplace_back(zero.field(), mpq_class(v));
        return Poly<Scalar>(std::move(c), zero).monic();
    }
    return Poly<Scalar>::euclid_gcd(a, b);
}

std::optional<Poly<Scalar>> PolyBackend<Scalar>::mul(const Poly<Scalar>& a, const Poly<Scalar>& b) {
    const Scalar zero = a.zero_coeff();
    if (zero.field().is_rationals()) return std::nullopt;
    return store(residue_mul(load(a), load(b), Modulus(zero.field().characteristic())), zero);
}

std::optional<std::pair<Poly<Scalar>, Poly<Scalar>>> PolyBackend<Scalar>::divmod(const Poly<Scalar>& a,
                                                                                 const Poly<Scalar>& b) {
    const Scalar zero = a.zero_coeff();
    if (zero.field().is_rationals()) return std::nullopt;
    const Modulus p(zero.field().characteristic());
    Residues r = load(a), d = load(b), q(r.size() - d.size() + 1, 0);
    long_divide(r, d, p, &q);
    return std::make_pair(store(q, zero), store(r, zero));
}

}  // namespace ellsurf
