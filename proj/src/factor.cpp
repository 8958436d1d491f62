// Univariate factorization over F_p (squarefree, distinct-degree and
// Cantor-Zassenhaus equal-degree splitting) and over Q (Zassenhaus: factor
// modulo a good prime, Hensel-lift, recombine).

#include <algorithm>
#include <random>

#include "ellsurf/error.hpp"
#include "ellsurf/funcfield.hpp"

namespace ellsurf {

namespace {

using ZPoly = std::vector<mpz_class>;  // integer coefficients, constant term first

Polynomial one_of(const Polynomial& f) { return f.one_like(); }

// ---------------------------------------------------------------- F_p

Polynomial pth_root(const Polynomial& f, std::uint32_t p) {
    std::vector<Scalar> c;
    for (int i = 0; i <= f.degree(); i += static_cast<int>(p)) c.push_back(f.coeff(i));
    return Polynomial(std::move(c), f.zero_coeff());
}

void squarefree_fp(const Polynomial& f, int mult, std::vector<std::pair<Polynomial, int>>& out) {
    const std::uint32_t p = field_of(f).characteristic();
    Polynomial c = gcd(f, f.derivative());
    Polynomial w = exact_div(f, c);
    int i = 1;
    while (w.degree() > 0) {
        Polynomial y = gcd(w, c);
        Polynomial fac = exact_div(w, y);
        if (fac.degree() > 0) out.emplace_back(fac, i * mult);
        w = y;
        c = exact_div(c, y);
        ++i;
    }
    if (c.degree() > 0) squarefree_fp(pth_root(c, p), mult * static_cast<int>(p), out);
}

Polynomial powmod(Polynomial base, mpz_class e, const Polynomial& m) {
    Polynomial result = one_of(m);
    base = base % m;
    while (e > 0) {
        if (mpz_odd_p(e.get_mpz_t())) result = (result * base) % m;
        e >>= 1;
        if (e > 0) base = (base * base) % m;
    }
    return result;
}

// Distinct-degree factorization of a monic squarefree polynomial.
std::vector<std::pair<Polynomial, int>> distinct_degree(Polynomial f) {
    const std::uint32_t p = field_of(f).characteristic();
    const Polynomial x = Polynomial::variable(f.zero_coeff());
    std::vector<std::pair<Polynomial, int>> out;
    Polynomial h = x;
    int i = 1;
    while (f.degree() >= 2 * i) {
        h = powmod(h, mpz_class(p), f);
        Polynomial g = gcd(h - x, f);
        if (g.degree() > 0) {
            out.emplace_back(g, i);
            f = exact_div(f, g);
            h = h % f;
        }
        ++i;
    }
    if (f.degree() > 0) out.emplace_back(f, f.degree());
    return out;
}

void equal_degree(const Polynomial& f, int d, std::mt19937_64& rng, std::vector<Polynomial>& out) {
    if (f.degree() == d) {
        out.push_back(f);
        return;
    }
    const ConstantField k = field_of(f);
    const std::uint32_t p = k.characteristic();
    mpz_class e;
    mpz_ui_pow_ui(e.get_mpz_t(), p, static_cast<unsigned long>(d));
    e = (e - 1) / 2;
    std::uniform_int_distribution<std::uint32_t> coin(0, p - 1);
    for (;;) {
        std::vector<Scalar> c;
        for (int i = 0; i < f.degree(); ++i) c.emplace_back(k, static_cast<long>(coin(rng)));
        Polynomial a(std::move(c), f.zero_coeff());
        if (a.degree() < 1) continue;
        Polynomial g = gcd(a, f);
        if (g.degree() <= 0) g = gcd(powmod(a, e, f) - one_of(f), f);
        if (g.degree() > 0 && g.degree() < f.degree()) {
            equal_degree(g, d, rng, out);
            equal_degree(exact_div(f, g), d, rng, out);
            return;
        }
    }
}

// Monic irreducible factors of a monic squarefree polynomial over F_p.
std::vector<Polynomial> factor_squarefree_fp(const Polynomial& f) {
    std::mt19937_64 rng(0x5eed);
    std::vector<Polynomial> out;
    for (auto& [g, d] : distinct_degree(f)) equal_degree(g, d, rng, out);
    return out;
}

// ---------------------------------------------------------------- Q

// Yun's squarefree decomposition of a monic polynomial in characteristic 0.
std::vector<std::pair<Polynomial, int>> squarefree_q(const Polynomial& f) {
    std::vector<std::pair<Polynomial, int>> out;
    Polynomial fp = f.derivative();
    Polynomial a = gcd(f, fp);
    Polynomial b = exact_div(f, a);
    Polynomial c = exact_div(fp, a);
    Polynomial d = c - b.derivative();
    int i = 1;
    while (b.degree() > 0) {
        a = gcd(b, d);
        if (a.degree() > 0) out.emplace_back(a, i);
        b = exact_div(b, a);
        c = exact_div(d, a);
        d = c - b.derivative();
        ++i;
    }
    return out;
}

// Primitive integer polynomial with positive leading coefficient proportional to f.
ZPoly to_primitive_integer(const Polynomial& f) {
    mpz_class l = 1;
    for (const auto& c : f.coeffs()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.rational().get_den_mpz_t());
    ZPoly z;
    mpz_class g = 0;
    for (const auto& c : f.coeffs()) {
        mpz_class v = c.rational().get_num() * (l / c.rational().get_den());
        z.push_back(v);
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
    }
    if (z.back() < 0) g = -g;
    for (auto& v : z) v /= g;
    return z;
}

Polynomial from_integer(const ZPoly& z, ConstantField k) {
    std::vector<Scalar> c;
    for (const auto& v : z) c.emplace_back(k, mpq_class(v));
    return Polynomial(std::move(c), Scalar(k, 0L));
}

mpz_class symmetric_mod(const mpz_class& a, const mpz_class& m) {
    mpz_class r = a % m;
    if (r < 0) r += m;
    if (2 * r > m) r -= m;
    return r;
}

ZPoly zmul(const ZPoly& a, const ZPoly& b, const mpz_class& m) {
    if (a.empty() || b.empty()) return {};
    ZPoly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    for (auto& c : r) c = symmetric_mod(c, m);
    return r;
}

ZPoly lift_fp(const Polynomial& f) {
    ZPoly z;
    for (const auto& c : f.coeffs()) z.emplace_back(static_cast<unsigned long>(c.residue()));
    return z;
}

Polynomial reduce_fp(const ZPoly& z, ConstantField k) {
    std::vector<Scalar> c;
    for (const auto& v : z) c.emplace_back(k, mpq_class(v));
    return Polynomial(std::move(c), Scalar(k, 0L));
}

// Given monic f = g*h mod p with g, h monic and coprime mod p, lifts g to a
// monic factor of f modulo p^k. f is monic modulo p^k.
ZPoly hensel_lift(const ZPoly& f, const Polynomial& g0, const Polynomial& h0, std::uint32_t p, int k) {
    const ConstantField fp = field_of(g0);
    auto [one, s, t] = xgcd(g0, h0);
    ZPoly g = lift_fp(g0), h = lift_fp(h0);
    mpz_class pj = p;
    for (int j = 1; j < k; ++j) {
        mpz_class next = pj * p;
        ZPoly gh = zmul(g, h, next);
        ZPoly e(f.size(), 0);
        for (std::size_t i = 0; i < f.size(); ++i) {
            mpz_class v = symmetric_mod(f[i] - (i < gh.size() ? gh[i] : mpz_class(0)), next);
            e[i] = v / pj;  // exact
        }
        Polynomial ebar = reduce_fp(e, fp);
        Polynomial dg = (t * ebar) % g0;
        Polynomial dh = exact_div(ebar - dg * h0, g0);
        ZPoly dgz = lift_fp(dg), dhz = lift_fp(dh);
        for (std::size_t i = 0; i < dgz.size(); ++i) g[i] += pj * dgz[i];
        for (std::size_t i = 0; i < dhz.size(); ++i) h[i] += pj * dhz[i];
        for (auto& c : g) c = symmetric_mod(c, next);
        for (auto& c : h) c = symmetric_mod(c, next);
        pj = next;
    }
    return g;
}

bool next_prime(std::uint32_t& p) {
    for (++p;; ++p) {
        bool prime = true;
        for (std::uint32_t d = 2; d * d <= p; ++d)
            if (p % d == 0) {
                prime = false;
                break;
            }
        if (prime) return true;
    }
}

// Irreducible factors (primitive, positive leading coefficient) of a primitive squarefree integer polynomial.
std::vector<ZPoly> zassenhaus(ZPoly f) {
    const std::size_t n = f.size() - 1;
    if (n <= 1) return {f};

    // Choose the admissible prime with the fewest modular factors among the first few.
    std::uint32_t p = 3, best_p = 0;
    std::vector<Polynomial> best;
    int tried = 0;
    while (tried < 6) {
        next_prime(p);
        if (f.back() % p == 0) continue;
        ConstantField fp = ConstantField::prime(p);
        Polynomial fbar = reduce_fp(f, fp);
        if (gcd(fbar, fbar.derivative()).degree() > 0) continue;
        auto facs = factor_squarefree_fp(fbar.monic());
        ++tried;
        if (best_p == 0 || facs.size() < best.size()) {
            best_p = p;
            best = std::move(facs);
        }
        if (best.size() == 1) return {f};
    }
    p = best_p;
    const ConstantField fp = ConstantField::prime(p);

    // Coefficient bound for factors of lc*f.
    mpz_class maxc = 0;
    for (auto& c : f) maxc = std::max(maxc, mpz_class(abs(c)));
    mpz_class bound = abs(f.back()) * maxc * mpz_class(static_cast<unsigned long>(n + 1));
    bound <<= static_cast<mp_bitcnt_t>(n + 1);
    int k = 1;
    mpz_class pk = p;
    while (pk <= bound) {
        pk *= p;
        ++k;
    }

    // Monic image of f modulo p^k.
    mpz_class lc_inv;
    mpz_invert(lc_inv.get_mpz_t(), f.back().get_mpz_t(), pk.get_mpz_t());
    ZPoly fm;
    for (auto& c : f) fm.push_back(symmetric_mod(c * lc_inv, pk));

    Polynomial fbar_monic = reduce_fp(f, fp).monic();
    std::vector<ZPoly> lifted;
    for (const auto& g : best) lifted.push_back(hensel_lift(fm, g, exact_div(fbar_monic, g), p, k));

    // Recombination.
    std::vector<ZPoly> result;
    std::vector<std::size_t> remaining(lifted.size());
    for (std::size_t i = 0; i < remaining.size(); ++i) remaining[i] = i;
    const ConstantField q = ConstantField::rationals();
    Polynomial fq = from_integer(f, q);
    std::size_t s = 1;
    while (2 * s <= remaining.size()) {
        bool found = false;
        std::vector<bool> pick(remaining.size(), false);
        std::fill(pick.begin(), pick.begin() + static_cast<long>(s), true);
        do {
            ZPoly cand{mpz_class(fq.lc().rational().get_num())};
            for (std::size_t i = 0; i < remaining.size(); ++i)
                if (pick[i]) cand = zmul(cand, lifted[remaining[i]], pk);
            Polynomial cq = from_integer(cand, q);
            auto [quo, rem] = divmod(fq, cq);
            if (rem.is_zero()) {
                ZPoly g = to_primitive_integer(cq);
                result.push_back(g);
                fq = from_integer(to_primitive_integer(quo), q);
                std::vector<std::size_t> keep;
                for (std::size_t i = 0; i < remaining.size(); ++i)
                    if (!pick[i]) keep.push_back(remaining[i]);
                remaining = std::move(keep);
                found = true;
                break;
            }
        } while (std::prev_permutation(pick.begin(), pick.end()));
        if (!found) ++s;
    }
    if (fq.degree() > 0) result.push_back(to_primitive_integer(fq));
    return result;
}

}  // namespace

Factorization factor(const Polynomial& q) {
    if (q.is_zero()) throw InputError("factor: zero polynomial");
    Factorization out{q.lc(), {}};
    if (q.degree() == 0) return out;
    const ConstantField k = field_of(q);
    Polynomial m = q.monic();
    if (k.is_rationals()) {
        for (auto& [part, e] : squarefree_q(m)) {
            if (part.degree() == 1) {
                out.factors.emplace_back(part, e);
                continue;
            }
            for (auto& z : zassenhaus(to_primitive_integer(part))) out.factors.emplace_back(from_integer(z, k).monic(), e);
        }
    } else {
        std::vector<std::pair<Polynomial, int>> sf;
        squarefree_fp(m, 1, sf);
        for (auto& [part, e] : sf)
            for (auto& g : factor_squarefree_fp(part)) out.factors.emplace_back(g, e);
    }
    std::sort(out.factors.begin(), out.factors.end(), [&](const auto& a, const auto& b) {
        return Place::finite(a.first, false) < Place::finite(b.first, false);
    });
    // Merge equal factors (over F_p the squarefree pieces can repeat a factor).
    std::vector<std::pair<Polynomial, int>> merged;
    for (auto& fe : out.factors) {
        if (!merged.empty() && merged.back().first == fe.first)
            merged.back().second += fe.second;
        else
            merged.push_back(fe);
    }
    out.factors = std::move(merged);
    return out;
}

std::vector<std::pair<Polynomial, int>> squarefree_decomposition(const Polynomial& q) {
    if (q.is_zero()) throw InputError("squarefree_decomposition: zero polynomial");
    if (q.degree() == 0) return {};
    Polynomial m = q.monic();
    std::vector<std::pair<Polynomial, int>> parts;
    if (field_of(q).is_rationals())
        parts = squarefree_q(m);
    else
        squarefree_fp(m, 1, parts);
    std::sort(parts.begin(), parts.end(), [](const auto& a, const auto& b) { return a.second < b.second; });
    std::vector<std::pair<Polynomial, int>> merged;
    for (auto& pe : parts) {
        if (!merged.empty() && merged.back().second == pe.second)
            merged.back().first *= pe.first;
        else
            merged.push_back(pe);
    }
    return merged;
}

bool is_irreducible(const Polynomial& q) {
    if (q.degree() < 1) return false;
    auto f = factor(q);
    return f.factors.size() == 1 && f.factors.front().second == 1;
}

}  // namespace ellsurf
