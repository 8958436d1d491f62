#ifndef ELLSURF_FUNCFIELD_HPP
#define ELLSURF_FUNCFIELD_HPP

#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "ellsurf/fraction.hpp"
#include "ellsurf/poly.hpp"
#include "ellsurf/scalar.hpp"

namespace ellsurf {

// Polynomials in the base coordinate and the rational function field k(t) = K.
using Polynomial = Poly<Scalar>;
using FieldElement = Fraction<Scalar>;

// Order of the zero function.
inline constexpr int kInfiniteOrder = std::numeric_limits<int>::max();

inline ConstantField field_of(const FieldElement& f) { return f.zero_coeff().field(); }
inline ConstantField field_of(const Polynomial& f) { return f.zero_coeff().field(); }

inline FieldElement constant(ConstantField k, long c) { return FieldElement(Scalar(k, c)); }
inline FieldElement constant(ConstantField k, const mpq_class& c) { return FieldElement(Scalar(k, c)); }
inline FieldElement coordinate(ConstantField k) { return FieldElement::variable(Scalar(k, 0L)); }
inline Polynomial poly_coordinate(ConstantField k) { return Polynomial::variable(Scalar(k, 0L)); }

// Closed point of P^1 over k: a monic irreducible polynomial, or infinity.
class Place {
public:
    static Place infinity(ConstantField k) { return Place(Polynomial(Scalar(k, 0L)), true); }
    // pi must be monic irreducible; checked with is_irreducible when check is true.
    static Place finite(Polynomial pi, bool check = true);

    bool is_infinite() const { return infinite_; }
    const Polynomial& polynomial() const { return pi_; }
    int degree() const { return infinite_ ? 1 : pi_.degree(); }
    ConstantField field() const { return field_of(pi_); }

    // A uniformizer: pi, or 1/t at infinity.
    FieldElement uniformizer() const;

    std::string to_string(const std::string& var) const;

    friend bool operator==(const Place& a, const Place& b) { return a.infinite_ == b.infinite_ && a.pi_ == b.pi_; }
    friend bool operator!=(const Place& a, const Place& b) { return !(a == b); }
    // Total order: finite places by degree then negated coefficients from the top (linear
    // places by their root), infinity last.
    friend bool operator<(const Place& a, const Place& b);

private:
    Place(Polynomial pi, bool infinite) : pi_(std::move(pi)), infinite_(infinite) {}
    Polynomial pi_;
    bool infinite_;
};

// Multiplicity of pi in the nonzero polynomial q.
int multiplicity(const Polynomial& q, const Polynomial& pi);

// ord_v(f); kInfiniteOrder for f = 0.
int ord_at(const FieldElement& f, const Place& v);

// d/dt.
inline FieldElement derive(const FieldElement& f) { return f.derivative(); }

// coefficient * dt.
struct Differential {
    FieldElement coefficient;
};

// ord_v of a nonzero differential; dt has order 0 at finite places and -2 at infinity.
int ord_differential(const Differential& w, const Place& v);

// Order of dt at v.
inline int ord_dt(const Place& v) { return v.is_infinite() ? -2 : 0; }

// A derivation of K: scale * d/dt.
struct Derivation {
    FieldElement scale;

    static Derivation standard(ConstantField k) { return {constant(k, 1)}; }
    FieldElement operator()(const FieldElement& f) const { return scale.is_one() ? f.derivative() : scale * f.derivative(); }
};

struct Factorization {
    Scalar unit;
    std::vector<std::pair<Polynomial, int>> factors;  // monic irreducible, sorted by degree then coefficients
};

// Factorization into monic irreducibles over the constant field; throws InputError for 0.
Factorization factor(const Polynomial& q);
bool is_irreducible(const Polynomial& q);
// Monic pairwise coprime squarefree parts q_i with q = lc * prod q_i^i, sorted by i.
std::vector<std::pair<Polynomial, int>> squarefree_decomposition(const Polynomial& q);

// Places in the support of f (zeros and poles among finite places), sorted; infinity excluded.
std::vector<Place> finite_support(const FieldElement& f);
// Union of finite supports of all given elements together with infinity, sorted and deduplicated.
std::vector<Place> candidate_places(const std::vector<FieldElement>& elements);

// Sum of degree(v) * ord_v(f) over the support of f; 0 for every nonzero f.
long degree_of_divisor(const FieldElement& f);

// Substitution t -> r(u): a finite cover of P^1 by P^1.
struct CoverMap {
    FieldElement image;  // r(u), non-constant

    FieldElement operator()(const FieldElement& f) const;
    // The cover obtained by first applying *this then inner: t -> r(u), u -> s(w) gives t -> r(s(w)).
    CoverMap then(const CoverMap& inner) const { return {inner(image)}; }
};

// pullback(phi, f) = f(r(u)); throws HypothesisError for a constant r.
FieldElement pullback(const CoverMap& phi, const FieldElement& f);

}  // namespace ellsurf

#endif
