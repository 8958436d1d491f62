#include "ellsurf/funcfield.hpp"

#include <algorithm>

#include "ellsurf/error.hpp"
#include "ellsurf/expr.hpp"

namespace ellsurf {

namespace {

int compare_scalars(const Scalar& a, const Scalar& b) {
    if (a.field().is_rationals()) return cmp(a.rational(), b.rational());
    return a.residue() < b.residue() ? -1 : (a.residue() > b.residue() ? 1 : 0);
}

}  // namespace

Place Place::finite(Polynomial pi, bool check) {
    if (pi.degree() < 1 || !pi.lc().is_one()) throw InputError("a finite place needs a monic non-constant polynomial");
    if (check && !is_irreducible(pi)) throw InputError("place polynomial is reducible");
    return Place(std::move(pi), false);
}

FieldElement Place::uniformizer() const {
    if (infinite_) return coordinate(field()).inverse();
    return FieldElement(pi_);
}

std::string Place::to_string(const std::string& var) const {
    if (infinite_) return "infinity";
    return format_polynomial(pi_, var);
}

bool operator<(const Place& a, const Place& b) {
    if (a.infinite_ != b.infinite_) return b.infinite_;
    if (a.infinite_) return false;
    if (a.pi_.degree() != b.pi_.degree()) return a.pi_.degree() < b.pi_.degree();
    for (int i = a.pi_.degree(); i >= 0; --i) {
        int c = compare_scalars(-a.pi_.coeff(i), -b.pi_.coeff(i));
        if (c != 0) return c < 0;
    }
    return false;
}

int multiplicity(const Polynomial& q, const Polynomial& pi) {
    if (q.is_zero()) return kInfiniteOrder;
    int m = 0;
    Polynomial r = q;
    while (r.degree() >= pi.degree()) {
        auto [quo, rem] = divmod(r, pi);
        if (!rem.is_zero()) break;
        r = std::move(quo);
        ++m;
    }
    return m;
}

int ord_at(const FieldElement& f, const Place& v) {
    if (f.is_zero()) return kInfiniteOrder;
    if (v.is_infinite()) return f.den().degree() - f.num().degree();
    return multiplicity(f.num(), v.polynomial()) - multiplicity(f.den(), v.polynomial());
}

int ord_differential(const Differential& w, const Place& v) {
    if (w.coefficient.is_zero()) throw InputError("order of the zero differential");
    return ord_at(w.coefficient, v) + ord_dt(v);
}

std::vector<Place> finite_support(const FieldElement& f) {
    std::vector<Place> out;
    for (const Polynomial* q : {&f.num(), &f.den()}) {
        if (q->is_constant()) continue;
        for (auto& [pi, e] : factor(*q).factors) out.push_back(Place::finite(pi, false));
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<Place> candidate_places(const std::vector<FieldElement>& elements) {
    std::vector<Place> out;
    for (const auto& f : elements) {
        if (f.is_zero()) continue;
        auto s = finite_support(f);
        out.insert(out.end(), s.begin(), s.end());
    }
    if (!elements.empty()) out.push_back(Place::infinity(field_of(elements.front())));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

long degree_of_divisor(const FieldElement& f) {
    if (f.is_zero()) throw InputError("divisor of the zero function");
    long total = 0;
    for (const auto& v : candidate_places({f})) total += static_cast<long>(v.degree()) * ord_at(f, v);
    return total;
}

FieldElement CoverMap::operator()(const FieldElement& f) const { return pullback(*this, f); }

FieldElement pullback(const CoverMap& phi, const FieldElement& f) {
    if (phi.image.is_constant()) throw HypothesisError("non-constant cover", "the substitution is constant");
    auto lift = [](const Scalar& c) { return FieldElement(c); };
    if (f.is_polynomial()) return f.num().evaluate(phi.image, lift) * f.den().coeff(0).inverse();
    return f.num().evaluate(phi.image, lift) / f.den().evaluate(phi.image, lift);
}

}  // namespace ellsurf
