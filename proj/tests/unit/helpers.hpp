#ifndef ELLSURF_TEST_HELPERS_HPP
#define ELLSURF_TEST_HELPERS_HPP

#include <random>
#include <string>

#include "ellsurf/elliptic.hpp"
#include "ellsurf/expr.hpp"

namespace test {

using namespace ellsurf;

inline const ConstantField Q = ConstantField::rationals();

inline FieldElement F(const std::string& s, ConstantField k = Q, const std::string& var = "t") {
    return parse_field_element(s, k, var);
}

inline Polynomial P(const std::string& s, ConstantField k = Q, const std::string& var = "t") {
    FieldElement f = F(s, k, var);
    REQUIRE(f.is_polynomial());
    return f.num();
}

inline Place place(const std::string& s, ConstantField k = Q) {
    if (s == "inf") return Place::infinity(k);
    return Place::finite(P(s, k));
}

inline WeierstrassModel short_curve(const std::string& a4, const std::string& a6, ConstantField k = Q,
                                    const std::string& var = "t") {
    return WeierstrassModel::short_form(F(a4, k, var), F(a6, k, var));
}

inline Polynomial random_poly(std::mt19937_64& rng, ConstantField k, int degree, long range = 5) {
    std::uniform_int_distribution<long> d(-range, range);
    std::vector<Scalar> c;
    for (int i = 0; i <= degree; ++i) c.emplace_back(k, d(rng));
    return Polynomial(c, Scalar(k, 0L));
}

inline FieldElement random_element(std::mt19937_64& rng, ConstantField k, int degree, long range = 5) {
    Polynomial den = random_poly(rng, k, degree, range);
    while (den.is_zero()) den = random_poly(rng, k, degree, range);
    return FieldElement(random_poly(rng, k, degree, range), den);
}

}  // namespace test

#endif
