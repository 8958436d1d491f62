#ifndef ELLSURF_EXPR_HPP
#define ELLSURF_EXPR_HPP

#include <memory>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "ellsurf/error.hpp"
#include "ellsurf/funcfield.hpp"

namespace ellsurf {

// Parsed arithmetic expression.
//
//   expr   := term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*
//   factor := ('-'|'+') factor | base ('^' ['-'] integer)?
//   base   := integer | identifier | '(' expr ')'
//
// Whitespace is insignificant. Which identifiers are allowed is decided when
// the expression is evaluated.
struct ExprNode {
    enum class Kind { Integer, Variable, Add, Sub, Mul, Div, Neg, Pow };
    Kind kind;
    mpz_class integer;  // Integer; exponent for Pow
    std::string name;   // Variable
    std::size_t position = 0;
    std::shared_ptr<const ExprNode> lhs, rhs;
};
using Expr = std::shared_ptr<const ExprNode>;

// Throws ParseError with the offending position.
Expr parse_expression(const std::string& text);

// Identifiers occurring in e.
std::vector<std::string> variables_of(const Expr& e);

// Evaluates e in an algebra. Alg must provide
//   T integer(const mpz_class&), T variable(const std::string&, std::size_t position)
// and T must support + - * / unary - and pow(long).
template <class T, class Alg>
T evaluate(const Expr& e, Alg& alg) {
    using K = ExprNode::Kind;
    switch (e->kind) {
        case K::Integer: return alg.integer(e->integer);
        case K::Variable: return alg.variable(e->name, e->position);
        case K::Neg: return -evaluate<T>(e->lhs, alg);
        case K::Add: return evaluate<T>(e->lhs, alg) + evaluate<T>(e->rhs, alg);
        case K::Sub: return evaluate<T>(e->lhs, alg) - evaluate<T>(e->rhs, alg);
        case K::Mul: return evaluate<T>(e->lhs, alg) * evaluate<T>(e->rhs, alg);
        case K::Div: {
            T d = evaluate<T>(e->rhs, alg);
            if (d.is_zero()) throw ParseError("division by zero", e->rhs->position);
            return evaluate<T>(e->lhs, alg) / d;
        }
        case K::Pow: {
            T b = evaluate<T>(e->lhs, alg);
            if (!e->integer.fits_slong_p()) throw ParseError("exponent too large", e->position);
            long n = e->integer.get_si();
            if (n < 0 && b.is_zero()) throw ParseError("division by zero", e->position);
            return b.pow(n);
        }
    }
    throw std::logic_error("unreachable");
}

// Parses an element of k(var). Over F_p integers are reduced modulo p.
FieldElement parse_field_element(const std::string& text, ConstantField k, const std::string& var);

// Canonical printing. Polynomials print in descending powers ("s^5 - 6*s^3 + 8*s");
// field elements as num or num/den with a monic den ("-8/(s^5 - 6*s^3 + 8*s)").
std::string format_polynomial(const Polynomial& p, const std::string& var);
std::string format_field_element(const FieldElement& f, const std::string& var);
// Polynomial in xvar with coefficients in k(var).
std::string format_poly_over_field(const Poly<FieldElement>& p, const std::string& var, const std::string& xvar);
std::string format_fraction_over_field(const Fraction<FieldElement>& p, const std::string& var, const std::string& xvar);

}  // namespace ellsurf

#endif
