#include "ellsurf/expr.hpp"

#include <algorithm>
#include <cctype>
#include <set>

namespace ellsurf {

namespace {

class Parser {
public:
    explicit Parser(const std::string& text) : s_(text) {}

    Expr parse() {
        skip();
        if (pos_ >= s_.size()) throw ParseError("empty expression", pos_);
        Expr e = expr();
        skip();
        if (pos_ < s_.size()) throw ParseError(std::string("unexpected '") + s_[pos_] + "'", pos_);
        return e;
    }

private:
    static Expr node(ExprNode::Kind k, std::size_t pos, Expr l, Expr r) {
        auto n = std::make_shared<ExprNode>();
        n->kind = k;
        n->position = pos;
        n->lhs = std::move(l);
        n->rhs = std::move(r);
        return n;
    }

    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool peek(char c) {
        skip();
        return pos_ < s_.size() && s_[pos_] == c;
    }

    Expr expr() {
        Expr e = term();
        while (peek('+') || peek('-')) {
            std::size_t at = pos_;
            char op = s_[pos_++];
            e = node(op == '+' ? ExprNode::Kind::Add : ExprNode::Kind::Sub, at, e, term());
        }
        return e;
    }

    Expr term() {
        Expr e = factor();
        while (peek('*') || peek('/')) {
            std::size_t at = pos_;
            char op = s_[pos_++];
            e = node(op == '*' ? ExprNode::Kind::Mul : ExprNode::Kind::Div, at, e, factor());
        }
        return e;
    }

    Expr factor() {
        if (peek('-') || peek('+')) {
            std::size_t at = pos_;
            char op = s_[pos_++];
            Expr inner = factor();
            return op == '-' ? node(ExprNode::Kind::Neg, at, inner, nullptr) : inner;
        }
        Expr b = base();
        if (peek('^')) {
            std::size_t at = pos_++;
            skip();
            bool negative = false;
            if (pos_ < s_.size() && s_[pos_] == '-') {
                negative = true;
                ++pos_;
            }
            skip();
            if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_])))
                throw ParseError("expected integer exponent", pos_);
            auto n = std::make_shared<ExprNode>();
            n->kind = ExprNode::Kind::Pow;
            n->position = at;
            n->integer = integer();
            if (negative) n->integer = -n->integer;
            n->lhs = b;
            return n;
        }
        return b;
    }

    mpz_class integer() {
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        return mpz_class(s_.substr(start, pos_ - start));
    }

    Expr base() {
        skip();
        if (pos_ >= s_.size()) throw ParseError("unexpected end of expression", pos_);
        char c = s_[pos_];
        auto n = std::make_shared<ExprNode>();
        n->position = pos_;
        if (std::isdigit(static_cast<unsigned char>(c))) {
            n->kind = ExprNode::Kind::Integer;
            n->integer = integer();
            return n;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos_;
            while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
            n->kind = ExprNode::Kind::Variable;
            n->name = s_.substr(start, pos_ - start);
            return n;
        }
        if (c == '(') {
            ++pos_;
            Expr e = expr();
            if (!peek(')')) throw ParseError("expected ')'", pos_);
            ++pos_;
            return e;
        }
        throw ParseError(std::string("unexpected '") + c + "'", pos_);
    }

    const std::string& s_;
    std::size_t pos_ = 0;
};

void collect(const Expr& e, std::set<std::string>& out) {
    if (!e) return;
    if (e->kind == ExprNode::Kind::Variable) out.insert(e->name);
    collect(e->lhs, out);
    collect(e->rhs, out);
}

struct FieldAlgebra {
    ConstantField k;
    const std::string& var;
    FieldElement integer(const mpz_class& n) const { return constant(k, mpq_class(n)); }
    FieldElement variable(const std::string& name, std::size_t pos) const {
        if (name != var) throw ParseError("unknown variable '" + name + "'", pos);
        return coordinate(k);
    }
};

// Single-token coefficients print bare; anything else is parenthesized.
bool is_atomic(const std::string& s) {
    for (std::size_t i = 0; i < s.size(); ++i) {
        char c = s[i];
        if (c == ' ' || c == '/' || c == '*' || (c == '-' && i > 0)) return false;
    }
    return true;
}

// Whether s has a binary + or - outside parentheses.
bool has_top_level_sum(const std::string& s) {
    int depth = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '(') ++depth;
        if (s[i] == ')') --depth;
        if (depth == 0 && i > 0 && (s[i] == '+' || s[i] == '-') && s[i - 1] == ' ') return true;
    }
    return false;
}

std::string power(const std::string& var, int e) {
    if (e == 0) return "";
    if (e == 1) return var;
    return var + "^" + std::to_string(e);
}

// Generic polynomial printer; coefficient printer returns the text of a coefficient.
template <class R, class CoeffText, class IsNeg, class IsOne>
std::string format_terms(const Poly<R>& p, const std::string& var, CoeffText text, IsNeg neg, IsOne one) {
    if (p.is_zero()) return "0";
    std::string out;
    for (int i = p.degree(); i >= 0; --i) {
        const R& c = p.coeff(i);
        if (c.is_zero()) continue;
        bool negative = neg(c);
        R a = negative ? -c : c;
        std::string body;
        if (i == 0) {
            body = text(a);
            if (has_top_level_sum(body) || (!body.empty() && body[0] == '-')) body = "(" + body + ")";
        } else if (one(a)) {
            body = power(var, i);
        } else {
            std::string t = text(a);
            if (!is_atomic(t)) t = "(" + t + ")";
            body = t + "*" + power(var, i);
        }
        if (out.empty())
            out = negative ? "-" + body : body;
        else
            out += negative ? " - " + body : " + " + body;
    }
    return out;
}

}  // namespace

Expr parse_expression(const std::string& text) { return Parser(text).parse(); }

std::vector<std::string> variables_of(const Expr& e) {
    std::set<std::string> s;
    collect(e, s);
    return {s.begin(), s.end()};
}

FieldElement parse_field_element(const std::string& text, ConstantField k, const std::string& var) {
    FieldAlgebra alg{k, var};
    try {
        return evaluate<FieldElement>(parse_expression(text), alg);
    } catch (const DivisionByZero& e) {
        throw InputError(std::string("division by zero constant in '") + text + "'");
    }
}

std::string format_polynomial(const Polynomial& p, const std::string& var) {
    return format_terms(
        p, var, [](const Scalar& c) { return c.to_string(); }, [](const Scalar& c) { return c.prints_negative(); },
        [](const Scalar& c) { return c.is_one(); });
}

std::string format_field_element(const FieldElement& f, const std::string& var) {
    std::string n = format_polynomial(f.num(), var);
    if (f.den().degree() == 0) return n;
    std::string d = format_polynomial(f.den(), var);
    bool single_term_num = std::count_if(f.num().coeffs().begin(), f.num().coeffs().end(), [](const Scalar& c) { return !c.is_zero(); }) == 1;
    if (!single_term_num) n = "(" + n + ")";
    bool single_term_den = std::count_if(f.den().coeffs().begin(), f.den().coeffs().end(), [](const Scalar& c) { return !c.is_zero(); }) == 1;
    if (!single_term_den) d = "(" + d + ")";
    return n + "/" + d;
}

std::string format_poly_over_field(const Poly<FieldElement>& p, const std::string& var, const std::string& xvar) {
    return format_terms(
        p, xvar, [&](const FieldElement& c) { return format_field_element(c, var); },
        [](const FieldElement& c) {
            return c.is_constant() && c.constant_value().prints_negative();
        },
        [](const FieldElement& c) { return c.is_one(); });
}

std::string format_fraction_over_field(const Fraction<FieldElement>& p, const std::string& var, const std::string& xvar) {
    std::string n = format_poly_over_field(p.num(), var, xvar);
    if (p.den().degree() == 0) return n;
    return "(" + n + ")/(" + format_poly_over_field(p.den(), var, xvar) + ")";
}

}  // namespace ellsurf
