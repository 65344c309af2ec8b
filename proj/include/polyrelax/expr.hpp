#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <vector>

#include "polyrelax/errors.hpp"

namespace polyrelax {

// --- tokens -----------------------------------------------------------------

enum class TokenKind { number, identifier, op, paren, end };

struct Token {
    TokenKind kind;
    std::string text;      // source slice; empty only for `end`
    std::size_t position;  // character offset into the source
};

std::vector<Token> tokenize(const std::string& text);

// --- dual numbers -----------------------------------------------------------

// Value/derivative pair propagated by forward-mode differentiation.
struct Dual {
    double val;
    double der;
};

inline Dual operator+(Dual a, Dual b) { return {a.val + b.val, a.der + b.der}; }
inline Dual operator-(Dual a, Dual b) { return {a.val - b.val, a.der - b.der}; }
inline Dual operator-(Dual a) { return {-a.val, -a.der}; }
inline Dual operator*(Dual a, Dual b) {
    return {a.val * b.val, a.der * b.val + a.val * b.der};
}
inline Dual operator/(Dual a, Dual b) {
    return {a.val / b.val, (a.der * b.val - a.val * b.der) / (b.val * b.val)};
}
inline Dual operator*(double c, Dual a) { return {c * a.val, c * a.der}; }
inline Dual operator+(Dual a, double c) { return {a.val + c, a.der}; }

Dual dual_sin(Dual a);
Dual dual_cos(Dual a);
Dual dual_tan(Dual a);
Dual dual_exp(Dual a);
Dual dual_log(Dual a);
Dual dual_sqrt(Dual a);
Dual dual_abs(Dual a);  // derivative at 0 defined as 0
Dual dual_erf(Dual a);
Dual dual_gamma(Dual a);
Dual dual_pow(Dual a, double exponent);  // constant exponent only

// --- expression trees -------------------------------------------------------

enum class UnaryFn { sin, cos, tan, exp, log, sqrt, abs, erf, gamma, neg };

struct ExprAst;
using ExprPtr = std::shared_ptr<const ExprAst>;

struct ExprAst {
    enum class Kind { constant, variable, unary, binary };

    Kind kind;
    double value = 0.0;          // constant nodes
    UnaryFn fn = UnaryFn::neg;   // unary nodes
    char op = 0;                 // binary nodes: one of + - * / ^
    ExprPtr child;               // unary operand
    ExprPtr left, right;         // binary operands
};

// Precedence lowest to highest: {+,-} < {*,/} < unary minus < ^ (right-
// associative); function application binds tightest. `^` exponents must be
// constant subtrees (no x), enforced here.
ExprPtr parse(const std::vector<Token>& tokens);
ExprPtr parse_expression(const std::string& text);  // tokenize + parse

// Evaluates (f(x), f'(x)). Throws DomainError outside an elementary
// function's real domain, NonFiniteError if the result is NaN or infinite.
Dual eval_dual(const ExprAst& ast, double x);
inline Dual eval_dual(const ExprPtr& ast, double x) { return eval_dual(*ast, x); }

// Fully parenthesized form; reparses to a structurally identical tree.
std::string to_string(const ExprAst& ast);
inline std::string to_string(const ExprPtr& ast) { return to_string(*ast); }

bool structurally_equal(const ExprAst& a, const ExprAst& b);
inline bool structurally_equal(const ExprPtr& a, const ExprPtr& b) {
    return structurally_equal(*a, *b);
}

} // namespace polyrelax
