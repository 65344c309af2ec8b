#include "polyrelax/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <map>

#include "polyrelax/special_functions.hpp"

namespace polyrelax {

// --- tokenizer ---------------------------------------------------------------

std::vector<Token> tokenize(const std::string& text) {
    std::vector<Token> out;
    const std::size_t n = text.size();
    std::size_t i = 0;
    auto is_digit = [](char c) { return c >= '0' && c <= '9'; };
    auto is_alpha = [](char c) {
        return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
    };
    while (i < n) {
        const char c = text[i];
        if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
            ++i;
            continue;
        }
        if (is_digit(c) || (c == '.' && i + 1 < n && is_digit(text[i + 1]))) {
            const std::size_t start = i;
            while (i < n && is_digit(text[i])) ++i;
            if (i < n && text[i] == '.') {
                ++i;
                while (i < n && is_digit(text[i])) ++i;
            }
            if (i < n && (text[i] == 'e' || text[i] == 'E')) {
                std::size_t j = i + 1;
                if (j < n && (text[j] == '+' || text[j] == '-')) ++j;
                if (j < n && is_digit(text[j])) {
                    i = j;
                    while (i < n && is_digit(text[i])) ++i;
                }
            }
            out.push_back({TokenKind::number, text.substr(start, i - start), start});
            continue;
        }
        if (is_alpha(c)) {
            const std::size_t start = i;
            while (i < n && (is_alpha(text[i]) || is_digit(text[i]))) ++i;
            out.push_back({TokenKind::identifier, text.substr(start, i - start), start});
            continue;
        }
        if (c == '+' || c == '-' || c == '*' || c == '/' || c == '^') {
            out.push_back({TokenKind::op, std::string(1, c), i});
            ++i;
            continue;
        }
        if (c == '(' || c == ')') {
            out.push_back({TokenKind::paren, std::string(1, c), i});
            ++i;
            continue;
        }
        throw LexError("unrecognized character '" + std::string(1, c) + "'", i);
    }
    out.push_back({TokenKind::end, "", n});
    return out;
}

// --- dual arithmetic ---------------------------------------------------------

Dual dual_sin(Dual a) { return {std::sin(a.val), std::cos(a.val) * a.der}; }
Dual dual_cos(Dual a) { return {std::cos(a.val), -std::sin(a.val) * a.der}; }

Dual dual_tan(Dual a) {
    const double c = std::cos(a.val);
    return {std::tan(a.val), a.der / (c * c)};
}

Dual dual_exp(Dual a) {
    const double e = std::exp(a.val);
    return {e, e * a.der};
}

Dual dual_log(Dual a) {
    if (a.val <= 0.0) throw DomainError("log", a.val);
    return {std::log(a.val), a.der / a.val};
}

Dual dual_sqrt(Dual a) {
    if (a.val < 0.0) throw DomainError("sqrt", a.val);
    const double s = std::sqrt(a.val);
    return {s, a.der / (2.0 * s)};
}

Dual dual_abs(Dual a) {
    // Subgradient midpoint at the kink: d|x|/dx := 0 at x = 0.
    const double d = a.val > 0.0 ? a.der : (a.val < 0.0 ? -a.der : 0.0);
    return {std::fabs(a.val), d};
}

Dual dual_erf(Dual a) { return {erf_kernel(a.val), erf_prime(a.val) * a.der}; }

Dual dual_gamma(Dual a) {
    if (a.val <= 0.0) throw DomainError("gamma", a.val);
    return {gamma_kernel(a.val), gamma_prime(a.val) * a.der};
}

Dual dual_pow(Dual a, double exponent) {
    const bool integral = std::isfinite(exponent) && exponent == std::floor(exponent);
    if (!integral && a.val < 0.0) throw DomainError("^", a.val);
    const double v = std::pow(a.val, exponent);
    const double d = exponent == 0.0
                         ? 0.0
                         : exponent * std::pow(a.val, exponent - 1.0) * a.der;
    return {v, d};
}

// --- parser ------------------------------------------------------------------

namespace {

ExprPtr make_const(double v) {
    auto n = std::make_shared<ExprAst>();
    n->kind = ExprAst::Kind::constant;
    n->value = v;
    return n;
}

ExprPtr make_var() {
    auto n = std::make_shared<ExprAst>();
    n->kind = ExprAst::Kind::variable;
    return n;
}

ExprPtr make_unary(UnaryFn fn, ExprPtr child) {
    auto n = std::make_shared<ExprAst>();
    n->kind = ExprAst::Kind::unary;
    n->fn = fn;
    n->child = std::move(child);
    return n;
}

ExprPtr make_binary(char op, ExprPtr left, ExprPtr right) {
    auto n = std::make_shared<ExprAst>();
    n->kind = ExprAst::Kind::binary;
    n->op = op;
    n->left = std::move(left);
    n->right = std::move(right);
    return n;
}

const std::map<std::string, UnaryFn>& function_table() {
    static const std::map<std::string, UnaryFn> table = {
        {"sin", UnaryFn::sin},   {"cos", UnaryFn::cos},  {"tan", UnaryFn::tan},
        {"exp", UnaryFn::exp},   {"log", UnaryFn::log},  {"sqrt", UnaryFn::sqrt},
        {"abs", UnaryFn::abs},   {"erf", UnaryFn::erf},  {"gamma", UnaryFn::gamma},
    };
    return table;
}

bool contains_variable(const ExprAst& n) {
    switch (n.kind) {
        case ExprAst::Kind::constant: return false;
        case ExprAst::Kind::variable: return true;
        case ExprAst::Kind::unary: return contains_variable(*n.child);
        case ExprAst::Kind::binary:
            return contains_variable(*n.left) || contains_variable(*n.right);
    }
    return false;
}

class Parser {
public:
    explicit Parser(const std::vector<Token>& toks) : toks_(toks) {}

    ExprPtr run() {
        ExprPtr e = parse_expr();
        if (peek().kind != TokenKind::end)
            throw ParseError("unexpected trailing input '" + peek().text + "'",
                             peek().position);
        return e;
    }

private:
    const Token& peek() const { return toks_[pos_]; }
    const Token& advance() { return toks_[pos_++]; }

    bool match_op(char c) {
        if (peek().kind == TokenKind::op && peek().text[0] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    // expr := term (('+'|'-') term)*
    ExprPtr parse_expr() {
        ExprPtr left = parse_term();
        for (;;) {
            if (match_op('+')) left = make_binary('+', left, parse_term());
            else if (match_op('-')) left = make_binary('-', left, parse_term());
            else return left;
        }
    }

    // term := unary (('*'|'/') unary)*
    ExprPtr parse_term() {
        ExprPtr left = parse_unary();
        for (;;) {
            if (match_op('*')) left = make_binary('*', left, parse_unary());
            else if (match_op('/')) left = make_binary('/', left, parse_unary());
            else return left;
        }
    }

    // unary := '-' unary | power; binds looser than '^' so -x^2 = -(x^2)
    ExprPtr parse_unary() {
        if (match_op('-')) return make_unary(UnaryFn::neg, parse_unary());
        return parse_power();
    }

    // power := primary ('^' unary)?, right-associative via the unary recursion
    ExprPtr parse_power() {
        ExprPtr base = parse_primary();
        if (peek().kind == TokenKind::op && peek().text[0] == '^') {
            const std::size_t caret_pos = peek().position;
            ++pos_;
            ExprPtr exponent = parse_unary();
            if (contains_variable(*exponent))
                throw NonConstantExponentError(
                    "exponent of '^' must be constant (contains x)", caret_pos);
            return make_binary('^', base, exponent);
        }
        return base;
    }

    ExprPtr parse_primary() {
        const Token& t = peek();
        if (t.kind == TokenKind::number) {
            advance();
            return make_const(std::strtod(t.text.c_str(), nullptr));
        }
        if (t.kind == TokenKind::identifier) {
            advance();
            const auto& fns = function_table();
            auto it = fns.find(t.text);
            if (it != fns.end()) {
                if (!(peek().kind == TokenKind::paren && peek().text == "("))
                    throw ParseError("function '" + t.text + "' requires '('",
                                     peek().position);
                advance();
                ExprPtr arg = parse_expr();
                expect_close_paren();
                return make_unary(it->second, std::move(arg));
            }
            if (t.text == "x") return make_var();
            throw ParseError("unknown identifier '" + t.text + "'", t.position);
        }
        if (t.kind == TokenKind::paren && t.text == "(") {
            advance();
            ExprPtr e = parse_expr();
            expect_close_paren();
            return e;
        }
        throw ParseError("expected a number, 'x', a function call, or '('",
                         t.position);
    }

    void expect_close_paren() {
        if (!(peek().kind == TokenKind::paren && peek().text == ")"))
            throw ParseError("expected ')'", peek().position);
        ++pos_;
    }

    const std::vector<Token>& toks_;
    std::size_t pos_ = 0;
};

const char* unary_name(UnaryFn fn) {
    switch (fn) {
        case UnaryFn::sin: return "sin";
        case UnaryFn::cos: return "cos";
        case UnaryFn::tan: return "tan";
        case UnaryFn::exp: return "exp";
        case UnaryFn::log: return "log";
        case UnaryFn::sqrt: return "sqrt";
        case UnaryFn::abs: return "abs";
        case UnaryFn::erf: return "erf";
        case UnaryFn::gamma: return "gamma";
        case UnaryFn::neg: return "-";
    }
    return "?";
}

Dual apply_unary(UnaryFn fn, Dual a) {
    switch (fn) {
        case UnaryFn::sin: return dual_sin(a);
        case UnaryFn::cos: return dual_cos(a);
        case UnaryFn::tan: return dual_tan(a);
        case UnaryFn::exp: return dual_exp(a);
        case UnaryFn::log: return dual_log(a);
        case UnaryFn::sqrt: return dual_sqrt(a);
        case UnaryFn::abs: return dual_abs(a);
        case UnaryFn::erf: return dual_erf(a);
        case UnaryFn::gamma: return dual_gamma(a);
        case UnaryFn::neg: return -a;
    }
    throw Error("unreachable unary function kind");
}

Dual eval_node(const ExprAst& n, double x) {
    switch (n.kind) {
        case ExprAst::Kind::constant: return {n.value, 0.0};
        case ExprAst::Kind::variable: return {x, 1.0};
        case ExprAst::Kind::unary: return apply_unary(n.fn, eval_node(*n.child, x));
        case ExprAst::Kind::binary: {
            if (n.op == '^')
                return dual_pow(eval_node(*n.left, x), eval_node(*n.right, x).val);
            const Dual a = eval_node(*n.left, x);
            const Dual b = eval_node(*n.right, x);
            switch (n.op) {
                case '+': return a + b;
                case '-': return a - b;
                case '*': return a * b;
                case '/': return a / b;
            }
            throw Error("unreachable binary operator");
        }
    }
    throw Error("unreachable node kind");
}

std::string format_real(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

} // namespace

ExprPtr parse(const std::vector<Token>& tokens) {
    if (tokens.empty() || tokens.back().kind != TokenKind::end)
        throw ParseError("token stream must end with an end token", 0);
    return Parser(tokens).run();
}

ExprPtr parse_expression(const std::string& text) {
    return parse(tokenize(text));
}

Dual eval_dual(const ExprAst& ast, double x) {
    const Dual r = eval_node(ast, x);
    if (!std::isfinite(r.val) || !std::isfinite(r.der))
        throw NonFiniteError("expression evaluated to a non-finite value at x=" +
                             format_real(x));
    return r;
}

std::string to_string(const ExprAst& n) {
    switch (n.kind) {
        case ExprAst::Kind::constant: return format_real(n.value);
        case ExprAst::Kind::variable: return "x";
        case ExprAst::Kind::unary:
            if (n.fn == UnaryFn::neg) return "(-" + to_string(*n.child) + ")";
            return std::string(unary_name(n.fn)) + "(" + to_string(*n.child) + ")";
        case ExprAst::Kind::binary:
            return "(" + to_string(*n.left) + n.op + to_string(*n.right) + ")";
    }
    throw Error("unreachable node kind");
}

bool structurally_equal(const ExprAst& a, const ExprAst& b) {
    if (a.kind != b.kind) return false;
    switch (a.kind) {
        case ExprAst::Kind::constant: return a.value == b.value;
        case ExprAst::Kind::variable: return true;
        case ExprAst::Kind::unary:
            return a.fn == b.fn && structurally_equal(*a.child, *b.child);
        case ExprAst::Kind::binary:
            return a.op == b.op && structurally_equal(*a.left, *b.left) &&
                   structurally_equal(*a.right, *b.right);
    }
    return false;
}

} // namespace polyrelax
