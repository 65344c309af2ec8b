#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <string>
#include <vector>

#include "polyrelax/expr.hpp"
#include "polyrelax/special_functions.hpp"

#include "helpers.hpp"

using namespace polyrelax;

namespace {
constexpr double kPi = 3.141592653589793;
constexpr double kEulerGamma = 0.5772156649015329;

ExprPtr cnode(double v) {
    auto n = std::make_shared<ExprAst>();
    n->kind = ExprAst::Kind::constant;
    n->value = v;
    return n;
}

ExprPtr bnode(char op, ExprPtr l, ExprPtr r) {
    auto n = std::make_shared<ExprAst>();
    n->kind = ExprAst::Kind::binary;
    n->op = op;
    n->left = std::move(l);
    n->right = std::move(r);
    return n;
}
} // namespace

TEST_CASE("tokenize covers numbers, identifiers, operators, parens") {
    auto toks = tokenize("x^3");
    REQUIRE(toks.size() == 4);
    CHECK(toks[0].kind == TokenKind::identifier);
    CHECK(toks[0].text == "x");
    CHECK(toks[1].kind == TokenKind::op);
    CHECK(toks[1].text == "^");
    CHECK(toks[2].kind == TokenKind::number);
    CHECK(toks[2].text == "3");
    CHECK(toks[3].kind == TokenKind::end);

    // positions strictly increase and cover the input
    auto t2 = tokenize("1/(1+exp(-x))");
    REQUIRE(t2.size() == 12);  // 11 real tokens plus end
    CHECK(t2[t2.size() - 2].text == ")");
    CHECK(t2[t2.size() - 3].text == ")");
    for (std::size_t i = 1; i < t2.size(); ++i)
        CHECK(t2[i].position > t2[i - 1].position);

    CHECK(tokenize("1.5e-3 2E+4 .5").size() == 4);
}

TEST_CASE("tokenize rejects unknown characters with a position") {
    try {
        tokenize("x $ 2");
        FAIL("expected LexError");
    } catch (const LexError& e) {
        CHECK(e.position() == 2);
    }
}

TEST_CASE("parse applies the documented precedence") {
    ExprPtr p = parse_expression("x^3");
    REQUIRE(p->kind == ExprAst::Kind::binary);
    CHECK(p->op == '^');
    CHECK(p->left->kind == ExprAst::Kind::variable);
    CHECK(p->right->kind == ExprAst::Kind::constant);
    CHECK(p->right->value == 3.0);

    // 2*x^3 - x parses as ((2*(x^3)) - x)
    ExprPtr q = parse_expression("2*x^3 - x");
    REQUIRE(q->op == '-');
    REQUIRE(q->left->op == '*');
    CHECK(q->left->left->value == 2.0);
    CHECK(q->left->right->op == '^');
    CHECK(q->right->kind == ExprAst::Kind::variable);

    // unary minus binds looser than ^: -x^2 = -(x^2)
    CHECK(eval_dual(parse_expression("-x^2"), 3.0).val == doctest::Approx(-9.0));
    // but a negated exponent works: x^-2 = 1/x^2
    CHECK(eval_dual(parse_expression("x^-2"), 2.0).val == doctest::Approx(0.25));
    // right associativity: x^2^3 = x^8
    CHECK(eval_dual(parse_expression("x^2^3"), 2.0).val == doctest::Approx(256.0));
}

TEST_CASE("parse rejects malformed input") {
    CHECK_THROWS_AS(parse_expression("x^x"), NonConstantExponentError);
    CHECK_THROWS_AS(parse_expression("x^(2+x)"), NonConstantExponentError);
    CHECK_THROWS_AS(parse_expression("sin x"), ParseError);
    CHECK_THROWS_AS(parse_expression("(x"), ParseError);
    CHECK_THROWS_AS(parse_expression("y"), ParseError);
    CHECK_THROWS_AS(parse_expression("x +"), ParseError);
    CHECK_THROWS_AS(parse_expression("foo(x)"), ParseError);
    CHECK_THROWS_AS(parse_expression(""), ParseError);
}

TEST_CASE("eval_dual matches hand-computed value/derivative pairs") {
    Dual d = eval_dual(parse_expression("x^3"), 2.0);
    CHECK(d.val == doctest::Approx(8.0).epsilon(1e-14));
    CHECK(d.der == doctest::Approx(12.0).epsilon(1e-14));

    Dual s = eval_dual(parse_expression("1/(1+exp(-x))"), 0.0);
    CHECK(s.val == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(s.der == doctest::Approx(0.25).epsilon(1e-14));

    Dual t = eval_dual(parse_expression("sin(x)"), kPi);
    CHECK(std::fabs(t.val - 0.0) <= 1e-12);
    CHECK(std::fabs(t.der - (-1.0)) <= 1e-12);
}

TEST_CASE("eval_dual reports domain and finiteness failures") {
    CHECK_THROWS_AS(eval_dual(parse_expression("log(x)"), -1.0), DomainError);
    CHECK_THROWS_AS(eval_dual(parse_expression("sqrt(x)"), -4.0), DomainError);
    CHECK_THROWS_AS(eval_dual(parse_expression("gamma(x)"), 0.0), DomainError);
    CHECK_THROWS_AS(eval_dual(parse_expression("x^0.5"), -1.0), DomainError);
    CHECK_THROWS_AS(eval_dual(parse_expression("1/x"), 0.0), NonFiniteError);
    // derivative of sqrt blows up at 0 even though the value is fine
    CHECK_THROWS_AS(eval_dual(parse_expression("sqrt(x)"), 0.0), NonFiniteError);
}

TEST_CASE("abs derivative at the kink is the subgradient midpoint 0") {
    CHECK(eval_dual(parse_expression("abs(x)"), 0.0).der == 0.0);
    // makes x|x| differentiable with derivative 2|x| everywhere
    Dual d = eval_dual(parse_expression("x*abs(x)"), 0.0);
    CHECK(d.val == 0.0);
    CHECK(d.der == 0.0);
    CHECK(eval_dual(parse_expression("x*abs(x)"), -1.5).der ==
          doctest::Approx(3.0).epsilon(1e-14));
}

TEST_CASE("erf kernel agrees with an independent series oracle") {
    CHECK(erf_kernel(0.0) == 0.0);
    CHECK(std::fabs(erf_kernel(6.0) - 1.0) <= 1e-12);
    CHECK(erf_kernel(-1.0) == -erf_kernel(1.0));
    for (double x : {0.1, 0.25, 0.5, 1.0, 1.5, 2.0}) {
        CHECK(std::fabs(erf_kernel(x) - testutil::erf_series_oracle(x)) <= 1e-12);
    }
    // derivative is (2/sqrt(pi)) e^{-x^2} by definition
    CHECK(erf_prime(0.0) == doctest::Approx(1.1283791670955126).epsilon(1e-15));
    CHECK(erf_prime(1.0) ==
          doctest::Approx(1.1283791670955126 * std::exp(-1.0)).epsilon(1e-15));
}

TEST_CASE("gamma kernel hits factorial and reflection identities") {
    CHECK(gamma_kernel(5.0) == doctest::Approx(24.0).epsilon(1e-10));
    CHECK(gamma_kernel(1.0) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(gamma_kernel(0.5) ==
          doctest::Approx(std::sqrt(kPi)).epsilon(1e-10));
    CHECK_THROWS_AS(gamma_kernel(-1.0), DomainError);
    CHECK_THROWS_AS(gamma_kernel(0.0), DomainError);

    // Gamma'(1) = -EulerGamma, cross-checked by central finite difference
    CHECK(std::fabs(gamma_prime(1.0) + kEulerGamma) <= 1e-8);
    const double fd =
        (gamma_kernel(1.0 + 1e-6) - gamma_kernel(1.0 - 1e-6)) / 2e-6;
    CHECK(std::fabs(gamma_prime(1.0) - fd) <= 1e-6);
}

TEST_CASE("derivatives agree with finite differences across the battery") {
    struct Probe {
        const char* text;
        double lo, hi;
    };
    const Probe probes[] = {
        {"sin(x)", -6.0, 6.0},        {"cos(x)", -6.0, 6.0},
        {"tan(x)", -1.4, 1.4},        {"exp(x)", -3.0, 3.0},
        {"log(x)", 0.1, 10.0},        {"sqrt(x)", 0.01, 9.0},
        {"abs(x)", 0.05, 2.0},        {"erf(x)", -2.0, 2.0},
        {"gamma(x)", 0.5, 8.0},       {"x^3", -2.0, 2.0},
    };
    auto rng = testutil::seeded_rng(42);
    for (const Probe& probe : probes) {
        ExprPtr ast = parse_expression(probe.text);
        std::uniform_real_distribution<double> dist(probe.lo, probe.hi);
        auto value_at = [&](double x) { return eval_dual(ast, x).val; };
        for (int i = 0; i < 1000; ++i) {
            const double x = dist(rng);
            const double ad = eval_dual(ast, x).der;
            const double fd = testutil::central_diff(value_at, x);
            CHECK(std::fabs(ad - fd) <= 1e-6 * std::max(1.0, std::fabs(fd)));
        }
    }
}

TEST_CASE("pretty-print round-trips to a structurally identical tree") {
    const char* corpus[] = {
        "x",
        "3",
        "x^3",
        "x^-2",
        "-x^2",
        "2*x^3 - x",
        "x*abs(x)",
        "1/(1+exp(-x))",
        "sin(x)",
        "cos(x)*sin(x)",
        "tan(x/4)",
        "exp(-x*x)",
        "log(x+10)",
        "sqrt(x*x+1)",
        "erf(x)",
        "gamma(x)",
        "x^2^3",
        "x/2/3",
        "x-1-2",
        "-(-x)",
        "-x",
        "x^0.5",
        "1.5e-3*x",
        "2E+4 + x",
        ".5*x",
        "(x+1)*(x-1)",
        "x^3 - 3*x^2 + 3*x - 1",
        "sin(cos(tan(x/10)))",
        "exp(log(x+5))",
        "abs(x-2)*abs(x+2)",
        "x^4 - x^3",
        "gamma(x/2 + 3)",
    };
    for (const char* text : corpus) {
        ExprPtr once = parse_expression(text);
        ExprPtr twice = parse_expression(to_string(once));
        CHECK_MESSAGE(structurally_equal(once, twice), text);
    }
}

TEST_CASE("dual arithmetic is linear in function combinations") {
    auto rng = testutil::seeded_rng(7);
    std::uniform_real_distribution<double> coef(-3.0, 3.0);
    std::uniform_real_distribution<double> xs(0.2, 2.5);
    ExprPtr f = parse_expression("sin(x)*x");
    ExprPtr g = parse_expression("exp(-x) + x^2");
    for (int i = 0; i < 200; ++i) {
        const double a = coef(rng);
        const double b = coef(rng);
        const double x = xs(rng);
        // a*f + b*g assembled as an expression tree
        ExprPtr combo = bnode('+', bnode('*', cnode(a), f), bnode('*', cnode(b), g));
        const Dual lhs = eval_dual(combo, x);
        const Dual df = eval_dual(f, x);
        const Dual dg = eval_dual(g, x);
        CHECK(lhs.val ==
              doctest::Approx(a * df.val + b * dg.val).epsilon(1e-12));
        CHECK(lhs.der ==
              doctest::Approx(a * df.der + b * dg.der).epsilon(1e-12));
    }
}

TEST_CASE("parse error positions point at the offending token") {
    try {
        parse_expression("x^x");
        FAIL("expected NonConstantExponentError");
    } catch (const NonConstantExponentError& e) {
        CHECK(e.position() == 1);
    }
    try {
        parse_expression("2 + foo(x)");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.position() == 4);
    }
}
