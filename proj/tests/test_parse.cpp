#include <doctest.h>

#include <cmath>
#include <random>

#include "cyclicity/errors.hpp"
#include "cyclicity/parse.hpp"
#include "cyclicity/presets.hpp"

using namespace cyc;

TEST_CASE("parse_system accepts the benchmark grammar") {
    ParsedSystem sys = parse_system("x' = -y + x*(x^2+y^2); y' = x + y*(x^2+y^2)", {});
    REQUIRE(sys.polynomial());
    // linear part [[0,-1],[1,0]]: eigenvalues +-i
    CHECK(sys.P->coeff(0, 1) == Rational(-1));
    CHECK(sys.P->coeff(1, 0).is_zero());
    CHECK(sys.Q->coeff(1, 0) == Rational(1));
    CHECK(sys.Q->coeff(0, 1).is_zero());

    ParsedSystem nil = parse_system("x' = y; y' = -x^5", {});
    CHECK(nil.P->coeff(0, 1).is_one());
    CHECK(nil.Q->coeff(5, 0) == Rational(-5) / Rational(5));
}

TEST_CASE("origin must be singular") {
    CHECK_THROWS_AS(parse_system("x' = 1 + y; y' = x", {}), ParseError);
}

TEST_CASE("unbound parameters are rejected") {
    CHECK_THROWS_AS(parse_system("x' = -y + mu*x; y' = x", {}), ParseError);
    CHECK_NOTHROW(parse_system("x' = -y + mu*x^3; y' = x", {{"mu", Rational(1)}}));
}

TEST_CASE("syntax errors carry byte offsets") {
    try {
        parse_expression("x +");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.offset == 3);
    }
    CHECK_THROWS_AS(parse_expression("exp(x"), ParseError);
    CHECK_THROWS_AS(parse_expression("x ^ (1/)"), ParseError);
}

TEST_CASE("floats and stray division are rejected") {
    CHECK_THROWS_AS(parse_expression("1.5*x"), ParseError);
    CHECK_THROWS_AS(parse_expression("x/y"), ParseError);
    CHECK_NOTHROW(parse_expression("exp(x/(x^2+y^2))"));
}

TEST_CASE("rational powers and exp parse into the expected nodes") {
    ParsedExpression pe = parse_expression("exp(-2*mu*x^2/(x^2+y^2))*(x^2+y^2)^3");
    REQUIRE(pe.params.size() == 1);
    CHECK(pe.params[0] == "mu");
    CHECK(pe.restricted_domain); // quotient inside exp

    ParsedExpression pw = parse_expression("(x^4 + 2*y^2)^(5/4)");
    const Expr* root = pw.ast.get();
    REQUIRE(root->kind == Expr::Kind::Pow);
    CHECK(root->expo == Rational(5, 4));
    CHECK(root->base_nonneg);
    CHECK_FALSE(pw.restricted_domain);

    // negative coefficients break the even-power proof
    ParsedExpression bad = parse_expression("(x^4 - 2*y^2)^(5/4)");
    CHECK(bad.restricted_domain);
}

TEST_CASE("eval_and_grad matches hand values") {
    auto e = parse_expression("x^2+y^2").ast;
    EvalResult r = eval_and_grad(e, 3, 4, {});
    CHECK(r.v == doctest::Approx(25));
    CHECK(r.dx == doctest::Approx(6));
    CHECK(r.dy == doctest::Approx(8));

    auto v0 = parse_expression("exp(-2*mu*x^2/(x^2+y^2))*(x^2+y^2)^3").ast;
    EvalResult g = eval_and_grad(v0, 1, 0, {{"mu", Rational(0)}});
    CHECK(g.v == doctest::Approx(1));
    CHECK(g.dx == doctest::Approx(6));
    CHECK(g.dy == doctest::Approx(0).epsilon(1e-12));

    auto pw = parse_expression("(x^4+2*y^2)^(5/4)").ast;
    EvalResult z = eval_and_grad(pw, 0, 0, {});
    CHECK(z.v == 0);
    CHECK(z.dx == 0);
    CHECK(z.dy == 0);

    CHECK_THROWS_AS(eval_and_grad(parse_expression("exp(x/(x^2+y^2))").ast, 0, 0, {}),
                    DomainError);
}

TEST_CASE("partials agree with central finite differences") {
    std::mt19937 rng(7771);
    std::uniform_real_distribution<double> ang(0, 2 * M_PI), rad(0.3, 1.0);
    for (auto& p : presets()) {
        if (p.v0_text.empty()) continue;
        auto ast = parse_expression(p.v0_text).ast;
        for (int k = 0; k < 100; ++k) {
            double r = rad(rng), th = ang(rng);
            double x = r * std::cos(th), y = r * std::sin(th);
            EvalResult g = eval_and_grad(ast, x, y, p.params);
            double h = 1e-6;
            double fxp = eval_and_grad(ast, x + h, y, p.params).v;
            double fxm = eval_and_grad(ast, x - h, y, p.params).v;
            double fyp = eval_and_grad(ast, x, y + h, p.params).v;
            double fym = eval_and_grad(ast, x, y - h, p.params).v;
            double scale = std::max(1.0, std::fabs(g.v));
            CHECK(std::fabs(g.dx - (fxp - fxm) / (2 * h)) <= 1e-6 * std::max(scale, std::fabs(g.dx)));
            CHECK(std::fabs(g.dy - (fyp - fym) / (2 * h)) <= 1e-6 * std::max(scale, std::fabs(g.dy)));
        }
    }
}

TEST_CASE("parse-print round trip on every preset") {
    for (auto& p : presets()) {
        ParsedSystem sys = parse_system(p.system_text, p.params);
        ParsedSystem again = parse_system(sys.str(), p.params);
        REQUIRE(sys.polynomial());
        REQUIRE(again.polynomial());
        CHECK(*sys.P == *again.P);
        CHECK(*sys.Q == *again.Q);
        if (!p.v0_text.empty()) {
            auto e1 = parse_expression(p.v0_text).ast;
            auto e2 = parse_expression(print_expr(e1)).ast;
            CHECK(expr_equal(e1, e2));
        }
    }
}

TEST_CASE("caller-asserted nonnegative bases widen the recorded domain") {
    ParsedExpression guarded = parse_expression("(x^3 + y)^(1/2)");
    CHECK(guarded.restricted_domain);
    ParsedExpression asserted = parse_expression("(x^3 + y)^(1/2)", true);
    CHECK_FALSE(asserted.restricted_domain);
}
