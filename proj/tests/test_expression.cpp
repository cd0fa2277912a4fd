#include <doctest.h>

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "qfho/errors.hpp"
#include "qfho/expression.hpp"
#include "test_support.hpp"

using namespace qfho;
using qfho::testing::kPi;

namespace {

Expression c(double v) { return Expression::constant(v); }
Expression t() { return Expression::variable(); }
Expression bin(NodeKind k, Expression a, Expression b) { return Expression::binary(k, std::move(a), std::move(b)); }
Expression un(NodeKind k, Expression a) { return Expression::unary(k, std::move(a)); }

std::size_t syntax_error_position(const std::string& text) {
    try {
        parse_force_expression(text);
    } catch (const SyntaxError& e) {
        return e.position();
    }
    FAIL("no SyntaxError for '" << text << "'");
    return 0;
}

Expression random_tree(std::mt19937_64& rng, int depth) {
    std::uniform_int_distribution<int> pick(0, depth <= 0 ? 1 : 11);
    std::uniform_real_distribution<double> value(-5.0, 5.0);
    switch (pick(rng)) {
        case 0: return c(value(rng));
        case 1: return t();
        case 2: return un(NodeKind::Neg, random_tree(rng, depth - 1));
        case 3: return un(NodeKind::Sin, random_tree(rng, depth - 1));
        case 4: return un(NodeKind::Cos, random_tree(rng, depth - 1));
        case 5: return un(NodeKind::Exp, un(NodeKind::Sin, random_tree(rng, depth - 1)));
        case 6: return un(NodeKind::Sqrt, random_tree(rng, depth - 1));
        case 7: return bin(NodeKind::Add, random_tree(rng, depth - 1), random_tree(rng, depth - 1));
        case 8: return bin(NodeKind::Sub, random_tree(rng, depth - 1), random_tree(rng, depth - 1));
        case 9: return bin(NodeKind::Mul, random_tree(rng, depth - 1), random_tree(rng, depth - 1));
        case 10: return bin(NodeKind::Div, random_tree(rng, depth - 1), random_tree(rng, depth - 1));
        default: return bin(NodeKind::Pow, random_tree(rng, depth - 1), c(std::floor(value(rng) / 2.0)));
    }
}

}  // namespace

TEST_CASE("literal zero") {
    const Expression e = parse_force_expression("0");
    CHECK(e.root().kind == NodeKind::Constant);
    CHECK(e.evaluate(3.0) == 0.0);
}

TEST_CASE("sinusoid expression evaluates at pi/4") {
    const Expression e = parse_force_expression("3.5*sin(2*t)");
    CHECK(e.evaluate(kPi / 4.0) == doctest::Approx(3.5).epsilon(1e-15));
}

TEST_CASE("power is right associative: matches hand-built AST") {
    const Expression oracle = bin(NodeKind::Pow, c(2), bin(NodeKind::Pow, c(3), c(2)));
    const Expression parsed = parse_force_expression("2^3^2");
    CHECK(parsed.evaluate(0.0) == oracle.evaluate(0.0));
    CHECK(parsed.evaluate(0.0) == 512.0);
    CHECK(parsed.render() == oracle.render());
}

TEST_CASE("precedence") {
    CHECK(parse_force_expression("-2^2").evaluate(0) == -4.0);
    CHECK(parse_force_expression("2^-1").evaluate(0) == 0.5);
    CHECK(parse_force_expression("1 + 2 * 3").evaluate(0) == 7.0);
    CHECK(parse_force_expression("(1 + 2) * 3").evaluate(0) == 9.0);
    CHECK(parse_force_expression("8 / 4 / 2").evaluate(0) == 1.0);
    CHECK(parse_force_expression("10 - 4 - 3").evaluate(0) == 3.0);
    CHECK(parse_force_expression("2 * -t").evaluate(1.5) == -3.0);
    CHECK(parse_force_expression("--t").evaluate(2.0) == 2.0);
    CHECK(parse_force_expression(" exp( 0 ) + sqrt(16) + cos(0)").evaluate(0) == 6.0);
    CHECK(parse_force_expression("1.5e1 + .5 + 2.").evaluate(0) == 17.5);
}

TEST_CASE("malformed inputs report byte positions") {
    CHECK(syntax_error_position("") == 0);
    CHECK(syntax_error_position("1+") == 2);
    CHECK(syntax_error_position("(1+2") == 4);
    CHECK(syntax_error_position("3*)") == 2);
    CHECK(syntax_error_position("sin 2") == 4);
    CHECK(syntax_error_position("1 2") == 2);
    CHECK(syntax_error_position("2..3") == 2);
    CHECK(syntax_error_position("$") == 0);
    CHECK(syntax_error_position("t^") == 2);
    CHECK(syntax_error_position("1e+") == 1);
    CHECK(syntax_error_position("sin(t") == 5);
    CHECK(syntax_error_position("()") == 1);
    CHECK(syntax_error_position("2*(3+4))") == 7);
    CHECK(syntax_error_position(".") == 0);
    CHECK(syntax_error_position("cos()") == 4);
}

TEST_CASE("unknown identifiers") {
    auto name_of = [](const std::string& text) {
        try {
            parse_force_expression(text);
        } catch (const UnknownIdentifier& e) {
            return e.name();
        }
        return std::string("<none>");
    };
    CHECK(name_of("foo(t)") == "foo");
    CHECK(name_of("2*x") == "x");
    CHECK(name_of("tt + 1") == "tt");
    CHECK(name_of("tan(t)") == "tan");
}

TEST_CASE("evaluation domain errors") {
    CHECK_THROWS_AS(parse_force_expression("sqrt(t)").evaluate(-1.0), EvalDomainError);
    CHECK_THROWS_AS(parse_force_expression("1/t").evaluate(0.0), EvalDomainError);
    CHECK_THROWS_AS(parse_force_expression("exp(t)").evaluate(1000.0), EvalDomainError);
    CHECK_THROWS_AS(parse_force_expression("(-t)^0.5").evaluate(2.0), EvalDomainError);
    try {
        parse_force_expression("sqrt(t - 3)").evaluate(1.0);
    } catch (const EvalDomainError& e) {
        CHECK(e.time() == 1.0);
    }
}

TEST_CASE("evaluation is pure") {
    const Expression e = parse_force_expression("exp(-(t-2)^2/0.3) * sin(7*t + 0.1) / sqrt(1 + t)");
    for (double x = 0.0; x < 5.0; x += 0.37) CHECK(e.evaluate(x) == e.evaluate(x));
}

TEST_CASE("factories enforce arity and finiteness") {
    CHECK_THROWS_AS(Expression::unary(NodeKind::Add, t()), InvalidArgument);
    CHECK_THROWS_AS(Expression::binary(NodeKind::Sin, t(), t()), InvalidArgument);
    CHECK_THROWS_AS(Expression::constant(INFINITY), InvalidArgument);
}

TEST_CASE("property: random trees survive render and parse") {
    std::mt19937_64 rng(20261018);
    for (int tree = 0; tree < 50; ++tree) {
        const Expression original = random_tree(rng, 5);
        const Expression reparsed = parse_force_expression(original.render());
        CHECK(reparsed.render() == original.render());
        for (int i = 0; i <= 100; ++i) {
            const double x = 0.1 * i;
            double a = NAN;
            double b = NAN;
            bool a_threw = false;
            bool b_threw = false;
            try { a = original.evaluate(x); } catch (const EvalDomainError&) { a_threw = true; }
            try { b = reparsed.evaluate(x); } catch (const EvalDomainError&) { b_threw = true; }
            REQUIRE(a_threw == b_threw);
            if (!a_threw) CHECK(std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(a)));
        }
    }
}
