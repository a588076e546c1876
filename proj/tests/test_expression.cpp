#include "bsq/expression.hpp"

#include "bsq/errors.hpp"

#include <doctest.h>

#include <cmath>
#include <memory>
#include <random>

using namespace bsq;
using namespace bsq::expr;

TEST_CASE("evaluation of basic forms") {
    CHECK(parse("0.5*x^2").eval(2.0) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(parse("-1*sech(x)^2").eval(0.0) == doctest::Approx(-1.0).epsilon(1e-15));
    // LJ(12,6) with V0 = a = 1 evaluated at its minimum x = 2^(1/6)
    const double xmin = std::pow(2.0, 1.0 / 6.0);
    CHECK(parse("(1/x)^12 - (1/x)^6").eval(xmin) ==
          doctest::Approx(-0.25).epsilon(1e-14));
}

TEST_CASE("precedence and associativity") {
    CHECK(parse("2+3*4").eval(0.0) == 14.0);
    CHECK(parse("2*3+4").eval(0.0) == 10.0);
    CHECK(parse("6/3/2").eval(0.0) == 1.0);         // left associative
    CHECK(parse("2^3^2").eval(0.0) == 512.0);       // right associative
    CHECK(parse("-x^2").eval(3.0) == -9.0);         // ^ binds tighter than unary -
    CHECK(parse("(-x)^2").eval(3.0) == 9.0);
    CHECK(parse("2^-1").eval(0.0) == 0.5);
    CHECK(parse("2 - -3").eval(0.0) == 5.0);
    CHECK(parse("  0.5 * x ^ 2 ").eval(2.0) == 2.0); // whitespace insensitive
}

TEST_CASE("number grammar") {
    CHECK(parse("1e3").eval(0.0) == 1000.0);
    CHECK(parse("2.5e-2").eval(0.0) == 0.025);
    CHECK(parse("1.5E+2").eval(0.0) == 150.0);
    CHECK(parse(".5*x").eval(4.0) == 2.0);
    CHECK_THROWS_AS(parse("1e+"), ParseError); // bare exponent is an identifier 'e'
}

TEST_CASE("functions") {
    CHECK(parse("exp(x)").eval(1.0) == doctest::Approx(std::exp(1.0)));
    CHECK(parse("tanh(x)").eval(0.7) == doctest::Approx(std::tanh(0.7)));
    CHECK(parse("sin(x)").eval(0.3) == doctest::Approx(std::sin(0.3)));
    CHECK(parse("sec(x)").eval(0.3) == doctest::Approx(1.0 / std::cos(0.3)));
    CHECK(parse("sqrt(x)").eval(2.0) == doctest::Approx(std::sqrt(2.0)));
    CHECK(parse("sech(x)").eval(1.2) == doctest::Approx(1.0 / std::cosh(1.2)));
}

TEST_CASE("error positions") {
    try {
        parse("1 + foo(x)");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.offset() == 4); // byte offset of the unknown identifier
    }
    try {
        parse("2 * (x + 1");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.offset() == 10);
    }
    CHECK_THROWS_AS(parse(""), ParseError);
    CHECK_THROWS_AS(parse("x + "), ParseError);
    CHECK_THROWS_AS(parse("x @ 2"), ParseError);
}

TEST_CASE("domain errors on non-finite results") {
    CHECK_THROWS_AS(parse("sqrt(0 - 1 - x)").eval(1.0), DomainError);
    CHECK_THROWS_AS(parse("1/x").eval(0.0), DomainError);
}

namespace {

// random AST generator for the round-trip property
NodePtr random_node(std::mt19937& rng, int depth) {
    std::uniform_int_distribution<int> shape(0, depth <= 0 ? 1 : 5);
    std::uniform_real_distribution<double> value(-4.0, 4.0);
    switch (shape(rng)) {
    case 0:
        return std::make_shared<Node>(Node{Constant{value(rng)}});
    case 1:
        return std::make_shared<Node>(Node{Variable{}});
    case 2: {
        std::uniform_int_distribution<int> pick(0, 6);
        const Function fn = static_cast<Function>(pick(rng));
        return std::make_shared<Node>(Node{Unary{fn, random_node(rng, depth - 1)}});
    }
    default: {
        std::uniform_int_distribution<int> pick(0, 4);
        const BinaryOp op = static_cast<BinaryOp>(pick(rng));
        return std::make_shared<Node>(
            Node{Binary{op, random_node(rng, depth - 1), random_node(rng, depth - 1)}});
    }
    }
}

} // namespace

TEST_CASE("round-trip: parse then print then re-parse yields an identical AST") {
    std::mt19937 rng(2024);
    for (int i = 0; i < 500; ++i) {
        // random trees may contain shapes parse can never emit (negative
        // constants); one parse normalizes, then print/parse must be exact
        const Ast raw(random_node(rng, 5));
        const Ast ast = parse(raw.str());
        const std::string text = ast.str();
        CAPTURE(text);
        const Ast back = parse(text);
        CHECK(back.same(ast));
        CHECK(back.str() == text);
    }
}

TEST_CASE("printing preserves the evaluated value") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> xs(-2.0, 2.0);
    int compared = 0;
    for (int i = 0; i < 300; ++i) {
        const Ast ast(random_node(rng, 4));
        const Ast back = parse(ast.str());
        const double x = xs(rng);
        double a, b;
        try {
            a = ast.eval(x);
        } catch (const DomainError&) {
            continue;
        }
        b = back.eval(x);
        ++compared;
        CHECK(a == doctest::Approx(b).epsilon(1e-12));
    }
    CHECK(compared > 100);
}
