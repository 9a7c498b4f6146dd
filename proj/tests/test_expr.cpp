#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <set>
#include <string>

#include <sympeig/expr.hpp>
#include <sympeig/rng.hpp>

#include "expr_gen.hpp"

using namespace sympeig;
using test_util::random_ast;

namespace {

double eval_str(const std::string& src, const std::map<std::string, double>& bindings = {}) {
    std::set<std::string> vars;
    for (const auto& [name, value] : bindings) vars.insert(name);
    return expr::eval(expr::parse(src, vars), bindings);
}

}  // namespace

TEST_CASE("paper sequences evaluate correctly") {
    CHECK(eval_str("3 - 1/n^2", {{"n", 2.0}}) == 2.75);
    CHECK(eval_str("1 + 2^(-n)", {{"n", 3.0}}) == 1.125);
    CHECK(eval_str("1 - 4^(-n)", {{"n", 1.0}}) == 0.75);
    CHECK(eval_str("min(s,t)", {{"s", 0.3}, {"t", 0.7}}) == 0.3);
    CHECK(eval_str("n", {{"n", 5.0}}) == 5.0);
}

TEST_CASE("precedence and associativity fixtures") {
    CHECK(eval_str("2^3^2") == 512.0);
    CHECK(eval_str("-2^2") == -4.0);
    CHECK(eval_str("2*3+4") == 10.0);
    CHECK(eval_str("2+3*4") == 14.0);
    CHECK(eval_str("(2+3)*4") == 20.0);
    CHECK(eval_str("2^-2") == 0.25);
    CHECK(eval_str("(-2)^2") == 4.0);
    CHECK(eval_str("8/4/2") == 1.0);
    CHECK(eval_str("8-4-2") == 2.0);
    CHECK(eval_str("-2*3") == -6.0);
    CHECK(eval_str("2*2^3") == 16.0);
    CHECK(eval_str("--3") == 3.0);
    CHECK(eval_str("2^2*3") == 12.0);
    CHECK(eval_str("pow(2, 10)") == 1024.0);
    CHECK(eval_str("max(1, 2) + min(3, 4)") == 5.0);
    CHECK(eval_str("abs(-2.5)") == 2.5);
}

TEST_CASE("parse errors carry byte offsets") {
    try {
        expr::parse("1 + ", {});
        FAIL("expected ParseError");
    } catch (const expr::ParseError& e) {
        CHECK(e.offset == 4);
    }
    try {
        expr::parse("2 * foo", {"n"});
        FAIL("expected ParseError");
    } catch (const expr::ParseError& e) {
        CHECK(e.offset == 4);
    }
    CHECK_THROWS_AS(expr::parse("sqrt(1, 2)", {}), expr::ParseError);
    CHECK_THROWS_AS(expr::parse("blub(1)", {}), expr::ParseError);
    CHECK_THROWS_AS(expr::parse("(1", {}), expr::ParseError);
    CHECK_THROWS_AS(expr::parse("", {}), expr::ParseError);
    CHECK_THROWS_AS(expr::parse("1 2", {}), expr::ParseError);
}

TEST_CASE("unknown identifiers are rejected against the declared set") {
    CHECK_NOTHROW(expr::parse("n + 1", {"n"}));
    CHECK_THROWS_AS(expr::parse("m + 1", {"n"}), expr::ParseError);
    CHECK_NOTHROW(expr::parse("s*t", {"s", "t"}));
}

TEST_CASE("evaluation guards domains") {
    CHECK_THROWS_AS(eval_str("1/(n-1)", {{"n", 1.0}}), expr::EvalError);
    CHECK_THROWS_AS(eval_str("log(0)"), expr::EvalError);
    CHECK_THROWS_AS(eval_str("log(-1)"), expr::EvalError);
    CHECK_THROWS_AS(eval_str("sqrt(-4)"), expr::EvalError);
    CHECK_THROWS_AS(eval_str("(-8)^0.5"), expr::EvalError);
    CHECK_THROWS_AS(eval_str("0^-1"), expr::EvalError);
    CHECK_THROWS_AS(eval_str("exp(1000)"), expr::EvalError);
    CHECK(eval_str("(-8)^2") == 64.0);
    CHECK(eval_str("2^(-10000)") == 0.0);  // graceful underflow
}

TEST_CASE("unbound variables fail at evaluation") {
    const expr::Ast ast = expr::parse("n + 1", {"n"});
    CHECK_THROWS_AS(expr::eval(ast, {}), expr::EvalError);
}

TEST_CASE("pretty-print round trip is structurally exact") {
    Rng rng(401);
    const std::vector<std::string> vars = {"n"};
    for (int trial = 0; trial < 500; ++trial) {
        const expr::Node ast = random_ast(rng, 1 + static_cast<int>(rng.raw() % 5), vars);
        const std::string text = expr::to_string(ast);
        INFO(text);
        const expr::Node back = expr::parse(text, {"n"});
        CHECK(back == ast);
    }
}

TEST_CASE("fuzzed expressions parse and evaluate without crashing") {
    Rng rng(409);
    const std::vector<std::string> vars = {"n"};
    int evaluated = 0, domain_errors = 0;
    for (int trial = 0; trial < 2000; ++trial) {
        const expr::Node ast = random_ast(rng, 1 + static_cast<int>(rng.raw() % 6), vars);
        const std::string text = expr::to_string(ast);
        const expr::Node back = expr::parse(text, {"n"});
        try {
            const double v = expr::eval(back, {{"n", rng.uniform(1.0, 9.0)}});
            CHECK(std::isfinite(v));
            ++evaluated;
        } catch (const expr::EvalError&) {
            ++domain_errors;  // clean rejection is fine
        }
    }
    CHECK(evaluated + domain_errors == 2000);
    CHECK(evaluated > 0);
}
