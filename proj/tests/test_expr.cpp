#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "expr.hpp"

using namespace bcn;

namespace {

bool evalText(const std::string& text, std::vector<bool> x, std::vector<bool> u = {}) {
    Assignment a;
    a.x = std::move(x);
    a.u = std::move(u);
    return evalExpression(parseExpression(text), a);
}

} // namespace

TEST_CASE("basic connectives") {
    CHECK(evalText("x1 & x2", {true, true}));
    CHECK_FALSE(evalText("x1 & x2", {true, false}));
    CHECK(evalText("x1 | x2", {false, true}));
    CHECK_FALSE(evalText("!x1", {true}));
    CHECK(evalText("x1 ^ x2", {true, false}));
    CHECK_FALSE(evalText("x1 ^ x2", {true, true}));
    CHECK(evalText("TRUE", {}));
    CHECK_FALSE(evalText("FALSE", {}));
}

TEST_CASE("alternate operator spellings") {
    CHECK(evalText("x1 AND x2", {true, true}));
    CHECK(evalText("x1 && x2", {true, true}));
    CHECK(evalText("NOT x1", {false}));
    CHECK(evalText("~x1", {false}));
    CHECK(evalText("x1 OR x2", {false, true}));
    CHECK(evalText("x1 || x2", {false, true}));
    CHECK(evalText("x1 XOR x2", {true, false}));
    CHECK(evalText("x1 IMPLIES x2", {false, false}));
    CHECK(evalText("x1 IFF x2", {false, false}));
}

TEST_CASE("precedence and associativity") {
    // AND binds tighter than OR.
    CHECK(evalText("x1 | x2 & x3", {true, false, false}));
    CHECK_FALSE(evalText("(x1 | x2) & x3", {true, false, false}));
    // IMPLIES is right-associative: a -> b -> c == a -> (b -> c).
    CHECK(evalText("x1 -> x2 -> x3", {false, false, false}));
    CHECK_FALSE(evalText("(x1 -> x2) -> x3", {false, false, false}));
    // NOT binds tightest.
    CHECK(evalText("!x1 & x2", {false, true}));
}

TEST_CASE("all four signal kinds") {
    Assignment a;
    a.x = {true};
    a.u = {false};
    a.d = {true};
    a.f = {false};
    CHECK(evalExpression(parseExpression("x1 & d1"), a));
    CHECK_FALSE(evalExpression(parseExpression("u1 | f1"), a));
}

TEST_CASE("round trip through exprToString") {
    ExprPtr e = parseExpression("!x1 & (x2 | u1) -> x3");
    ExprPtr again = parseExpression(exprToString(e));
    for (int bits = 0; bits < 16; ++bits) {
        Assignment a;
        a.x = {(bits & 1) != 0, (bits & 2) != 0, (bits & 4) != 0};
        a.u = {(bits & 8) != 0};
        CHECK(evalExpression(e, a) == evalExpression(again, a));
    }
}

TEST_CASE("syntax errors carry a position") {
    CHECK_THROWS_AS(parseExpression("x1 &"), Error);
    CHECK_THROWS_AS(parseExpression("(x1"), Error);
    CHECK_THROWS_AS(parseExpression("x1 x2"), Error);
    CHECK_THROWS_AS(parseExpression(""), Error);
    try {
        parseExpression("x1 & %");
        FAIL("expected a syntax error");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::SyntaxError);
    }
}

TEST_CASE("identifier bounds checking") {
    SignalCounts counts{2, 1, 0, 0};
    CHECK_NOTHROW(checkIdentifiers(parseExpression("x1 & x2 | u1"), counts));
    CHECK_THROWS_AS(checkIdentifiers(parseExpression("x3"), counts), Error);
    CHECK_THROWS_AS(checkIdentifiers(parseExpression("d1"), counts), Error);
    CHECK_THROWS_AS(checkIdentifiers(parseExpression("f1"), counts), Error);
}
