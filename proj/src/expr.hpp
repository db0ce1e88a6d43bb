#pragma once

#include <memory>
#include <string>
#include <vector>

#include "errors.hpp"

namespace bcn {

// Boolean update-rule expressions over identifiers x1..xn, u1..um, d1..dd,
// f1..ft. Precedence NOT > AND > OR > XOR > IMPLIES > IFF; IMPLIES is
// right-associative, the other binary operators left-associative.

enum class ExprOp { Var, Not, And, Or, Xor, Implies, Iff, Const };

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
    ExprOp op;
    char varKind = 0;   // 'x', 'u', 'd', 'f' for Var
    int varIndex = 0;   // 1-based
    bool constValue = false;
    ExprPtr lhs, rhs;
};

ExprPtr parseExpression(const std::string& text);

struct SignalCounts {
    int n = 0, m = 0, d = 0, t = 0;
};

// Throws UnknownIdentifier / IndexOutOfRange if the expression references a
// signal outside the declared counts.
void checkIdentifiers(const ExprPtr& e, const SignalCounts& counts);

struct Assignment {
    // Values per signal kind; index 0 holds variable 1.
    std::vector<bool> x, u, d, f;
};

bool evalExpression(const ExprPtr& e, const Assignment& a);

std::string exprToString(const ExprPtr& e);

} // namespace bcn
