#include "expr.hpp"

#include <cctype>
#include <sstream>

namespace bcn {

namespace {

enum class Tok { Ident, True, False, Not, And, Or, Xor, Implies, Iff, LParen, RParen, End };

struct Token {
    Tok kind;
    std::string text;
    int line, col;
};

class Lexer {
public:
    explicit Lexer(const std::string& s) : s_(s) {}

    Token next() {
        skipSpace();
        int line = line_, col = col_;
        if (pos_ >= s_.size()) return {Tok::End, "", line, col};
        char c = s_[pos_];
        if (c == '(') { advance(); return {Tok::LParen, "(", line, col}; }
        if (c == ')') { advance(); return {Tok::RParen, ")", line, col}; }
        if (c == '!' || c == '~') { advance(); return {Tok::Not, std::string(1, c), line, col}; }
        if (c == '&') { advance(); if (peek() == '&') advance(); return {Tok::And, "&", line, col}; }
        if (c == '|') { advance(); if (peek() == '|') advance(); return {Tok::Or, "|", line, col}; }
        if (c == '^') { advance(); return {Tok::Xor, "^", line, col}; }
        if (c == '-' || c == '=') {
            char first = c;
            advance();
            if (peek() == '>') {
                advance();
                return {Tok::Implies, std::string(1, first) + ">", line, col};
            }
            fail("expected '>' after '" + std::string(1, first) + "'", line, col);
        }
        if (c == '<') {
            advance();
            if (peek() == '-' || peek() == '=') advance();
            if (peek() == '>') { advance(); return {Tok::Iff, "<->", line, col}; }
            fail("malformed '<->' operator", line, col);
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::string word;
            while (pos_ < s_.size() &&
                   (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) {
                word += s_[pos_];
                advance();
            }
            std::string up;
            for (char w : word) up += static_cast<char>(std::toupper(static_cast<unsigned char>(w)));
            if (up == "NOT") return {Tok::Not, word, line, col};
            if (up == "AND") return {Tok::And, word, line, col};
            if (up == "OR") return {Tok::Or, word, line, col};
            if (up == "XOR") return {Tok::Xor, word, line, col};
            if (up == "IMPLIES") return {Tok::Implies, word, line, col};
            if (up == "IFF") return {Tok::Iff, word, line, col};
            if (up == "TRUE") return {Tok::True, word, line, col};
            if (up == "FALSE") return {Tok::False, word, line, col};
            return {Tok::Ident, word, line, col};
        }
        fail(std::string("unexpected character '") + c + "'", line, col);
        return {};
    }

    [[noreturn]] static void fail(const std::string& msg, int line, int col) {
        std::ostringstream os;
        os << "line " << line << ", column " << col << ": " << msg;
        throw Error(ErrorCode::SyntaxError, os.str());
    }

private:
    char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
    void advance() {
        if (s_[pos_] == '\n') { ++line_; col_ = 1; } else { ++col_; }
        ++pos_;
    }
    void skipSpace() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) advance();
    }

    const std::string& s_;
    size_t pos_ = 0;
    int line_ = 1, col_ = 1;
};

class Parser {
public:
    explicit Parser(const std::string& s) : lex_(s) { cur_ = lex_.next(); }

    ExprPtr parse() {
        ExprPtr e = parseIff();
        if (cur_.kind != Tok::End)
            Lexer::fail("unexpected token '" + cur_.text + "'", cur_.line, cur_.col);
        return e;
    }

private:
    ExprPtr parseIff() {
        ExprPtr e = parseImplies();
        while (cur_.kind == Tok::Iff) {
            eat();
            e = binary(ExprOp::Iff, e, parseImplies());
        }
        return e;
    }
    ExprPtr parseImplies() {
        ExprPtr e = parseXor();
        if (cur_.kind == Tok::Implies) {
            eat();
            return binary(ExprOp::Implies, e, parseImplies()); // right-associative
        }
        return e;
    }
    ExprPtr parseXor() {
        ExprPtr e = parseOr();
        while (cur_.kind == Tok::Xor) {
            eat();
            e = binary(ExprOp::Xor, e, parseOr());
        }
        return e;
    }
    ExprPtr parseOr() {
        ExprPtr e = parseAnd();
        while (cur_.kind == Tok::Or) {
            eat();
            e = binary(ExprOp::Or, e, parseAnd());
        }
        return e;
    }
    ExprPtr parseAnd() {
        ExprPtr e = parseUnary();
        while (cur_.kind == Tok::And) {
            eat();
            e = binary(ExprOp::And, e, parseUnary());
        }
        return e;
    }
    ExprPtr parseUnary() {
        if (cur_.kind == Tok::Not) {
            eat();
            auto node = std::make_shared<Expr>();
            node->op = ExprOp::Not;
            node->lhs = parseUnary();
            return node;
        }
        return parseAtom();
    }
    ExprPtr parseAtom() {
        if (cur_.kind == Tok::LParen) {
            eat();
            ExprPtr e = parseIff();
            if (cur_.kind != Tok::RParen)
                Lexer::fail("expected ')'", cur_.line, cur_.col);
            eat();
            return e;
        }
        if (cur_.kind == Tok::True || cur_.kind == Tok::False) {
            auto node = std::make_shared<Expr>();
            node->op = ExprOp::Const;
            node->constValue = cur_.kind == Tok::True;
            eat();
            return node;
        }
        if (cur_.kind == Tok::Ident) {
            const std::string& w = cur_.text;
            char kind = static_cast<char>(std::tolower(static_cast<unsigned char>(w[0])));
            bool ok = (kind == 'x' || kind == 'u' || kind == 'd' || kind == 'f') && w.size() > 1;
            int idx = 0;
            if (ok) {
                for (size_t i = 1; i < w.size(); ++i) {
                    if (!std::isdigit(static_cast<unsigned char>(w[i]))) { ok = false; break; }
                    idx = idx * 10 + (w[i] - '0');
                }
            }
            if (!ok || idx < 1) {
                std::ostringstream os;
                os << "line " << cur_.line << ", column " << cur_.col
                   << ": unknown identifier '" << w << "'";
                throw Error(ErrorCode::UnknownIdentifier, os.str());
            }
            auto node = std::make_shared<Expr>();
            node->op = ExprOp::Var;
            node->varKind = kind;
            node->varIndex = idx;
            eat();
            return node;
        }
        Lexer::fail("expected expression", cur_.line, cur_.col);
        return {};
    }

    static ExprPtr binary(ExprOp op, ExprPtr l, ExprPtr r) {
        auto node = std::make_shared<Expr>();
        node->op = op;
        node->lhs = std::move(l);
        node->rhs = std::move(r);
        return node;
    }

    void eat() { cur_ = lex_.next(); }

    Lexer lex_;
    Token cur_;
};

} // namespace

ExprPtr parseExpression(const std::string& text) { return Parser(text).parse(); }

void checkIdentifiers(const ExprPtr& e, const SignalCounts& counts) {
    if (!e) return;
    if (e->op == ExprOp::Var) {
        int limit = e->varKind == 'x'   ? counts.n
                    : e->varKind == 'u' ? counts.m
                    : e->varKind == 'd' ? counts.d
                                        : counts.t;
        if (e->varIndex > limit)
            throw Error(ErrorCode::UnknownIdentifier,
                        std::string("identifier ") + e->varKind + std::to_string(e->varIndex) +
                            " exceeds declared dimension");
    }
    checkIdentifiers(e->lhs, counts);
    checkIdentifiers(e->rhs, counts);
}

bool evalExpression(const ExprPtr& e, const Assignment& a) {
    switch (e->op) {
        case ExprOp::Const: return e->constValue;
        case ExprOp::Var: {
            const std::vector<bool>& v = e->varKind == 'x'   ? a.x
                                         : e->varKind == 'u' ? a.u
                                         : e->varKind == 'd' ? a.d
                                                             : a.f;
            return v[static_cast<size_t>(e->varIndex) - 1];
        }
        case ExprOp::Not: return !evalExpression(e->lhs, a);
        case ExprOp::And: return evalExpression(e->lhs, a) && evalExpression(e->rhs, a);
        case ExprOp::Or: return evalExpression(e->lhs, a) || evalExpression(e->rhs, a);
        case ExprOp::Xor: return evalExpression(e->lhs, a) != evalExpression(e->rhs, a);
        case ExprOp::Implies: return !evalExpression(e->lhs, a) || evalExpression(e->rhs, a);
        case ExprOp::Iff: return evalExpression(e->lhs, a) == evalExpression(e->rhs, a);
    }
    throw Error(ErrorCode::SyntaxError, "malformed expression tree");
}

std::string exprToString(const ExprPtr& e) {
    switch (e->op) {
        case ExprOp::Const: return e->constValue ? "true" : "false";
        case ExprOp::Var: return std::string(1, e->varKind) + std::to_string(e->varIndex);
        case ExprOp::Not: return "!" + exprToString(e->lhs);
        case ExprOp::And: return "(" + exprToString(e->lhs) + " & " + exprToString(e->rhs) + ")";
        case ExprOp::Or: return "(" + exprToString(e->lhs) + " | " + exprToString(e->rhs) + ")";
        case ExprOp::Xor: return "(" + exprToString(e->lhs) + " ^ " + exprToString(e->rhs) + ")";
        case ExprOp::Implies: return "(" + exprToString(e->lhs) + " -> " + exprToString(e->rhs) + ")";
        case ExprOp::Iff: return "(" + exprToString(e->lhs) + " <-> " + exprToString(e->rhs) + ")";
    }
    return "?";
}

} // namespace bcn
