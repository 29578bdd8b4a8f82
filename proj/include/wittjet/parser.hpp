#pragma once

#include <cctype>
#include <string>
#include <vector>

#include "wittjet/multipoly.hpp"

namespace wittjet {

// Recursive-descent parser for the polynomial wire format:
//   expr   := term (('+'|'-') term)*
//   term   := factor ('*' factor)*
//   factor := atom ('^' nat)?
//   atom   := nat | ident | '(' expr ')' | '-' factor
// Implicit multiplication is rejected; '^' takes nonnegative integer
// exponents only. Whitespace-insensitive; positions are 1-based.
namespace detail {

enum class Tok { Number, Ident, Plus, Minus, Star, Caret, LParen, RParen, End };

struct Token {
    Tok kind;
    std::string text;
    int line, col;
};

class Lexer {
public:
    explicit Lexer(const std::string& src) : src_(src) {}

    Token next() {
        skip_ws();
        int l = line_, c = col_;
        if (pos_ >= src_.size()) return {Tok::End, "", l, c};
        char ch = src_[pos_];
        if (std::isdigit(static_cast<unsigned char>(ch))) {
            std::string num;
            while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_])))
                num += advance();
            return {Tok::Number, num, l, c};
        }
        if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
            std::string id;
            while (pos_ < src_.size() &&
                   (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
                id += advance();
            return {Tok::Ident, id, l, c};
        }
        advance();
        switch (ch) {
            case '+': return {Tok::Plus, "+", l, c};
            case '-': return {Tok::Minus, "-", l, c};
            case '*': return {Tok::Star, "*", l, c};
            case '^': return {Tok::Caret, "^", l, c};
            case '(': return {Tok::LParen, "(", l, c};
            case ')': return {Tok::RParen, ")", l, c};
            default:
                throw ParseError(std::string("unexpected character '") + ch + "'", l, c);
        }
    }

private:
    char advance() {
        char ch = src_[pos_++];
        if (ch == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        return ch;
    }
    void skip_ws() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) advance();
    }

    const std::string& src_;
    std::size_t pos_ = 0;
    int line_ = 1, col_ = 1;
};

class PolyParser {
public:
    PolyParser(const std::string& src, std::vector<std::string> vars)
        : lex_(src), vars_(std::move(vars)) {
        cur_ = lex_.next();
    }

    MultiPoly run() {
        MultiPoly r = expr();
        if (cur_.kind != Tok::End)
            throw ParseError("unexpected trailing input '" + cur_.text + "'", cur_.line, cur_.col);
        return r;
    }

private:
    MultiPoly expr() {
        MultiPoly r = term();
        while (cur_.kind == Tok::Plus || cur_.kind == Tok::Minus) {
            bool minus = cur_.kind == Tok::Minus;
            bump();
            MultiPoly t = term();
            r = minus ? r - t : r + t;
        }
        return r;
    }

    MultiPoly term() {
        MultiPoly r = factor();
        while (cur_.kind == Tok::Star) {
            bump();
            r = r * factor();
        }
        return r;
    }

    MultiPoly factor() {
        MultiPoly base = atom();
        if (cur_.kind == Tok::Caret) {
            bump();
            if (cur_.kind != Tok::Number)
                throw ParseError("'^' requires a nonnegative integer exponent", cur_.line, cur_.col);
            unsigned long e = std::stoul(cur_.text);
            if (e > 100000)
                throw ParseError("exponent " + cur_.text + " too large", cur_.line, cur_.col);
            bump();
            return base.pow(static_cast<unsigned>(e));
        }
        return base;
    }

    MultiPoly atom() {
        switch (cur_.kind) {
            case Tok::Number: {
                Bigint v(cur_.text);
                bump();
                return MultiPoly::constant(vars_, v);
            }
            case Tok::Ident: {
                std::string name = cur_.text;
                for (const auto& v : vars_)
                    if (v == name) {
                        bump();
                        return MultiPoly::variable(vars_, name);
                    }
                throw ParseError("unknown variable '" + name + "'", cur_.line, cur_.col);
            }
            case Tok::LParen: {
                bump();
                MultiPoly r = expr();
                if (cur_.kind != Tok::RParen)
                    throw ParseError("expected ')'", cur_.line, cur_.col);
                bump();
                return r;
            }
            case Tok::Minus: {
                bump();
                return -factor();
            }
            default:
                throw ParseError("expected number, variable, '(' or '-', got '" + cur_.text + "'",
                                 cur_.line, cur_.col);
        }
    }

    void bump() { cur_ = lex_.next(); }

    Lexer lex_;
    std::vector<std::string> vars_;
    Token cur_;
};

}  // namespace detail

inline MultiPoly parse_poly(const std::string& text, std::vector<std::string> vars) {
    return detail::PolyParser(text, std::move(vars)).run();
}

}  // namespace wittjet
