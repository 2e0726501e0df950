/*
   Copyright 2026 The isocrystal authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#ifndef ISOCRYSTAL_EXPR_HPP
#define ISOCRYSTAL_EXPR_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "errors.hpp"

namespace isoc {

/// Element expressions: integer literals, named variables, + - * / ^,
/// unary minus and parentheses. Exponents are non-negative integer
/// literals. Integers are interpreted in the target ring, so "5" over F_3
/// means 2.
struct Token {
    enum Kind { number, ident, op, lparen, rparen, end } kind;
    std::string text;
    std::size_t pos;
};

std::vector<Token> tokenize_expression(const std::string& text);

template <class T>
T power(const T& base, std::uint64_t e) {
    T r = base.one_like();
    T b = base;
    while (e > 0) {
        if (e & 1) r = r * b;
        e >>= 1;
        if (e > 0) b = b * b;
    }
    return r;
}

template <class T>
class ExpressionParser {
   public:
    ExpressionParser(const std::string& text, const T& zero, const std::map<std::string, T>& vars)
        : text_(text), toks_(tokenize_expression(text)), zero_(zero), vars_(vars) {}

    T parse() {
        if (toks_.size() == 1) throw ParseError("empty expression");
        T v = sum();
        if (peek().kind != Token::end) fail(peek());
        return v;
    }

   private:
    const Token& peek() const { return toks_[i_]; }
    [[noreturn]] void fail(const Token& t) const {
        if (t.kind == Token::end) throw ParseError("unexpected end of expression '" + text_ + "'");
        throw ParseError("unexpected token '" + t.text + "' at position " + std::to_string(t.pos) + " in '" + text_ + "'");
    }
    bool accept_op(char c) {
        if (peek().kind == Token::op && peek().text[0] == c) {
            ++i_;
            return true;
        }
        return false;
    }
    T sum() {
        T v = product();
        for (;;) {
            if (accept_op('+'))
                v = v + product();
            else if (accept_op('-'))
                v = v - product();
            else
                return v;
        }
    }
    T product() {
        T v = unary();
        for (;;) {
            if (accept_op('*')) {
                v = v * unary();
            } else if (peek().kind == Token::op && peek().text[0] == '/') {
                const Token& slash = peek();
                ++i_;
                T d = unary();
                if constexpr (requires(const T& x) { x.inverse(); }) {
                    if (d.is_zero()) throw ParseError("division by zero at position " + std::to_string(slash.pos) + " in '" + text_ + "'");
                    v = v * d.inverse();
                } else {
                    throw ParseError("division is not available for this value at position " + std::to_string(slash.pos) + " in '" + text_ + "'");
                }
            } else {
                return v;
            }
        }
    }
    T unary() {
        if (accept_op('-')) return -unary();
        if (accept_op('+')) return unary();
        return pow();
    }
    T pow() {
        T b = atom();
        if (accept_op('^')) {
            const Token& e = peek();
            if (e.kind != Token::number) fail(e);
            ++i_;
            return power(b, std::stoull(e.text));
        }
        return b;
    }
    T atom() {
        const Token& t = peek();
        switch (t.kind) {
            case Token::number: {
                ++i_;
                // Horner in the target ring, so long literals reduce correctly
                T v = zero_;
                const T ten = zero_.int_like(10);
                for (char c : t.text) v = v * ten + zero_.int_like(c - '0');
                return v;
            }
            case Token::ident: {
                auto it = vars_.find(t.text);
                if (it == vars_.end()) throw ParseError("unknown variable '" + t.text + "' at position " + std::to_string(t.pos) + " in '" + text_ + "'");
                ++i_;
                return it->second;
            }
            case Token::lparen: {
                ++i_;
                T v = sum();
                if (peek().kind != Token::rparen) fail(peek());
                ++i_;
                return v;
            }
            default:
                fail(t);
        }
    }

    std::string text_;
    std::vector<Token> toks_;
    std::size_t i_ = 0;
    T zero_;
    const std::map<std::string, T>& vars_;
};

template <class T>
T parse_expression(const std::string& text, const T& zero, const std::map<std::string, T>& vars) {
    return ExpressionParser<T>(text, zero, vars).parse();
}

}  // namespace isoc

#endif
