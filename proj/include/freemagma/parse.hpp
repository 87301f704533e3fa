#pragma once

#include <algorithm>
#include <cctype>
#include <stdexcept>
#include <string>
#include <string_view>

#include "freemagma/calculus.hpp"
#include "freemagma/poly.hpp"

namespace freemagma {

class ParseError : public std::runtime_error {
public:
    ParseError(int line, int column, const std::string& message)
        : std::runtime_error("parse error at " + std::to_string(line) + ":" +
                             std::to_string(column) + ": " + message),
          line_(line),
          column_(column) {}
    int line() const noexcept { return line_; }
    int column() const noexcept { return column_; }

private:
    int line_, column_;
};

namespace detail {

// Recursive descent over the grammar
//   expr   := ["-"] term (("+"|"-") term)*
//   term   := rat ["*" factor ["*" factor]] | factor ["*" factor]
//   factor := ident ["^" int] | "(" expr ")"
//   rat    := int ["/" int]
// The binary "*" is the non-associative product; chains of three or more
// factors are rejected.
class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    Poly parse() {
        Poly out = parse_expr();
        skip_ws();
        if (!eof()) fail("unexpected trailing input");
        return out;
    }

private:
    Poly parse_expr() {
        skip_ws();
        bool negate = consume_if('-');
        Poly out = parse_term();
        if (negate) out = -out;
        for (;;) {
            skip_ws();
            if (consume_if('+'))
                out += parse_term();
            else if (consume_if('-'))
                out -= parse_term();
            else
                break;
        }
        return out;
    }

    Poly parse_term() {
        skip_ws();
        if (eof()) fail("expected a term");
        Poly out;
        if (std::isdigit(static_cast<unsigned char>(peek()))) {
            Rat c = parse_rat();
            skip_ws();
            if (!consume_if('*')) return Poly::constant(c);
            out = Poly::constant(c) * parse_factor();
        } else {
            out = parse_factor();
        }
        skip_ws();
        if (consume_if('*')) {
            out = out * parse_factor();
            skip_ws();
            if (peek_is('*')) fail("non-associative product requires explicit parentheses");
        }
        return out;
    }

    Poly parse_factor() {
        skip_ws();
        if (eof()) fail("expected a variable, power or parenthesized expression");
        if (consume_if('(')) {
            Poly inner = parse_expr();
            skip_ws();
            if (!consume_if(')')) fail("expected ')'");
            return inner;
        }
        if (std::isalpha(static_cast<unsigned char>(peek())) || peek() == '_') {
            Variable v = parse_variable();
            skip_ws();
            if (consume_if('^')) {
                skip_ws();
                int j = parse_int("exponent").convert_to<int>();
                if (j == 0) return Poly::one();
                return Poly(chain_power(v, j));
            }
            return Poly::variable(v);
        }
        fail("expected a variable, power or parenthesized expression");
    }

    Variable parse_variable() {
        int start_col = col_;
        std::string name;
        while (!eof() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_'))
            name.push_back(take());
        if (name == "x") return Variable(1);
        if (name == "y") return Variable(2);
        if (name.size() > 1 && name[0] == 'x') {
            std::string digits = name.substr(name[1] == '_' ? 2 : 1);
            if (!digits.empty() &&
                std::all_of(digits.begin(), digits.end(),
                            [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
                int idx = std::stoi(digits);
                if (idx >= 1) return Variable(idx);
            }
        }
        throw ParseError(line_, start_col, "unknown variable '" + name + "'");
    }

    Rat parse_rat() {
        BigInt num = parse_int("numerator");
        skip_ws();
        if (consume_if('/')) {
            skip_ws();
            BigInt den = parse_int("denominator");
            if (den == 0) fail("zero denominator");
            return Rat(num, den);
        }
        return Rat(num);
    }

    BigInt parse_int(const char* what) {
        skip_ws();
        if (eof() || !std::isdigit(static_cast<unsigned char>(peek())))
            fail(std::string("expected an integer ") + what);
        std::string digits;
        while (!eof() && std::isdigit(static_cast<unsigned char>(peek())))
            digits.push_back(take());
        return BigInt(digits);
    }

    void skip_ws() {
        while (!eof() && std::isspace(static_cast<unsigned char>(peek()))) take();
    }

    bool eof() const noexcept { return pos_ >= text_.size(); }
    char peek() const { return text_[pos_]; }
    bool peek_is(char c) const { return !eof() && peek() == c; }
    char take() {
        char c = text_[pos_++];
        if (c == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        return c;
    }
    bool consume_if(char c) {
        if (peek_is(c)) {
            take();
            return true;
        }
        return false;
    }
    [[noreturn]] void fail(const std::string& message) const {
        throw ParseError(line_, col_, message);
    }

    std::string_view text_;
    std::size_t pos_ = 0;
    int line_ = 1, col_ = 1;
};

}  // namespace detail

inline Poly parse_poly(std::string_view text) { return detail::Parser(text).parse(); }

namespace detail {

inline std::string mono_expr(const Monomial& t) {
    if (t.is_leaf()) return variable_name(t.leaf_label());
    return "(" + mono_expr(t.left()) + "*" + mono_expr(t.right()) + ")";
}

}  // namespace detail

// Parseable rendering; parse_poly(to_expr_string(f)) == f.
inline std::string to_expr_string(const Poly& f) {
    if (f.is_zero()) return "0";
    std::string out;
    for (const auto& [b, c] : f.terms()) {
        if (!out.empty())
            out += c > 0 ? " + " : " - ";
        else if (c < 0)
            out += "-";
        Rat a = abs(c);
        if (a != 1 || b.is_one()) {
            out += to_string(a);
            if (!b.is_one()) out += "*";
        }
        if (!b.is_one()) out += detail::mono_expr(b.mono());
    }
    return out;
}

}  // namespace freemagma
