#pragma once

#include <cctype>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "germ/jetpoly.hpp"

namespace germ {

// Recursive-descent parser for the polynomial grammar:
//
//   expr   := ['-'] term (('+'|'-') term)*
//   term   := factor ('*' factor)*
//   factor := atom ['^' INT]            (INT >= 1)
//   atom   := RATIONAL | NAME | '(' expr ')'
//   RATIONAL := INT ['/' INT]
//
// Whitespace is ignored. Parentheses are expanded by evaluating the tree in
// exact polynomial arithmetic. With a declared variable list every NAME must
// be a member; without one, variables are declared by first use.
class PolyParser {
public:
    PolyParser(std::string_view text, std::optional<std::vector<std::string>> declared)
        : text_(text), declared_(declared.has_value()) {
        if (declared) vars_ = std::move(*declared);
    }

    JetPolynomial parse() {
        skip_ws();
        JetPolynomial p = parse_expr();
        skip_ws();
        if (pos_ != text_.size()) throw ParseError("unexpected trailing input", pos_);
        // Exact value; label it with its total degree per the jet convention.
        return pad(p).with_order(std::max(p.total_degree(), 0));
    }

    const std::vector<std::string>& vars() const { return vars_; }

private:
    JetPolynomial parse_expr() {
        bool neg = false;
        skip_ws();
        if (peek() == '-') {
            neg = true;
            ++pos_;
        }
        JetPolynomial acc = parse_term();
        if (neg) acc *= Rational(-1);
        for (;;) {
            skip_ws();
            char c = peek();
            if (c != '+' && c != '-') break;
            ++pos_;
            JetPolynomial t = parse_term();
            if (c == '+')
                acc = pad(acc) + pad(t);
            else
                acc = pad(acc) - pad(t);
        }
        return pad(acc);
    }

    JetPolynomial parse_term() {
        JetPolynomial acc = parse_factor();
        for (;;) {
            skip_ws();
            if (peek() != '*') break;
            ++pos_;
            JetPolynomial f = parse_factor();
            acc = pad(acc) * pad(f);
        }
        return pad(acc);
    }

    JetPolynomial parse_factor() {
        JetPolynomial base = parse_atom();
        skip_ws();
        if (peek() == '^') {
            ++pos_;
            skip_ws();
            std::size_t at = pos_;
            long k = parse_int();
            if (k < 1) throw ParseError("exponent must be >= 1", at);
            JetPolynomial r = pad(base);
            JetPolynomial acc = r;
            for (long i = 1; i < k; ++i) acc = pad(acc) * r;
            return acc;
        }
        return base;
    }

    JetPolynomial parse_atom() {
        skip_ws();
        char c = peek();
        if (c == '(') {
            ++pos_;
            JetPolynomial p = parse_expr();
            skip_ws();
            if (peek() != ')') throw ParseError("expected ')'", pos_);
            ++pos_;
            return p;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) return parse_rational_atom();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return parse_var();
        throw ParseError(std::string("expected a term, found ") +
                             (c ? "'" + std::string(1, c) + "'" : "end of input"),
                         pos_);
    }

    JetPolynomial parse_rational_atom() {
        std::size_t at = pos_;
        std::string lit;
        while (std::isdigit(static_cast<unsigned char>(peek()))) lit += text_[pos_++];
        skip_ws();
        if (peek() == '/') {
            std::size_t save = pos_;
            ++pos_;
            skip_ws();
            if (!std::isdigit(static_cast<unsigned char>(peek()))) {
                pos_ = save;  // '/' did not start a rational literal
            } else {
                lit += '/';
                while (std::isdigit(static_cast<unsigned char>(peek()))) lit += text_[pos_++];
            }
        }
        Rational c = parse_rational(lit, at);
        JetPolynomial p(vars_.size());
        p.add_term(Monomial(vars_.size()), c);
        return p;
    }

    JetPolynomial parse_var() {
        std::size_t at = pos_;
        std::string name;
        while (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_')
            name += text_[pos_++];
        std::size_t idx = vars_.size();
        for (std::size_t i = 0; i < vars_.size(); ++i)
            if (vars_[i] == name) {
                idx = i;
                break;
            }
        if (idx == vars_.size()) {
            if (declared_)
                throw ParseError("unknown variable '" + name + "'", at);
            vars_.push_back(name);
        }
        JetPolynomial p(vars_.size());
        Monomial m(vars_.size());
        m.e[idx] = 1;
        p.add_term(m, Rational(1));
        return p;
    }

    long parse_int() {
        if (!std::isdigit(static_cast<unsigned char>(peek())))
            throw ParseError("expected an integer", pos_);
        long v = 0;
        while (std::isdigit(static_cast<unsigned char>(peek()))) {
            v = v * 10 + (text_[pos_] - '0');
            if (v > 1000000) throw ParseError("exponent too large", pos_);
            ++pos_;
        }
        return v;
    }

    // In first-use declaration mode the variable count can grow mid-parse;
    // pad exponent vectors up to the current count.
    JetPolynomial pad(const JetPolynomial& p) const {
        if (p.nvars() == vars_.size()) return p;
        JetPolynomial r(vars_.size(), p.order());
        for (const auto& [m, c] : p.terms()) {
            Monomial mm = m;
            mm.e.resize(vars_.size(), 0);
            r.add_term(mm, c);
        }
        return r;
    }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }
    char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

    std::string_view text_;
    bool declared_;
    std::vector<std::string> vars_;
    std::size_t pos_ = 0;
};

// Parses `text`; returns the polynomial and the variable list actually used.
inline std::pair<JetPolynomial, std::vector<std::string>> parse_poly_auto(
    std::string_view text) {
    PolyParser p(text, std::nullopt);
    JetPolynomial poly = p.parse();
    return {poly, p.vars()};
}

inline JetPolynomial parse_poly(std::string_view text, std::vector<std::string> variables) {
    PolyParser p(text, std::move(variables));
    return p.parse();
}

}  // namespace germ
