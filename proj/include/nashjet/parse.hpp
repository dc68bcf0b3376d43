#pragma once

// Recursive-descent parser for the polynomial grammar
//
//   poly     := ['+'|'-'] term (('+'|'-') term)*
//   term     := factor ('*' factor)*
//   factor   := rational | variable ['^' integer]
//   rational := digits ['/' digits]
//
// Variables are x1..xs; x, y, z, u, v alias x1..x5 when s <= 5. Implicit
// multiplication is rejected. Errors carry the offset of the offending
// character for caret diagnostics.

#include <cctype>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "polynomial.hpp"

namespace nashjet {

class parse_error : public std::runtime_error {
public:
    parse_error(const std::string& message, std::size_t position)
        : std::runtime_error(message), position_(position) {}

    std::size_t position() const { return position_; }

private:
    std::size_t position_;
};

inline std::string caret_diagnostic(std::string_view input, std::size_t position,
                                    std::string_view message) {
    std::string out = "error: ";
    out += message;
    out += "\n  ";
    out += input;
    out += "\n  ";
    out += std::string(std::min(position, input.size()), ' ');
    out += "^";
    return out;
}

namespace detail {

class PolynomialParser {
public:
    PolynomialParser(std::string_view text, int nvars) : text_(text), nvars_(nvars) {}

    Polynomial parse() {
        std::vector<Term> terms;
        skip_ws();
        if (at_end()) throw parse_error("empty polynomial", pos_);
        bool negative = false;
        if (peek() == '+' || peek() == '-') negative = (take() == '-');
        parse_term(terms, negative);
        skip_ws();
        while (!at_end()) {
            char c = peek();
            if (c != '+' && c != '-')
                throw parse_error(std::string("expected '+' or '-' before '") + c + "'", pos_);
            negative = (take() == '-');
            parse_term(terms, negative);
            skip_ws();
        }
        return Polynomial::from_terms(nvars_, std::move(terms));
    }

private:
    void parse_term(std::vector<Term>& out, bool negative) {
        Rational coeff = negative ? Rational(-1) : Rational(1);
        std::vector<int> exps(static_cast<std::size_t>(nvars_), 0);
        parse_factor(coeff, exps);
        skip_ws();
        while (!at_end() && peek() == '*') {
            take();
            parse_factor(coeff, exps);
            skip_ws();
        }
        if (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())))) {
            throw parse_error("implicit multiplication is not allowed; use '*'", pos_);
        }
        out.push_back(Term{MultiIndex(std::move(exps)), std::move(coeff)});
    }

    void parse_factor(Rational& coeff, std::vector<int>& exps) {
        skip_ws();
        if (at_end()) throw parse_error("expected a coefficient or variable", pos_);
        char c = peek();
        if (std::isdigit(static_cast<unsigned char>(c))) {
            coeff *= parse_rational();
            return;
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            int var = parse_variable();
            int exp = 1;
            skip_ws();
            if (!at_end() && peek() == '^') {
                take();
                skip_ws();
                exp = parse_integer("expected exponent after '^'");
            }
            exps[static_cast<std::size_t>(var)] += exp;
            return;
        }
        throw parse_error(std::string("unexpected character '") + c + "'", pos_);
    }

    Rational parse_rational() {
        Integer num(parse_digits("expected a number"));
        skip_ws();
        if (!at_end() && peek() == '/') {
            take();
            skip_ws();
            std::size_t den_pos = pos_;
            Integer den(parse_digits("expected a denominator after '/'"));
            if (den == 0) throw parse_error("zero denominator", den_pos);
            return make_rational(num, den);
        }
        return Rational(num);
    }

    int parse_variable() {
        std::size_t start = pos_;
        char c = take();
        bool has_digits = !at_end() && std::isdigit(static_cast<unsigned char>(peek()));
        if (c == 'x' && has_digits) {
            int k = parse_integer("expected a variable index");
            if (k < 1 || k > nvars_)
                throw parse_error("variable x" + std::to_string(k) + " is out of range (s = " +
                                      std::to_string(nvars_) + ")",
                                  start);
            return k - 1;
        }
        static const std::string aliases = "xyzuv";
        std::size_t idx = aliases.find(c);
        if (idx == std::string::npos || has_digits)
            throw parse_error(std::string("unknown variable '") + c + "'", start);
        if (nvars_ > 5)
            throw parse_error("aliases x,y,z,u,v are only defined for s <= 5; use x1..xs", start);
        if (static_cast<int>(idx) >= nvars_)
            throw parse_error(std::string("variable '") + c + "' is out of range (s = " +
                                  std::to_string(nvars_) + ")",
                              start);
        return static_cast<int>(idx);
    }

    std::string parse_digits(const char* what) {
        skip_ws();
        std::size_t start = pos_;
        while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) take();
        if (pos_ == start) throw parse_error(what, pos_);
        return std::string(text_.substr(start, pos_ - start));
    }

    int parse_integer(const char* what) {
        std::size_t start = pos_;
        std::string digits = parse_digits(what);
        if (digits.size() > 6) throw parse_error("integer too large", start);
        return std::stoi(digits);
    }

    bool at_end() const { return pos_ >= text_.size(); }
    char peek() const { return text_[pos_]; }
    char take() { return text_[pos_++]; }
    void skip_ws() {
        while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) take();
    }

    std::string_view text_;
    int nvars_;
    std::size_t pos_ = 0;
};

}  // namespace detail

inline Polynomial parse_polynomial(std::string_view text, int nvars) {
    if (nvars < 1) throw std::invalid_argument("need at least one variable");
    return detail::PolynomialParser(text, nvars).parse();
}

// comma-separated positive integers, e.g. "3,2"
inline std::vector<int> parse_weight_list(std::string_view text) {
    std::vector<int> out;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t comma = text.find(',', pos);
        std::string_view piece =
            text.substr(pos, comma == std::string_view::npos ? text.size() - pos : comma - pos);
        std::size_t start = piece.find_first_not_of(" \t");
        std::size_t stop = piece.find_last_not_of(" \t");
        if (start == std::string_view::npos)
            throw parse_error("empty weight entry", pos);
        piece = piece.substr(start, stop - start + 1);
        for (char c : piece)
            if (!std::isdigit(static_cast<unsigned char>(c)))
                throw parse_error("weights must be positive integers", pos);
        if (piece.size() > 6) throw parse_error("weight too large", pos);
        int w = std::stoi(std::string(piece));
        if (w < 1) throw parse_error("weights must be positive integers", pos);
        out.push_back(w);
        if (comma == std::string_view::npos) break;
        pos = comma + 1;
    }
    return out;
}

}  // namespace nashjet
