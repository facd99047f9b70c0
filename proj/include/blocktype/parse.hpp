#pragma once

// Text grammar for elements and automorphism parameters, shared by the CLI
// and the test fixtures.
//
//   element := term (('+'|'-') term)* | '0'
//   term    := [coeff '*'] atom
//   atom    := 'L[' int ',' nat ']' | 'c'
//   coeff   := int | int '/' posint
//
// Formatting emits terms in lexicographic (alpha, i) order, the central term
// last, coefficients in lowest terms with '/' only for denominators > 1.

#include <cctype>
#include <cstdint>
#include <sstream>
#include <string>

#include "blocktype/algebra.hpp"
#include "blocktype/maps.hpp"

namespace blocktype {

struct parse_error : std::invalid_argument {
    std::size_t position;
    parse_error(std::size_t pos, const std::string& what)
        : std::invalid_argument("parse error at position " + std::to_string(pos) + ": " +
                                what),
          position(pos) {}
};

namespace detail {

class ElementParser {
public:
    explicit ElementParser(const std::string& s) : s_(s) {}

    Element parse() {
        skip_ws();
        Element out;
        if (peek() == '0' && at_end(pos_ + 1)) return out;  // the zero element
        add_term(out, 1);
        skip_ws();
        while (!done()) {
            const char op = peek();
            if (op != '+' && op != '-') fail("expected '+', '-' or end of input");
            ++pos_;
            skip_ws();
            add_term(out, op == '-' ? -1 : 1);
            skip_ws();
        }
        return out;
    }

private:
    void add_term(Element& out, int sign) {
        Rational coeff = 1;
        if (peek() == '-' &&
            !std::isdigit(static_cast<unsigned char>(pos_ + 1 < s_.size() ? s_[pos_ + 1] : '\0'))) {
            // a bare leading minus, as in "-L[2,1]" or "-c"
            sign = -sign;
            ++pos_;
            skip_ws();
        }
        if (peek() == '-' || std::isdigit(static_cast<unsigned char>(peek()))) {
            coeff = parse_coeff();
            skip_ws();
            if (peek() != '*') fail("expected '*' between coefficient and atom");
            ++pos_;
            skip_ws();
        }
        coeff *= sign;
        if (peek() == 'c') {
            ++pos_;
            out.add_central(coeff);
            return;
        }
        if (peek() != 'L') fail("expected atom 'L[...]' or 'c'");
        ++pos_;
        expect('[');
        const std::int64_t alpha = parse_int();
        expect(',');
        skip_ws();
        const std::size_t ipos = pos_;
        const std::int64_t i = parse_int();
        if (i < 0) fail_at(ipos, "basis level must be nonnegative");
        expect(']');
        out.add_term({alpha, i}, coeff);
    }

    Rational parse_coeff() {
        const std::int64_t num = parse_int();
        if (peek() == '/') {
            ++pos_;
            const std::size_t dpos = pos_;
            const std::int64_t den = parse_int();
            if (den <= 0) fail_at(dpos, "denominator must be positive");
            return Rational(num, den);
        }
        return Rational(num);
    }

    std::int64_t parse_int() {
        skip_ws();
        const std::size_t start = pos_;
        bool neg = false;
        if (peek() == '-') {
            neg = true;
            ++pos_;
        }
        if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected integer");
        std::int64_t v = 0;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
            v = v * 10 + (s_[pos_] - '0');
            if (v < 0) fail_at(start, "integer literal out of range");
            ++pos_;
        }
        return neg ? -v : v;
    }

    void expect(char c) {
        skip_ws();
        if (peek() != c) fail(std::string("expected '") + c + "'");
        ++pos_;
    }

    char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
    bool done() const { return pos_ >= s_.size(); }
    bool at_end(std::size_t p) const {
        while (p < s_.size() && std::isspace(static_cast<unsigned char>(s_[p]))) ++p;
        return p >= s_.size();
    }
    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])))
            ++pos_;
    }
    [[noreturn]] void fail(const std::string& msg) const { fail_at(pos_, msg); }
    [[noreturn]] void fail_at(std::size_t pos, const std::string& msg) const {
        throw parse_error(pos, msg);
    }

    const std::string& s_;
    std::size_t pos_ = 0;
};

}  // namespace detail

inline Element parse_element(const std::string& s) { return detail::ElementParser(s).parse(); }

inline std::string format_element(const Element& x) {
    if (x.is_zero()) return "0";
    std::ostringstream os;
    bool leading = true;
    auto emit = [&](const Rational& coeff, const std::string& atom) {
        Rational mag = coeff;
        if (leading) {
            if (coeff < 0) {
                os << "-";
                mag = -coeff;
            }
            leading = false;
        } else if (coeff < 0) {
            os << " - ";
            mag = -coeff;
        } else {
            os << " + ";
        }
        if (mag != 1)
            os << rat_str(mag) << "*" << atom;
        else
            os << atom;
    };
    for (const auto& [b, c] : x.terms()) {
        std::ostringstream atom;
        atom << "L[" << b.alpha << "," << b.i << "]";
        emit(c, atom.str());
    }
    if (x.central() != 0) emit(x.central(), "c");
    return os.str();
}

inline Rational parse_rational(const std::string& s) {
    std::size_t slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rational(Integer(s));
        Integer num(s.substr(0, slash));
        Integer den(s.substr(slash + 1));
        if (den <= 0) throw parse_error(slash + 1, "denominator must be positive");
        return Rational(num, den);
    } catch (const std::runtime_error&) {
        throw parse_error(0, "malformed rational '" + s + "'");
    }
}

/// "s=+1,mu=3/2,nu=2"
inline AutParams parse_aut_params(const std::string& s) {
    AutParams p;
    std::istringstream is(s);
    std::string field;
    int seen = 0;
    while (std::getline(is, field, ',')) {
        const std::size_t eq = field.find('=');
        if (eq == std::string::npos) throw parse_error(0, "expected key=value in '" + field + "'");
        const std::string key = field.substr(0, eq), val = field.substr(eq + 1);
        if (key == "s") {
            if (val != "+1" && val != "1" && val != "-1")
                throw parse_error(eq + 1, "s must be +1 or -1");
            p.s = val == "-1" ? -1 : 1;
        } else if (key == "mu") {
            p.mu = parse_rational(val);
        } else if (key == "nu") {
            p.nu = parse_rational(val);
        } else {
            throw parse_error(0, "unknown automorphism field '" + key + "'");
        }
        ++seen;
    }
    if (seen != 3) throw parse_error(0, "automorphism parameters need s, mu and nu");
    if (p.mu == 0 || p.nu == 0) throw parse_error(0, "mu and nu must be nonzero");
    return p;
}

inline std::string format_aut_params(const AutParams& p) {
    std::ostringstream os;
    os << "s=" << (p.s > 0 ? "+1" : "-1") << ",mu=" << rat_str(p.mu)
       << ",nu=" << rat_str(p.nu);
    return os.str();
}

}  // namespace blocktype
