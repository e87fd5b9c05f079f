#pragma once

// Recursive-descent parsers for the two text grammars used by every input
// file (see docs/grammar.md for the EBNF):
//   * form expressions over a based space   ('^' is the wedge product)
//   * rational-function expressions          ('^' is an integer power)
// Both are whitespace-insensitive; 'i' is the imaginary unit and therefore
// reserved.  Errors carry the offset of the offending token.

#include <cctype>
#include <string>

#include "gcgw/multivector.hpp"
#include "gcgw/rational.hpp"

namespace gcgw {

class Lexer {
public:
    explicit Lexer(const std::string& s) : src_(s) {}

    void skip_ws() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    }
    bool eof() {
        skip_ws();
        return pos_ >= src_.size();
    }
    char peek() {
        skip_ws();
        return pos_ < src_.size() ? src_[pos_] : '\0';
    }
    char get() {
        skip_ws();
        return src_[pos_++];
    }
    bool accept(char c) {
        if (peek() == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    size_t pos() const { return pos_; }
    void seek(size_t p) { pos_ = p; }

    [[noreturn]] void fail(const std::string& what) {
        throw input_error("parse error at offset " + std::to_string(pos_) + ": " + what +
                          " in \"" + src_ + "\"");
    }

    Integer integer() {
        skip_ws();
        if (pos_ >= src_.size() || !std::isdigit(static_cast<unsigned char>(src_[pos_]))) fail("expected digit");
        Integer v = 0;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
            v = v * 10 + (src_[pos_] - '0');
            ++pos_;
        }
        return v;
    }

    // unsigned rational "p" or "p/q"; a '/' not followed by a digit is left
    // for the caller (it may be rational-function division)
    Rational rational() {
        Integer num = integer();
        size_t mark = pos_;
        if (accept('/')) {
            skip_ws();
            if (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
                Integer den = integer();
                if (den == 0) fail("zero denominator");
                return Rational(num, den);
            }
            pos_ = mark;
        }
        return Rational(num);
    }

    std::string identifier() {
        skip_ws();
        if (pos_ >= src_.size()) fail("expected identifier");
        char c = src_[pos_];
        if (!std::isalpha(static_cast<unsigned char>(c)) && c != '_') fail("expected identifier");
        std::string name;
        while (pos_ < src_.size()) {
            char d = src_[pos_];
            if (std::isalnum(static_cast<unsigned char>(d)) || d == '_') {
                name += d;
                ++pos_;
            } else
                break;
        }
        return name;
    }

    bool starts_factor() {
        char c = peek();
        return std::isdigit(static_cast<unsigned char>(c)) || std::isalpha(static_cast<unsigned char>(c)) ||
               c == '_' || c == '(';
    }

private:
    const std::string& src_;
    size_t pos_ = 0;
};

// ---- form expressions -------------------------------------------------

namespace detail {

inline QiForm parse_form_expr(Lexer& lx, const BasedSpace& sp);

inline QiForm parse_form_factor(Lexer& lx, const BasedSpace& sp) {
    if (lx.accept('(')) {
        QiForm inner = parse_form_expr(lx, sp);
        if (!lx.accept(')')) lx.fail("expected ')'");
        return inner;
    }
    char c = lx.peek();
    if (std::isdigit(static_cast<unsigned char>(c))) {
        Rational r = lx.rational();
        // "2i" — rational immediately followed by the imaginary unit
        if (lx.peek() == 'i') {
            Lexer probe = lx;
            std::string id = probe.identifier();
            if (id == "i") {
                lx.seek(probe.pos());
                return QiForm::scalar(sp.dim, GaussianRational(Rational(0), r));
            }
        }
        return QiForm::scalar(sp.dim, GaussianRational(r));
    }
    std::string name = lx.identifier();
    if (name == "i") return QiForm::scalar(sp.dim, GaussianRational::i());
    int idx = sp.index_of(name);
    if (idx < 0) lx.fail("unknown basis label '" + name + "'");
    return QiForm::generator(sp.dim, idx);
}

inline QiForm parse_form_term(Lexer& lx, const BasedSpace& sp) {
    QiForm acc = parse_form_factor(lx, sp);
    for (;;) {
        if (lx.accept('^') || lx.accept('*')) {
            acc = wedge(acc, parse_form_factor(lx, sp));
        } else if (lx.starts_factor()) {
            acc = wedge(acc, parse_form_factor(lx, sp)); // juxtaposition, e.g. "2 e1", "i e2"
        } else {
            return acc;
        }
    }
}

inline QiForm parse_form_expr(Lexer& lx, const BasedSpace& sp) {
    bool neg = false;
    if (lx.accept('-')) neg = true;
    else lx.accept('+');
    QiForm acc = parse_form_term(lx, sp);
    if (neg) acc = -acc;
    while (!lx.eof()) {
        if (lx.accept('+')) acc = acc + parse_form_term(lx, sp);
        else if (lx.accept('-')) acc = acc - parse_form_term(lx, sp);
        else break;
    }
    return acc;
}

} // namespace detail

inline QiForm parse_form(const std::string& text, const BasedSpace& sp) {
    Lexer lx(text);
    QiForm r = detail::parse_form_expr(lx, sp);
    if (!lx.eof()) lx.fail("trailing input");
    return r;
}

inline GaussianRational parse_scalar(const std::string& text) {
    BasedSpace none(0);
    QiForm f = parse_form(text, none);
    return f.coeff(0);
}

} // namespace gcgw
