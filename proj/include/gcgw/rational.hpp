#pragma once

// Exact scalar arithmetic: arbitrary-precision rationals and the field Q(i).
// Every coefficient in the library is a GaussianRational; no floating point
// enters any computation (decimal rendering is a presentation-layer concern).

#include <boost/multiprecision/cpp_int.hpp>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace gcgw {

using Integer  = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Thrown when a caller violates an operation's contract (maps to exit code 3
// in the CLI).
struct contract_error : std::logic_error {
    using std::logic_error::logic_error;
};

// Thrown on malformed user input: expression syntax, schema violations
// (maps to exit code 2 in the CLI).
struct input_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline std::string rational_str(const Rational& r) {
    std::ostringstream os;
    os << r;
    return os.str();
}

// Exact square root of a non-negative rational, if it is a perfect square.
inline std::optional<Rational> rational_sqrt(const Rational& r) {
    if (r < 0) return std::nullopt;
    Integer n = boost::multiprecision::numerator(r);
    Integer d = boost::multiprecision::denominator(r);
    Integer sn = boost::multiprecision::sqrt(n);
    Integer sd = boost::multiprecision::sqrt(d);
    if (sn * sn != n || sd * sd != d) return std::nullopt;
    return Rational(sn, sd);
}

// An element a + b*i of Q(i), the ground field of every computation.
// cpp_rational keeps each part in lowest terms with positive denominator.
class GaussianRational {
public:
    Rational re, im;

    GaussianRational() = default;
    GaussianRational(long v) : re(v) {}          // NOLINT(implicit)
    GaussianRational(int v) : re(v) {}           // NOLINT(implicit)
    GaussianRational(Rational r) : re(std::move(r)) {}
    GaussianRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

    static GaussianRational i() { return {Rational(0), Rational(1)}; }

    bool is_zero() const { return re == 0 && im == 0; }
    bool is_real() const { return im == 0; }
    bool is_one() const { return re == 1 && im == 0; }

    GaussianRational conj() const { return {re, -im}; }
    Rational norm2() const { return re * re + im * im; }

    GaussianRational operator-() const { return {-re, -im}; }

    GaussianRational& operator+=(const GaussianRational& o) {
        re += o.re;
        im += o.im;
        return *this;
    }
    GaussianRational& operator-=(const GaussianRational& o) {
        re -= o.re;
        im -= o.im;
        return *this;
    }
    GaussianRational& operator*=(const GaussianRational& o) {
        Rational r = re * o.re - im * o.im;
        Rational i = re * o.im + im * o.re;
        re = std::move(r);
        im = std::move(i);
        return *this;
    }
    GaussianRational& operator/=(const GaussianRational& o) {
        if (o.is_zero()) throw contract_error("division by zero in Q(i)");
        Rational n = o.norm2();
        Rational r = (re * o.re + im * o.im) / n;
        Rational i = (im * o.re - re * o.im) / n;
        re = std::move(r);
        im = std::move(i);
        return *this;
    }

    friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
    friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
    friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
    friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }
    friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
        return a.re == b.re && a.im == b.im;
    }
    friend bool operator!=(const GaussianRational& a, const GaussianRational& b) { return !(a == b); }

    GaussianRational inverse() const {
        GaussianRational one(1);
        return one / *this;
    }

    // Total order used only for deterministic pivoting / printing.
    friend bool operator<(const GaussianRational& a, const GaussianRational& b) {
        if (a.re != b.re) return a.re < b.re;
        return a.im < b.im;
    }

    // Canonical text form: "0", "2", "-1/2", "i", "-i", "3/4i", "1 + 2i",
    // "1 - 1/2i".  parse_scalar() in parse.hpp accepts exactly these shapes.
    std::string str() const {
        if (is_zero()) return "0";
        std::ostringstream os;
        if (im == 0) {
            os << re;
            return os.str();
        }
        auto imag_part = [&](const Rational& v) {
            std::ostringstream t;
            if (v == 1) t << "i";
            else if (v == -1) t << "-i";
            else t << v << "i";
            return t.str();
        };
        if (re == 0) return imag_part(im);
        os << re;
        if (im > 0) os << " + " << imag_part(im);
        else os << " - " << imag_part(-im);
        return os.str();
    }

    friend std::ostream& operator<<(std::ostream& os, const GaussianRational& g) { return os << g.str(); }
};

inline GaussianRational gq(long num, long den = 1) { return GaussianRational(Rational(num, den)); }

} // namespace gcgw
