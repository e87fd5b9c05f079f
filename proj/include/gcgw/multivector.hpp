#pragma once

// The exterior algebra over a based space, templated over the coefficient
// ring.  Index subsets are bitmasks (dimension capped at 31 generators);
// Koszul signs come from transposition counts, so every sign is canonical.

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "gcgw/rational.hpp"

namespace gcgw {

using Mask = std::uint32_t;

inline int mask_grade(Mask m) { return __builtin_popcount(m); }

// Sign of sorting the concatenation (A, B) of two disjoint increasing
// subsets into one increasing subset.
inline int merge_sign(Mask a, Mask b) {
    int inversions = 0;
    for (Mask bb = b; bb; bb &= bb - 1) {
        int j = __builtin_ctz(bb);
        Mask above = a >> (j + 1);
        inversions += __builtin_popcount(above);
    }
    return (inversions & 1) ? -1 : 1;
}

// Sign picked up by extracting generator t from the increasing monomial m.
inline int extract_sign(Mask m, int t) {
    Mask below = m & ((Mask(1) << t) - 1);
    return (__builtin_popcount(below) & 1) ? -1 : 1;
}

// A finite-dimensional real vector space with a named ordered basis; the
// index order fixes every sign convention downstream.
struct BasedSpace {
    int dim = 0;
    std::vector<std::string> labels; // e1..en by default

    BasedSpace() = default;
    explicit BasedSpace(int n) : dim(n) {
        if (n < 0 || n > 31) throw input_error("space dimension must be in [0,31]");
        labels.reserve(n);
        for (int i = 1; i <= n; ++i) labels.push_back("e" + std::to_string(i));
    }
    BasedSpace(std::vector<std::string> names) : dim(static_cast<int>(names.size())), labels(std::move(names)) {
        if (dim > 31) throw input_error("space dimension must be in [0,31]");
        for (size_t i = 0; i < labels.size(); ++i)
            for (size_t j = i + 1; j < labels.size(); ++j)
                if (labels[i] == labels[j]) throw input_error("duplicate basis label: " + labels[i]);
    }

    int index_of(const std::string& name) const {
        for (int i = 0; i < dim; ++i)
            if (labels[i] == name) return i;
        return -1;
    }

    friend bool operator==(const BasedSpace& a, const BasedSpace& b) {
        return a.dim == b.dim && a.labels == b.labels;
    }
    friend bool operator!=(const BasedSpace& a, const BasedSpace& b) { return !(a == b); }
};

template <class R>
class Multivector {
public:
    int dim = 0;
    std::map<Mask, R> terms; // no zero coefficients stored

    Multivector() = default;
    explicit Multivector(int n) : dim(n) {}

    static Multivector scalar(int n, R c) {
        Multivector m(n);
        m.add_term(0, std::move(c));
        return m;
    }
    static Multivector generator(int n, int i) {
        Multivector m(n);
        m.add_term(Mask(1) << i, R(1));
        return m;
    }
    static Multivector monomial(int n, Mask mask, R c) {
        Multivector m(n);
        m.add_term(mask, std::move(c));
        return m;
    }

    bool is_zero() const { return terms.empty(); }

    void add_term(Mask m, R c) {
        if (c.is_zero()) return;
        auto it = terms.find(m);
        if (it == terms.end()) {
            terms.emplace(m, std::move(c));
        } else {
            it->second += c;
            if (it->second.is_zero()) terms.erase(it);
        }
    }

    R coeff(Mask m) const {
        auto it = terms.find(m);
        return it == terms.end() ? R(0) : it->second;
    }

    // Homogeneous degree, or -1 for 0, or -2 for mixed.
    int grade() const {
        if (terms.empty()) return -1;
        int g = mask_grade(terms.begin()->first);
        for (const auto& [m, c] : terms)
            if (mask_grade(m) != g) return -2;
        return g;
    }
    bool is_homogeneous() const { return grade() != -2; }

    Multivector graded_part(int g) const {
        Multivector r(dim);
        for (const auto& [m, c] : terms)
            if (mask_grade(m) == g) r.terms.emplace(m, c);
        return r;
    }
    int top_grade() const {
        int g = -1;
        for (const auto& [m, c] : terms) g = std::max(g, mask_grade(m));
        return g;
    }

    Multivector operator-() const {
        Multivector r = *this;
        for (auto& [m, c] : r.terms) c = -c;
        return r;
    }
    friend Multivector operator+(const Multivector& x, const Multivector& y) {
        check_same(x, y);
        Multivector r = x;
        for (const auto& [m, c] : y.terms) r.add_term(m, c);
        return r;
    }
    friend Multivector operator-(const Multivector& x, const Multivector& y) {
        check_same(x, y);
        Multivector r = x;
        for (const auto& [m, c] : y.terms) r.add_term(m, -c);
        return r;
    }
    friend Multivector operator*(const R& s, const Multivector& y) {
        Multivector r(y.dim);
        for (const auto& [m, c] : y.terms) r.add_term(m, s * c);
        return r;
    }
    friend bool operator==(const Multivector& x, const Multivector& y) {
        return x.dim == y.dim && x.terms == y.terms;
    }
    friend bool operator!=(const Multivector& x, const Multivector& y) { return !(x == y); }

    friend Multivector wedge(const Multivector& x, const Multivector& y) {
        check_same(x, y);
        Multivector r(x.dim);
        for (const auto& [ma, ca] : x.terms)
            for (const auto& [mb, cb] : y.terms) {
                if (ma & mb) continue;
                int s = merge_sign(ma, mb);
                R c = ca * cb;
                if (s < 0) c = -c;
                r.add_term(ma | mb, std::move(c));
            }
        return r;
    }

    // Contraction with the coefficient vector of a single generator slot:
    // i_X with X = sum x_t E_t, a graded derivation of degree -1.
    friend Multivector interior(const std::vector<R>& x, const Multivector& w) {
        if (static_cast<int>(x.size()) != w.dim) throw contract_error("interior: coefficient count mismatch");
        Multivector r(w.dim);
        for (const auto& [m, c] : w.terms) {
            for (Mask mm = m; mm; mm &= mm - 1) {
                int t = __builtin_ctz(mm);
                if (x[t].is_zero()) continue;
                R coeff = x[t] * c;
                if (extract_sign(m, t) < 0) coeff = -coeff;
                r.add_term(m & ~(Mask(1) << t), std::move(coeff));
            }
        }
        return r;
    }

    static void check_same(const Multivector& x, const Multivector& y) {
        if (x.dim != y.dim) throw input_error("multivectors over different spaces");
    }
};

using QiForm = Multivector<GaussianRational>;

inline QiForm conj(const QiForm& x) {
    QiForm r(x.dim);
    for (const auto& [m, c] : x.terms) r.terms.emplace(m, c.conj());
    return r;
}

// Graded exponential of a form whose components all have even degree >= 2.
// The sum 1 + b + b^2/2! + ... terminates at the space dimension.
template <class R>
Multivector<R> form_exp(const Multivector<R>& b) {
    for (const auto& [m, c] : b.terms) {
        int g = mask_grade(m);
        if (g % 2 != 0 || g < 2)
            throw contract_error("form_exp: exponent must have even degree >= 2");
    }
    Multivector<R> result = Multivector<R>::scalar(b.dim, R(1));
    Multivector<R> power = result;
    R factorial(1);
    for (int k = 1; 2 * k <= b.dim; ++k) {
        power = wedge(power, b);
        if (power.is_zero()) break;
        factorial *= R(k);
        result = result + (R(1) / factorial) * power;
    }
    return result;
}

// Deterministic rendering: terms sorted by (grade, then mask), with the
// labels of the underlying space joined by '^'.
inline std::string form_str(const QiForm& x, const BasedSpace& sp) {
    using R = GaussianRational;
    if (x.terms.empty()) return "0";
    std::vector<std::pair<Mask, R>> sorted(x.terms.begin(), x.terms.end());
    std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) {
        int ga = mask_grade(a.first), gb = mask_grade(b.first);
        if (ga != gb) return ga < gb;
        return a.first < b.first;
    });
    std::string out;
    bool first = true;
    for (auto& [m, c] : sorted) {
        R coeff = c;
        bool neg = (coeff.im == 0 && coeff.re < 0) || (coeff.re == 0 && coeff.im < 0);
        if (neg) coeff = -coeff;
        if (first) {
            if (neg) out += "-";
            first = false;
        } else {
            out += neg ? " - " : " + ";
        }
        std::string mono;
        for (Mask mm = m; mm; mm &= mm - 1) {
            int t = __builtin_ctz(mm);
            if (!mono.empty()) mono += "^";
            mono += sp.labels[t];
        }
        bool needs_paren = coeff.re != 0 && coeff.im != 0;
        std::string cs = coeff.str();
        if (mono.empty()) {
            out += needs_paren ? "(" + cs + ")" : cs;
        } else if (coeff.is_one()) {
            out += mono;
        } else {
            out += (needs_paren ? "(" + cs + ")" : cs) + " " + mono;
        }
    }
    return out;
}

} // namespace gcgw
