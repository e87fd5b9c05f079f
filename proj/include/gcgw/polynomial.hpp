#pragma once

// Multivariate polynomials over Q(i) with exact gcd (primitive pseudo-
// remainder sequences), exact division, derivatives and substitution.
// Variables are positional; names and kinds live in the VarTable of the
// owning chart (see ratfunc.hpp).

#include <map>
#include <string>
#include <vector>

#include "gcgw/rational.hpp"

namespace gcgw {

using Expo = std::vector<int>; // one non-negative exponent per variable

class Polynomial {
public:
    int nvars = 0;
    std::map<Expo, GaussianRational> terms;

    Polynomial() = default;
    explicit Polynomial(int nv) : nvars(nv) {}

    static Polynomial constant(int nv, GaussianRational c) {
        Polynomial p(nv);
        p.add_term(Expo(nv, 0), std::move(c));
        return p;
    }
    static Polynomial variable(int nv, int idx, int power = 1) {
        Polynomial p(nv);
        Expo e(nv, 0);
        e[idx] = power;
        p.add_term(e, GaussianRational(1));
        return p;
    }

    bool is_zero() const { return terms.empty(); }
    bool is_constant() const {
        if (terms.empty()) return true;
        if (terms.size() != 1) return false;
        for (int e : terms.begin()->first)
            if (e != 0) return false;
        return true;
    }
    GaussianRational constant_value() const {
        if (terms.empty()) return GaussianRational(0);
        return terms.begin()->second;
    }

    void add_term(const Expo& e, GaussianRational c) {
        if (c.is_zero()) return;
        auto it = terms.find(e);
        if (it == terms.end()) {
            terms.emplace(e, std::move(c));
        } else {
            it->second += c;
            if (it->second.is_zero()) terms.erase(it);
        }
    }

    int degree() const { // total degree
        int d = -1;
        for (const auto& [e, c] : terms) {
            int t = 0;
            for (int x : e) t += x;
            d = std::max(d, t);
        }
        return d;
    }
    int degree_in(int v) const {
        int d = -1;
        for (const auto& [e, c] : terms) d = std::max(d, e[v]);
        return d;
    }
    bool uses(int v) const { return degree_in(v) > 0; }

    // graded-lex leading term
    std::pair<Expo, GaussianRational> leading() const {
        if (terms.empty()) throw contract_error("leading term of zero polynomial");
        const Expo* best = nullptr;
        const GaussianRational* bc = nullptr;
        int bestdeg = -1;
        for (const auto& [e, c] : terms) {
            int t = 0;
            for (int x : e) t += x;
            if (best == nullptr || t > bestdeg || (t == bestdeg && e > *best)) {
                best = &e;
                bc = &c;
                bestdeg = t;
            }
        }
        return {*best, *bc};
    }

    Polynomial operator-() const {
        Polynomial r = *this;
        for (auto& [e, c] : r.terms) c = -c;
        return r;
    }
    friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
        Polynomial r = a;
        for (const auto& [e, c] : b.terms) r.add_term(e, c);
        return r;
    }
    friend Polynomial operator-(const Polynomial& a, const Polynomial& b) {
        Polynomial r = a;
        for (const auto& [e, c] : b.terms) r.add_term(e, -c);
        return r;
    }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        Polynomial r(std::max(a.nvars, b.nvars));
        for (const auto& [ea, ca] : a.terms)
            for (const auto& [eb, cb] : b.terms) {
                Expo e(r.nvars, 0);
                for (int v = 0; v < r.nvars; ++v)
                    e[v] = (v < static_cast<int>(ea.size()) ? ea[v] : 0) +
                           (v < static_cast<int>(eb.size()) ? eb[v] : 0);
                r.add_term(e, ca * cb);
            }
        return r;
    }
    friend Polynomial operator*(const GaussianRational& s, const Polynomial& b) {
        Polynomial r(b.nvars);
        for (const auto& [e, c] : b.terms) r.add_term(e, s * c);
        return r;
    }
    friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.terms == b.terms; }
    friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }
    friend bool operator<(const Polynomial& a, const Polynomial& b) { return a.terms < b.terms; }

    Polynomial pow(int e) const {
        Polynomial r = constant(nvars, GaussianRational(1));
        for (int t = 0; t < e; ++t) r = r * (*this);
        return r;
    }

    Polynomial derivative(int v) const {
        Polynomial r(nvars);
        for (const auto& [e, c] : terms) {
            if (e[v] == 0) continue;
            Expo e2 = e;
            e2[v] -= 1;
            r.add_term(e2, GaussianRational(Rational(e[v])) * c);
        }
        return r;
    }

    // exact division; throws when not divisible
    Polynomial div_exact(const Polynomial& g) const {
        if (g.is_zero()) throw contract_error("polynomial division by zero");
        Polynomial rem = *this, q(nvars);
        auto [lg, lcg] = g.leading();
        while (!rem.is_zero()) {
            auto [lr, lcr] = rem.leading();
            Expo e(nvars, 0);
            for (int v = 0; v < nvars; ++v) {
                e[v] = lr[v] - lg[v];
                if (e[v] < 0) throw contract_error("polynomial division is not exact");
            }
            Polynomial t(nvars);
            t.add_term(e, lcr / lcg);
            q = q + t;
            rem = rem - t * g;
        }
        return q;
    }
    bool divides(const Polynomial& f) const {
        try {
            f.div_exact(*this);
            return true;
        } catch (const contract_error&) {
            return false;
        }
    }

    // view as a univariate polynomial in v and return the coefficient of v^d
    Polynomial coeff_in(int v, int d) const {
        Polynomial r(nvars);
        for (const auto& [e, c] : terms)
            if (e[v] == d) {
                Expo e2 = e;
                e2[v] = 0;
                r.add_term(e2, c);
            }
        return r;
    }

    std::string str(const std::vector<std::string>& names) const;
};

namespace detail_poly {

inline Polynomial gcd_impl(Polynomial f, Polynomial g);

// gcd of all coefficients of f viewed in the variable v
inline Polynomial content_in(const Polynomial& f, int v) {
    Polynomial c(f.nvars);
    for (int d = 0; d <= f.degree_in(v); ++d) {
        Polynomial cf = f.coeff_in(v, d);
        if (cf.is_zero()) continue;
        c = c.is_zero() ? cf : gcd_impl(c, cf);
    }
    return c;
}

// pseudo-remainder of f by g in the variable v
inline Polynomial prem(Polynomial f, const Polynomial& g, int v) {
    int dg = g.degree_in(v);
    Polynomial lcg = g.coeff_in(v, dg);
    while (!f.is_zero() && f.degree_in(v) >= dg) {
        int df = f.degree_in(v);
        Polynomial lcf = f.coeff_in(v, df);
        Polynomial shift = Polynomial::variable(f.nvars, v, df - dg);
        f = lcg * f - lcf * shift * g;
    }
    return f;
}

inline Polynomial gcd_impl(Polynomial f, Polynomial g) {
    if (f.is_zero()) return g;
    if (g.is_zero()) return f;
    if (f.is_constant() || g.is_constant()) return Polynomial::constant(f.nvars, GaussianRational(1));
    int v = -1;
    for (int t = f.nvars - 1; t >= 0; --t)
        if (f.uses(t) || g.uses(t)) {
            v = t;
            break;
        }
    if (v < 0) return Polynomial::constant(f.nvars, GaussianRational(1));
    if (!f.uses(v)) return gcd_impl(content_in(g, v), f);
    if (!g.uses(v)) return gcd_impl(content_in(f, v), g);

    Polynomial cf = content_in(f, v), cg = content_in(g, v);
    Polynomial c = gcd_impl(cf, cg);
    Polynomial fp = f.div_exact(cf), gp = g.div_exact(cg);
    if (fp.degree_in(v) < gp.degree_in(v)) std::swap(fp, gp);
    while (true) {
        Polynomial r = prem(fp, gp, v);
        if (r.is_zero()) break;
        if (r.degree_in(v) == 0) return c; // coprime in v
        fp = gp;
        gp = r.div_exact(content_in(r, v));
    }
    return c * gp.div_exact(content_in(gp, v));
}

} // namespace detail_poly

// gcd normalized so its graded-lex leading coefficient is 1
inline Polynomial poly_gcd(const Polynomial& f, const Polynomial& g) {
    Polynomial r = detail_poly::gcd_impl(f, g);
    if (r.is_zero()) return r;
    auto [e, c] = r.leading();
    return (GaussianRational(1) / c) * r;
}

inline Polynomial poly_lcm(const Polynomial& f, const Polynomial& g) {
    if (f.is_zero() || g.is_zero()) return Polynomial(std::max(f.nvars, g.nvars));
    return (f * g).div_exact(poly_gcd(f, g));
}

inline std::string Polynomial::str(const std::vector<std::string>& names) const {
    if (terms.empty()) return "0";
    // graded-lex descending for readability
    std::vector<std::pair<Expo, GaussianRational>> sorted(terms.begin(), terms.end());
    std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) {
        int ta = 0, tb = 0;
        for (int x : a.first) ta += x;
        for (int x : b.first) tb += x;
        if (ta != tb) return ta > tb;
        return a.first > b.first;
    });
    std::string out;
    bool first = true;
    for (auto& [e, c0] : sorted) {
        GaussianRational c = c0;
        bool neg = (c.im == 0 && c.re < 0) || (c.re == 0 && c.im < 0);
        if (neg) c = -c;
        if (first) {
            if (neg) out += "-";
            first = false;
        } else {
            out += neg ? " - " : " + ";
        }
        std::string mono;
        for (size_t v = 0; v < e.size(); ++v) {
            if (e[v] == 0) continue;
            if (!mono.empty()) mono += "*";
            mono += names[v];
            if (e[v] > 1) mono += "^" + std::to_string(e[v]);
        }
        bool paren = c.re != 0 && c.im != 0;
        std::string cs = c.str();
        if (mono.empty()) out += paren ? "(" + cs + ")" : cs;
        else if (c.is_one()) out += mono;
        else out += (paren ? "(" + cs + ")" : cs) + "*" + mono;
    }
    return out;
}

} // namespace gcgw
