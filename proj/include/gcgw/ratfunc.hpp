#pragma once

// The rational-function field of a chart.  A VarTable names the variables
// and records their kinds: transverse holomorphic (z), its conjugate (zbar)
// and leaf coordinates (p).  A function is generalized holomorphic exactly
// when, in reduced form, no conjugate or leaf variable occurs; that makes
// GH-ness a syntactic, decidable predicate.

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "gcgw/polynomial.hpp"

namespace gcgw {

enum class VarKind { Hol, Bar, Leaf };

struct Var {
    std::string name;
    VarKind kind = VarKind::Hol;
    int partner = -1; // index of the conjugate variable (self for leaf)
};

struct VarTable {
    std::vector<Var> vars;

    int size() const { return static_cast<int>(vars.size()); }
    int index_of(const std::string& name) const {
        for (int i = 0; i < size(); ++i)
            if (vars[i].name == name) return i;
        return -1;
    }
    std::vector<std::string> names() const {
        std::vector<std::string> n;
        for (const auto& v : vars) n.push_back(v.name);
        return n;
    }
    std::vector<int> hol_indices() const {
        std::vector<int> r;
        for (int i = 0; i < size(); ++i)
            if (vars[i].kind == VarKind::Hol) r.push_back(i);
        return r;
    }

    // a table with holomorphic variables (paired with auto-created "...bar"
    // conjugates) followed by leaf variables
    static std::shared_ptr<VarTable> make(const std::vector<std::string>& hol,
                                          const std::vector<std::string>& leaf = {}) {
        auto t = std::make_shared<VarTable>();
        for (const auto& h : hol) {
            int a = t->size();
            t->vars.push_back({h, VarKind::Hol, a + 1});
            t->vars.push_back({h + "bar", VarKind::Bar, a});
        }
        for (const auto& l : leaf) {
            int a = t->size();
            t->vars.push_back({l, VarKind::Leaf, a});
        }
        for (int i = 0; i < t->size(); ++i)
            for (int j = i + 1; j < t->size(); ++j)
                if (t->vars[i].name == t->vars[j].name)
                    throw input_error("duplicate variable name: " + t->vars[i].name);
        return t;
    }
};

class RationalFunction {
public:
    std::shared_ptr<const VarTable> table; // null for bare constants
    Polynomial num, den;

    RationalFunction() : num(0), den(Polynomial::constant(0, GaussianRational(1))) {}
    RationalFunction(int c) : RationalFunction() { num = Polynomial::constant(0, GaussianRational(c)); }
    RationalFunction(long c) : RationalFunction(static_cast<int>(c)) {}
    explicit RationalFunction(GaussianRational c) : RationalFunction() {
        num = Polynomial::constant(0, std::move(c));
    }
    RationalFunction(std::shared_ptr<const VarTable> t, Polynomial n, Polynomial d)
        : table(std::move(t)), num(std::move(n)), den(std::move(d)) {
        normalize();
    }

    static RationalFunction constant(std::shared_ptr<const VarTable> t, GaussianRational c) {
        int nv = t ? t->size() : 0;
        return RationalFunction(std::move(t), Polynomial::constant(nv, std::move(c)),
                                Polynomial::constant(nv, GaussianRational(1)));
    }
    static RationalFunction variable(std::shared_ptr<const VarTable> t, int idx) {
        int nv = t->size();
        return RationalFunction(t, Polynomial::variable(nv, idx),
                                Polynomial::constant(nv, GaussianRational(1)));
    }

    bool is_zero() const { return num.is_zero(); }
    bool is_one() const { return num == den; }
    bool is_constant() const { return num.is_constant() && den.is_constant(); }
    GaussianRational constant_value() const { return num.constant_value() / den.constant_value(); }

    // true when no conjugate or leaf variable occurs
    bool is_gh() const {
        if (!table) return true;
        for (int v = 0; v < table->size(); ++v)
            if (table->vars[v].kind != VarKind::Hol && (num.uses(v) || den.uses(v))) return false;
        return true;
    }
    std::vector<std::string> offending_vars() const {
        std::vector<std::string> r;
        if (!table) return r;
        for (int v = 0; v < table->size(); ++v)
            if (table->vars[v].kind != VarKind::Hol && (num.uses(v) || den.uses(v)))
                r.push_back(table->vars[v].name);
        return r;
    }
    bool uses_leaf() const {
        if (!table) return false;
        for (int v = 0; v < table->size(); ++v)
            if (table->vars[v].kind == VarKind::Leaf && (num.uses(v) || den.uses(v))) return true;
        return false;
    }

    RationalFunction operator-() const {
        RationalFunction r = *this;
        r.num = -r.num;
        return r;
    }
    friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
        auto [x, y] = align(a, b);
        return RationalFunction(x.table, x.num * y.den + y.num * x.den, x.den * y.den);
    }
    friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) {
        return a + (-b);
    }
    friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
        auto [x, y] = align(a, b);
        return RationalFunction(x.table, x.num * y.num, x.den * y.den);
    }
    friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) {
        if (b.is_zero()) throw contract_error("division by the zero rational function");
        auto [x, y] = align(a, b);
        return RationalFunction(x.table, x.num * y.den, x.den * y.num);
    }
    RationalFunction& operator+=(const RationalFunction& o) { return *this = *this + o; }
    RationalFunction& operator-=(const RationalFunction& o) { return *this = *this - o; }
    RationalFunction& operator*=(const RationalFunction& o) { return *this = *this * o; }
    RationalFunction& operator/=(const RationalFunction& o) { return *this = *this / o; }

    friend bool operator==(const RationalFunction& a, const RationalFunction& b) {
        auto [x, y] = align(a, b);
        return x.num * y.den == y.num * x.den;
    }
    friend bool operator!=(const RationalFunction& a, const RationalFunction& b) { return !(a == b); }
    friend bool operator<(const RationalFunction& a, const RationalFunction& b) {
        if (a.num != b.num) return a.num < b.num;
        return a.den < b.den;
    }

    RationalFunction conj() const {
        if (!table) {
            RationalFunction r = *this;
            for (auto& [e, c] : r.num.terms) c = c.conj();
            for (auto& [e, c] : r.den.terms) c = c.conj();
            return r;
        }
        auto swap_poly = [&](const Polynomial& p) {
            Polynomial r(p.nvars);
            for (const auto& [e, c] : p.terms) {
                Expo e2(p.nvars, 0);
                for (int v = 0; v < p.nvars; ++v) e2[table->vars[v].partner] += e[v];
                r.add_term(e2, c.conj());
            }
            return r;
        };
        return RationalFunction(table, swap_poly(num), swap_poly(den));
    }

    // derivative with respect to variable index v
    RationalFunction derivative(int v) const {
        if (!table || v >= num.nvars) return RationalFunction();
        Polynomial n = num.derivative(v) * den - num * den.derivative(v);
        return RationalFunction(table, std::move(n), den * den);
    }

    // substitute every variable: hol vars by the given map, conjugates by
    // the conjugated map; leaf variables are rejected (they do not cross
    // charts)
    RationalFunction substitute(const std::shared_ptr<const VarTable>& target,
                                const std::vector<RationalFunction>& value_of_var) const {
        if (!table) {
            int nv = target ? target->size() : 0;
            Polynomial n(nv), d(nv);
            for (auto& [e, c] : num.terms) n.add_term(Expo(nv, 0), c);
            for (auto& [e, c] : den.terms) d.add_term(Expo(nv, 0), c);
            return RationalFunction(target, n, d);
        }
        auto eval_poly = [&](const Polynomial& p) {
            RationalFunction acc = RationalFunction::constant(target, GaussianRational(0));
            for (const auto& [e, c] : p.terms) {
                RationalFunction term = RationalFunction::constant(target, c);
                for (int v = 0; v < p.nvars; ++v)
                    for (int t = 0; t < e[v]; ++t) term = term * value_of_var[v];
                acc = acc + term;
            }
            return acc;
        };
        RationalFunction n = eval_poly(num), d = eval_poly(den);
        return n / d;
    }

    GaussianRational eval(const std::vector<GaussianRational>& point) const {
        auto ev = [&](const Polynomial& p) {
            GaussianRational acc;
            for (const auto& [e, c] : p.terms) {
                GaussianRational t = c;
                for (int v = 0; v < p.nvars; ++v)
                    for (int k = 0; k < e[v]; ++k) t *= point[v];
                acc += t;
            }
            return acc;
        };
        GaussianRational d = ev(den);
        if (d.is_zero()) throw contract_error("evaluation hits a pole");
        return ev(num) / d;
    }

    std::string str() const {
        std::vector<std::string> names = table ? table->names() : std::vector<std::string>{};
        std::string n = num.str(names);
        if (den.is_constant() && den.constant_value() == GaussianRational(1)) return n;
        return "(" + n + ")/(" + den.str(names) + ")";
    }

private:
    void normalize() {
        if (den.is_zero()) throw contract_error("zero denominator in rational function");
        if (num.is_zero()) {
            den = Polynomial::constant(den.nvars, GaussianRational(1));
            return;
        }
        Polynomial g = poly_gcd(num, den);
        if (!g.is_constant() || g.constant_value() != GaussianRational(1)) {
            num = num.div_exact(g);
            den = den.div_exact(g);
        }
        auto [e, c] = den.leading();
        if (!(c == GaussianRational(1))) {
            GaussianRational inv = GaussianRational(1) / c;
            num = inv * num;
            den = inv * den;
        }
    }

    static std::pair<RationalFunction, RationalFunction> align(const RationalFunction& a,
                                                               const RationalFunction& b) {
        if (a.table == b.table) return {a, b};
        if (!a.table) {
            RationalFunction a2 = a.substitute(b.table, {});
            return {a2, b};
        }
        if (!b.table) {
            RationalFunction b2 = b.substitute(a.table, {});
            return {a, b2};
        }
        throw contract_error("rational functions over different charts");
    }
};

} // namespace gcgw
