#pragma once

// Charts, chart nerves and differential forms with rational-function
// coefficients.  A chart's transverse holomorphic variables carry the
// 1-form generators dz_v and dzbar_v; overlaps are holomorphic substitution
// maps between chart coordinate rings.  Forms pull back along overlaps with
// the exact Jacobian of the substitution.

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "gcgw/linalg.hpp"
#include "gcgw/multivector.hpp"
#include "gcgw/parse.hpp"
#include "gcgw/ratfunc.hpp"

namespace gcgw {

// ---- rational function expression parser ('^' is an integer power) -----

namespace detail {

inline RationalFunction parse_rf_expr(Lexer& lx, const std::shared_ptr<const VarTable>& t);

inline RationalFunction parse_rf_atom(Lexer& lx, const std::shared_ptr<const VarTable>& t) {
    if (lx.accept('(')) {
        RationalFunction inner = parse_rf_expr(lx, t);
        if (!lx.accept(')')) lx.fail("expected ')'");
        return inner;
    }
    char c = lx.peek();
    if (std::isdigit(static_cast<unsigned char>(c))) {
        Rational r = lx.rational();
        if (lx.peek() == 'i') {
            Lexer probe = lx;
            std::string id = probe.identifier();
            if (id == "i") {
                lx.seek(probe.pos());
                return RationalFunction::constant(t, GaussianRational(Rational(0), r));
            }
        }
        return RationalFunction::constant(t, GaussianRational(r));
    }
    std::string name = lx.identifier();
    if (name == "i") return RationalFunction::constant(t, GaussianRational::i());
    int idx = t ? t->index_of(name) : -1;
    if (idx < 0) lx.fail("unknown variable '" + name + "'");
    return RationalFunction::variable(t, idx);
}

inline RationalFunction parse_rf_power(Lexer& lx, const std::shared_ptr<const VarTable>& t) {
    RationalFunction base = parse_rf_atom(lx, t);
    if (lx.accept('^')) {
        bool neg = lx.accept('-');
        Integer e = lx.integer();
        long ee = e.convert_to<long>();
        RationalFunction r = RationalFunction::constant(t, GaussianRational(1));
        for (long k = 0; k < ee; ++k) r = r * base;
        if (neg) r = RationalFunction::constant(t, GaussianRational(1)) / r;
        return r;
    }
    return base;
}

inline RationalFunction parse_rf_term(Lexer& lx, const std::shared_ptr<const VarTable>& t) {
    RationalFunction acc = parse_rf_power(lx, t);
    for (;;) {
        if (lx.accept('*')) acc = acc * parse_rf_power(lx, t);
        else if (lx.accept('/')) acc = acc / parse_rf_power(lx, t);
        else if (lx.starts_factor()) acc = acc * parse_rf_power(lx, t);
        else return acc;
    }
}

inline RationalFunction parse_rf_expr(Lexer& lx, const std::shared_ptr<const VarTable>& t) {
    bool neg = false;
    if (lx.accept('-')) neg = true;
    else lx.accept('+');
    RationalFunction acc = parse_rf_term(lx, t);
    if (neg) acc = -acc;
    while (!lx.eof()) {
        if (lx.accept('+')) acc = acc + parse_rf_term(lx, t);
        else if (lx.accept('-')) acc = acc - parse_rf_term(lx, t);
        else break;
    }
    return acc;
}

} // namespace detail

inline RationalFunction parse_ratfunc(const std::string& text, const std::shared_ptr<const VarTable>& t) {
    Lexer lx(text);
    RationalFunction r = detail::parse_rf_expr(lx, t);
    if (!lx.eof()) lx.fail("trailing input");
    return r;
}

// ---- charts --------------------------------------------------------------

struct Chart {
    std::string name;
    std::shared_ptr<const VarTable> table;
    std::vector<int> hol;             // indices of holomorphic variables
    std::vector<bool> punctured;      // per hol variable: negative powers allowed

    int transverse_rank() const { return static_cast<int>(hol.size()); }
};

using ChartForm = Multivector<RationalFunction>;
// form generators of a chart: dz_1..dz_r, dzbar_1..dzbar_r (r = hol count)

inline int form_gens(const Chart& c) { return 2 * c.transverse_rank(); }

inline std::string form_gen_label(const Chart& c, int g) {
    int r = c.transverse_rank();
    return "d" + c.table->vars[c.hol[g % r]].name + (g < r ? "" : "bar");
}

inline BasedSpace form_space(const Chart& c) {
    std::vector<std::string> labels;
    for (int g = 0; g < form_gens(c); ++g) labels.push_back(form_gen_label(c, g));
    return BasedSpace(labels);
}

inline int form_p(const Chart& c, Mask m) { return mask_grade(m & ((Mask(1) << c.transverse_rank()) - 1)); }
inline int form_q(const Chart& c, Mask m) { return mask_grade(m >> c.transverse_rank()); }

inline ChartForm form_component(const Chart& c, const ChartForm& x, int p, int q) {
    ChartForm r(x.dim);
    for (const auto& [m, coeff] : x.terms)
        if (form_p(c, m) == p && form_q(c, m) == q) r.terms.emplace(m, coeff);
    return r;
}

// full derivative in the transverse variables (leaf derivatives have no
// place in the transverse complex; leaf-dependent coefficients are the
// caller's responsibility to reject)
inline ChartForm chart_d(const Chart& c, const ChartForm& x) {
    int r = c.transverse_rank();
    ChartForm out(form_gens(c));
    for (const auto& [m, coeff] : x.terms) {
        for (int j = 0; j < r; ++j) {
            int zv = c.hol[j];
            int zbv = c.table->vars[zv].partner;
            RationalFunction dh = coeff.derivative(zv);
            RationalFunction db = coeff.derivative(zbv);
            if (!dh.is_zero()) {
                ChartForm t = wedge(ChartForm::monomial(form_gens(c), Mask(1) << j, dh),
                                    ChartForm::monomial(form_gens(c), m, RationalFunction(1)));
                out = out + t;
            }
            if (!db.is_zero()) {
                ChartForm t = wedge(ChartForm::monomial(form_gens(c), Mask(1) << (r + j), db),
                                    ChartForm::monomial(form_gens(c), m, RationalFunction(1)));
                out = out + t;
            }
        }
    }
    return out;
}

// (p,q) -> (p,q+1) component: the conjugate-direction derivatives
inline ChartForm chart_dL(const Chart& c, const ChartForm& x) {
    int r = c.transverse_rank();
    ChartForm out(form_gens(c));
    for (const auto& [m, coeff] : x.terms)
        for (int j = 0; j < r; ++j) {
            int zbv = c.table->vars[c.hol[j]].partner;
            RationalFunction db = coeff.derivative(zbv);
            if (!db.is_zero())
                out = out + wedge(ChartForm::monomial(form_gens(c), Mask(1) << (r + j), db),
                                  ChartForm::monomial(form_gens(c), m, RationalFunction(1)));
        }
    return out;
}

inline ChartForm chart_dLbar(const Chart& c, const ChartForm& x) { return chart_d(c, x) - chart_dL(c, x); }

// complex conjugation of a form: swap dz and dzbar generators, conjugate
// coefficients; the reorder sign is (-1)^{pq} per monomial
inline ChartForm form_conj(const Chart& c, const ChartForm& x) {
    int r = c.transverse_rank();
    ChartForm out(form_gens(c));
    for (const auto& [m, coeff] : x.terms) {
        Mask lo = m & ((Mask(1) << r) - 1), hi = m >> r;
        Mask swapped = hi | (lo << r);
        int p = mask_grade(lo), q = mask_grade(hi);
        RationalFunction cc = coeff.conj();
        if ((p * q) % 2 == 1) cc = -cc;
        out.add_term(swapped, cc);
    }
    return out;
}

// ---- matrices of forms -----------------------------------------------------

struct FormMatrix {
    int rows = 0, cols = 0, gens = 0;
    std::vector<ChartForm> a;

    FormMatrix() = default;
    FormMatrix(int r, int c, int g) : rows(r), cols(c), gens(g), a(static_cast<size_t>(r) * c, ChartForm(g)) {}

    ChartForm& operator()(int r, int c) { return a[static_cast<size_t>(r) * cols + c]; }
    const ChartForm& operator()(int r, int c) const { return a[static_cast<size_t>(r) * cols + c]; }

    bool is_zero() const {
        for (const auto& x : a)
            if (!x.is_zero()) return false;
        return true;
    }
    FormMatrix operator-() const {
        FormMatrix r = *this;
        for (auto& x : r.a) x = -x;
        return r;
    }
    friend FormMatrix operator+(const FormMatrix& x, const FormMatrix& y) {
        FormMatrix r = x;
        for (size_t i = 0; i < r.a.size(); ++i) r.a[i] = r.a[i] + y.a[i];
        return r;
    }
    friend FormMatrix operator-(const FormMatrix& x, const FormMatrix& y) { return x + (-y); }
    friend bool operator==(const FormMatrix& x, const FormMatrix& y) {
        return x.rows == y.rows && x.cols == y.cols && x.a == y.a;
    }

    // matrix product with entrywise wedge (order preserved)
    friend FormMatrix operator*(const FormMatrix& x, const FormMatrix& y) {
        FormMatrix r(x.rows, y.cols, x.gens);
        for (int i = 0; i < x.rows; ++i)
            for (int k = 0; k < x.cols; ++k) {
                if (x(i, k).is_zero()) continue;
                for (int j = 0; j < y.cols; ++j)
                    if (!y(k, j).is_zero()) r(i, j) = r(i, j) + wedge(x(i, k), y(k, j));
            }
        return r;
    }
    friend FormMatrix operator*(const Matrix<RationalFunction>& s, const FormMatrix& y) {
        FormMatrix r(s.rows, y.cols, y.gens);
        for (int i = 0; i < s.rows; ++i)
            for (int k = 0; k < s.cols; ++k) {
                if (s(i, k).is_zero()) continue;
                for (int j = 0; j < y.cols; ++j) r(i, j) = r(i, j) + s(i, k) * y(k, j);
            }
        return r;
    }
    friend FormMatrix operator*(const FormMatrix& y, const Matrix<RationalFunction>& s) {
        FormMatrix r(y.rows, s.cols, y.gens);
        for (int i = 0; i < y.rows; ++i)
            for (int k = 0; k < y.cols; ++k) {
                if (y(i, k).is_zero()) continue;
                for (int j = 0; j < s.cols; ++j) r(i, j) = r(i, j) + s(k, j) * y(i, k);
            }
        return r;
    }

    ChartForm trace() const {
        ChartForm t(gens);
        for (int i = 0; i < rows; ++i) t = t + (*this)(i, i);
        return t;
    }
};

inline FormMatrix matrix_d(const Chart& c, const FormMatrix& m) {
    FormMatrix r(m.rows, m.cols, m.gens);
    for (size_t i = 0; i < m.a.size(); ++i) r.a[i] = chart_d(c, m.a[i]);
    return r;
}
inline FormMatrix matrix_dL(const Chart& c, const FormMatrix& m) {
    FormMatrix r(m.rows, m.cols, m.gens);
    for (size_t i = 0; i < m.a.size(); ++i) r.a[i] = chart_dL(c, m.a[i]);
    return r;
}

// ---- the nerve -------------------------------------------------------------

class ChartNerve {
public:
    std::vector<Chart> charts;
    // glue[(a,b)]: for each hol variable of chart b (in order), its
    // expression in chart a's coordinates, valid on the overlap (a,b)
    std::map<std::pair<int, int>, std::vector<RationalFunction>> glue;

    int chart_index(const std::string& name) const {
        for (size_t i = 0; i < charts.size(); ++i)
            if (charts[i].name == name) return static_cast<int>(i);
        return -1;
    }

    bool has_overlap(int a, int b) const { return glue.count({a, b}) > 0; }

    // substitution of a function on chart b into chart a coordinates
    RationalFunction pull_function(int a, int b, const RationalFunction& f) const {
        const auto& g = glue.at({a, b});
        const Chart& cb = charts[b];
        if (f.uses_leaf()) throw input_error("leaf variables cannot cross chart overlaps");
        std::vector<RationalFunction> values(cb.table->size());
        for (int v = 0; v < cb.table->size(); ++v) {
            const Var& var = cb.table->vars[v];
            if (var.kind == VarKind::Hol) {
                int pos = hol_position(cb, v);
                values[v] = g[pos];
            } else if (var.kind == VarKind::Bar) {
                int pos = hol_position(cb, var.partner);
                values[v] = g[pos].conj();
            } else {
                values[v] = RationalFunction(); // rejected above when used
            }
        }
        return f.substitute(charts[a].table, values);
    }

    // pullback of a form on chart b into chart a coordinates
    ChartForm pull_form(int a, int b, const ChartForm& w) const {
        const auto& g = glue.at({a, b});
        const Chart& ca = charts[a];
        const Chart& cb = charts[b];
        int ra = ca.transverse_rank(), rb = cb.transverse_rank();
        // substituted generators
        std::vector<ChartForm> gen_sub(2 * rb, ChartForm(2 * ra));
        for (int j = 0; j < rb; ++j) {
            for (int u = 0; u < ra; ++u) {
                RationalFunction jac = g[j].derivative(ca.hol[u]);
                if (!jac.is_zero()) {
                    gen_sub[j].add_term(Mask(1) << u, jac);
                    gen_sub[rb + j].add_term(Mask(1) << (ra + u), jac.conj());
                }
            }
        }
        ChartForm out(2 * ra);
        for (const auto& [m, coeff] : w.terms) {
            ChartForm term = ChartForm::scalar(2 * ra, pull_function(a, b, coeff));
            for (int gbit = 0; gbit < 2 * rb; ++gbit)
                if (m & (Mask(1) << gbit)) term = wedge(term, gen_sub[gbit]);
            out = out + term;
        }
        return out;
    }

    Matrix<RationalFunction> pull_matrix(int a, int b, const Matrix<RationalFunction>& m) const {
        Matrix<RationalFunction> r(m.rows, m.cols);
        for (int i = 0; i < m.rows; ++i)
            for (int j = 0; j < m.cols; ++j) r(i, j) = pull_function(a, b, m(i, j));
        return r;
    }
    FormMatrix pull_form_matrix(int a, int b, const FormMatrix& m) const {
        FormMatrix r(m.rows, m.cols, 2 * charts[a].transverse_rank());
        for (int i = 0; i < m.rows; ++i)
            for (int j = 0; j < m.cols; ++j) r(i, j) = pull_form(a, b, m(i, j));
        return r;
    }

    // glue maps must be mutually inverse on double overlaps and free of
    // conjugate/leaf variables
    void validate() const {
        for (const auto& [key, g] : glue) {
            auto [a, b] = key;
            const Chart& cb = charts[b];
            if (static_cast<int>(g.size()) != cb.transverse_rank())
                throw input_error("glue map arity mismatch on (" + charts[a].name + "," + cb.name + ")");
            for (const auto& f : g)
                if (!f.is_gh())
                    throw input_error("glue map on (" + charts[a].name + "," + cb.name +
                                      ") is not holomorphic");
            if (!has_overlap(b, a)) continue;
            for (int j = 0; j < cb.transverse_rank(); ++j) {
                RationalFunction v = RationalFunction::variable(cb.table, cb.hol[j]);
                RationalFunction round = pull_function(b, a, glue.at({a, b})[j]);
                if (round != v)
                    throw input_error("glue maps on (" + charts[a].name + "," + cb.name +
                                      ") are not mutually inverse");
            }
        }
    }

    static int hol_position(const Chart& c, int var_index) {
        for (size_t p = 0; p < c.hol.size(); ++p)
            if (c.hol[p] == var_index) return static_cast<int>(p);
        throw contract_error("variable is not holomorphic in this chart");
    }
};

} // namespace gcgw
