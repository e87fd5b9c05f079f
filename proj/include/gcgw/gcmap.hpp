#pragma once

// Generalized-complex maps between GC linear spaces.  Two decision routes:
// a closed-form criterion when the target carries a plain complex structure
// (psi J_V = J_W psi and psi beta_V = 0), and the general route comparing
// the tangent-image inclusion with exact pushforward of the associated
// linear Poisson graph.  Both are exact; tests cross-validate them.

#include <string>

#include "gcgw/gcs.hpp"

namespace gcgw {

struct GcMapReport {
    bool is_gc_map = false;
    std::string route;         // "complex-target" or "general"
    std::string failing;       // which condition failed, if any
    bool image_law_checked = false;
    bool image_law_holds = false; // psi(E cap conj E) = E' cap conj E'
};

struct GcMapCandidate {
    GcStructure source, target;
    QiMatrix psi; // target.m() x source.m()
};

namespace detail {

// column span of psi * (columns of a)
inline QiMatrix map_cols(const QiMatrix& psi, const QiMatrix& a) {
    if (a.cols == 0) return QiMatrix(psi.rows, 0);
    return psi * a;
}

// sigma(x)(.) for x in E: the covector part of any lift of x into L.
inline std::vector<GaussianRational> sigma_lift(const QiMatrix& L, const std::vector<GaussianRational>& x) {
    int m2 = L.rows, m = m2 / 2;
    QiMatrix top(m, L.cols);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < L.cols; ++j) top(i, j) = L(i, j);
    auto sol = top.solve(x);
    if (!sol) throw contract_error("vector is not in the tangent image of L");
    std::vector<GaussianRational> xi(m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < L.cols; ++j) xi[i] += L(m + i, j) * (*sol)[j];
    return xi;
}

// The graph L(span, omega) = { X + xi : X in span, xi|span = omega(X,.) }.
inline QiMatrix isotropic_graph(const QiMatrix& span, const QiMatrix& omega_on_span) {
    int m = span.rows, r = span.cols;
    std::vector<std::vector<GaussianRational>> cols;
    QiMatrix spanT = span.transpose();
    for (int a = 0; a < r; ++a) {
        // particular covector with xi(d_b) = omega(d_a, d_b)
        std::vector<GaussianRational> rhs(r);
        for (int b = 0; b < r; ++b) rhs[b] = omega_on_span(a, b);
        auto xi = spanT.solve(rhs);
        if (!xi) throw contract_error("isotropic graph: no covector lift");
        std::vector<GaussianRational> v(2 * m);
        for (int i = 0; i < m; ++i) v[i] = span(i, a);
        for (int i = 0; i < m; ++i) v[m + i] = (*xi)[i];
        cols.push_back(std::move(v));
    }
    QiMatrix ann = spanT.kernel(); // covectors vanishing on the span
    for (int j = 0; j < ann.cols; ++j) {
        std::vector<GaussianRational> v(2 * m);
        for (int i = 0; i < m; ++i) v[m + i] = ann(i, j);
        cols.push_back(std::move(v));
    }
    return QiMatrix::from_cols(2 * m, cols);
}

// Linear Poisson graph of a structure: L(Delta tensor C, Im sigma|Delta).
inline QiMatrix poisson_graph(const GcStructure& j) {
    EigenData ed = j.eigenbundle();
    const QiMatrix& delta = ed.delta_real;
    int r = delta.cols;
    QiMatrix omega(r, r);
    for (int a = 0; a < r; ++a) {
        auto xi = sigma_lift(ed.L, delta.col(a));
        for (int b = 0; b < r; ++b) {
            GaussianRational val;
            for (int i = 0; i < delta.rows; ++i) val += xi[i] * delta(i, b);
            omega(a, b) = GaussianRational(val.im); // imaginary part, exactly
        }
    }
    return isotropic_graph(delta, omega);
}

// Dirac pushforward of a subspace P of V + V*:
//   psi_*(P) = { psi(Y) + eta : Y + psi^T(eta) in P }.
inline QiMatrix pushforward(const QiMatrix& p, const QiMatrix& psi) {
    int mv = psi.cols, mw = psi.rows, c = p.cols;
    QiMatrix sys(2 * mv, mv + mw + c);
    for (int i = 0; i < mv; ++i) sys(i, i) = GaussianRational(-1);
    QiMatrix psit = psi.transpose();
    for (int i = 0; i < mv; ++i)
        for (int j = 0; j < mw; ++j) sys(mv + i, mv + j) = -psit(i, j);
    for (int i = 0; i < 2 * mv; ++i)
        for (int j = 0; j < c; ++j) sys(i, mv + mw + j) = p(i, j);
    QiMatrix ker = sys.kernel();
    std::vector<std::vector<GaussianRational>> cols;
    for (int j = 0; j < ker.cols; ++j) {
        std::vector<GaussianRational> v(2 * mw);
        for (int i = 0; i < mw; ++i)
            for (int t = 0; t < mv; ++t) v[i] += psi(i, t) * ker(t, j);
        for (int i = 0; i < mw; ++i) v[mw + i] = ker(mv + i, j);
        cols.push_back(std::move(v));
    }
    return QiMatrix::from_cols(2 * mw, cols);
}

} // namespace detail

inline GcMapReport check_gc_map(const GcMapCandidate& cand, bool force_general_route = false) {
    GcMapReport rep;
    const GcStructure& v = cand.source;
    const GcStructure& w = cand.target;
    if (cand.psi.rows != w.m() || cand.psi.cols != v.m())
        throw input_error("gc map candidate: matrix shape mismatch");

    QiMatrix jw = w.j_block();
    bool complex_target = !force_general_route && w.b_map().is_zero() && w.beta_map().is_zero() &&
                          (jw * jw == -QiMatrix::identity(w.m()));
    if (complex_target) {
        rep.route = "complex-target";
        bool commutes = (cand.psi * v.j_block() == jw * cand.psi);
        bool kills_beta = (cand.psi * v.beta_map()).is_zero();
        rep.is_gc_map = commutes && kills_beta;
        if (!commutes) rep.failing = "psi J_V != J_W psi";
        else if (!kills_beta) rep.failing = "psi beta_V != 0";
    } else {
        rep.route = "general";
        EigenData ev = v.eigenbundle(), ew = w.eigenbundle();
        // (1) psi(E_V) inside E_W
        QiMatrix img = detail::map_cols(cand.psi, ev.E);
        bool tangent_ok = true;
        for (int j = 0; j < img.cols && tangent_ok; ++j)
            tangent_ok = ew.E.col_space_contains(img.col(j));
        // (2) pushforward of the Poisson graph equals the target's
        QiMatrix pv = detail::poisson_graph(v);
        QiMatrix pw = detail::poisson_graph(w);
        bool poisson_ok = QiMatrix::same_col_space(detail::pushforward(pv, cand.psi), pw);
        rep.is_gc_map = tangent_ok && poisson_ok;
        if (!tangent_ok) rep.failing = "psi(E_V) not contained in E_W";
        else if (!poisson_ok) rep.failing = "Poisson pushforward mismatch";
    }

    if (rep.is_gc_map) {
        // image law: psi maps E_V cap conj(E_V) onto E_W cap conj(E_W)
        EigenData ev = v.eigenbundle(), ew = w.eigenbundle();
        QiMatrix img = detail::map_cols(cand.psi, ev.delta_real);
        rep.image_law_checked = true;
        rep.image_law_holds = QiMatrix::same_col_space(img, ew.delta_real);
    }
    return rep;
}

} // namespace gcgw
