#pragma once

// Generalized complex structures on a based space, in the invariant model:
// axiom checks (with integrability over a Lie algebra), the +i eigenspace
// and type, B-field transforms, generalized-complex maps, the pure-spinor
// line and its two-way correspondence with structures, Calabi-Yau style
// verification and the induced leaf distribution.

#include <optional>
#include <string>
#include <vector>

#include "gcgw/lie.hpp"
#include "gcgw/linalg.hpp"
#include "gcgw/multivector.hpp"

namespace gcgw {

// ---- conversions between 2-forms / bivectors and their induced maps ----

// Value matrix W2 of a 2-form: W2[i][j] = B(e_i, e_j).
inline QiMatrix two_form_value_matrix(const QiForm& b) {
    int n = b.dim;
    QiMatrix w(n, n);
    for (const auto& [m, c] : b.terms) {
        if (mask_grade(m) != 2) throw input_error("expected a 2-form");
        int i = __builtin_ctz(m);
        int j = __builtin_ctz(m & (m - 1));
        w(i, j) = c;
        w(j, i) = -c;
    }
    return w;
}

inline QiForm two_form_from_value_matrix(const QiMatrix& w) {
    QiForm b(w.rows);
    for (int i = 0; i < w.rows; ++i)
        for (int j = i + 1; j < w.cols; ++j) b.add_term((Mask(1) << i) | (Mask(1) << j), w(i, j));
    return b;
}

// Matrix of the map X -> B(X, .) in the (e_i) / (e^i) coordinates.
inline QiMatrix two_form_map(const QiForm& b) { return two_form_value_matrix(b).transpose(); }

// Clifford action (X + eta) . rho = i_X rho + eta ^ rho.
inline QiForm clifford_act(const GeneralizedVector& v, const QiForm& rho) {
    QiForm eta(rho.dim);
    for (int k = 0; k < rho.dim; ++k) eta.add_term(Mask(1) << k, v.cov[k]);
    return interior(v.vec, rho) + wedge(eta, rho);
}

// ---- reports -----------------------------------------------------------

struct AxiomReport {
    bool square_ok = false;       // J^2 = -1
    bool orthogonal_ok = false;   // <Ju, Jv> = <u, v>
    std::optional<bool> integrable; // Nijenhuis tensor, when a Lie algebra was supplied
    std::string witness;          // first failing datum, for diagnostics

    bool passed() const {
        return square_ok && orthogonal_ok && (!integrable.has_value() || *integrable);
    }
};

struct EigenData {
    QiMatrix L;          // 2m x m, columns span the +i eigenspace
    QiMatrix E;          // m x r, columns span the tangent projection of L
    QiMatrix delta_real; // m x d, real basis of E cap conj(E)
    int type = 0;        // codim of E in the complexified tangent space
    bool l_cap_lbar_trivial = false;
};

class GcStructure {
public:
    BasedSpace space;
    QiMatrix big; // 2m x 2m, real entries, acting on stacked (vector; covector)

    GcStructure() = default;
    GcStructure(BasedSpace sp, QiMatrix matrix) : space(std::move(sp)), big(std::move(matrix)) {
        if (big.rows != 2 * space.dim || big.cols != 2 * space.dim)
            throw input_error("GC structure matrix must be 2n x 2n");
        if (!is_real(big)) throw input_error("GC structure matrix must be real");
    }

    int m() const { return space.dim; }

    // Assemble (-J, beta; B, J^T) from an endomorphism J, a 2-form b and a
    // bivector (given as a 2-vector over the dual labels).
    static GcStructure from_blocks(BasedSpace sp, const QiMatrix& J, const QiForm& b_form,
                                   const QiForm& beta_bivector) {
        int n = sp.dim;
        if (J.rows != n || J.cols != n) throw input_error("J block must be n x n");
        QiMatrix bmap = two_form_map(b_form);
        QiMatrix betamap = two_form_map(beta_bivector);
        QiMatrix big(2 * n, 2 * n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                big(i, j) = -J(i, j);
                big(i, n + j) = betamap(i, j);
                big(n + i, j) = bmap(i, j);
                big(n + i, n + j) = J(j, i);
            }
        return GcStructure(std::move(sp), std::move(big));
    }

    QiMatrix j_block() const {
        QiMatrix r(m(), m());
        for (int i = 0; i < m(); ++i)
            for (int j = 0; j < m(); ++j) r(i, j) = -big(i, j);
        return r;
    }
    QiMatrix beta_map() const {
        QiMatrix r(m(), m());
        for (int i = 0; i < m(); ++i)
            for (int j = 0; j < m(); ++j) r(i, j) = big(i, m() + j);
        return r;
    }
    QiMatrix b_map() const {
        QiMatrix r(m(), m());
        for (int i = 0; i < m(); ++i)
            for (int j = 0; j < m(); ++j) r(i, j) = big(m() + i, j);
        return r;
    }

    GeneralizedVector apply(const GeneralizedVector& v) const {
        auto x = v.stacked();
        std::vector<GaussianRational> y(x.size());
        for (int i = 0; i < big.rows; ++i)
            for (int j = 0; j < big.cols; ++j)
                if (!big(i, j).is_zero()) y[i] += big(i, j) * x[j];
        return GeneralizedVector::from_stacked(y);
    }

    AxiomReport check_axioms(const LieAlgebra* ambient = nullptr) const {
        AxiomReport rep;
        int n2 = 2 * m();
        QiMatrix sq = big * big;
        QiMatrix minus_id = -QiMatrix::identity(n2);
        rep.square_ok = (sq == minus_id);
        if (!rep.square_ok) {
            for (int j = 0; j < n2 && rep.witness.empty(); ++j)
                for (int i = 0; i < n2; ++i)
                    if (sq(i, j) != minus_id(i, j)) {
                        rep.witness = "square defect at basis section " + section_label(j);
                        break;
                    }
        }
        // pairing matrix (without the global 1/2, which cancels)
        QiMatrix g(n2, n2);
        for (int i = 0; i < m(); ++i) {
            g(i, m() + i) = GaussianRational(1);
            g(m() + i, i) = GaussianRational(1);
        }
        rep.orthogonal_ok = (big.transpose() * g * big == g);
        if (!rep.orthogonal_ok && rep.witness.empty()) rep.witness = "pairing not preserved";

        if (ambient != nullptr) {
            if (ambient->space.dim != m()) throw input_error("ambient algebra dimension mismatch");
            rep.integrable = true;
            for (int a = 0; a < n2 && *rep.integrable; ++a)
                for (int b = a + 1; b < n2; ++b) {
                    GeneralizedVector ca = section_basis(a), cb = section_basis(b);
                    GeneralizedVector jca = apply(ca), jcb = apply(cb);
                    GeneralizedVector nij = ambient->courant(jca, jcb) - apply(ambient->courant(jca, cb)) -
                                            apply(ambient->courant(ca, jcb)) - ambient->courant(ca, cb);
                    if (!nij.is_zero()) {
                        rep.integrable = false;
                        rep.witness = "Nijenhuis(" + section_label(a) + ", " + section_label(b) + ") != 0";
                        break;
                    }
                }
        }
        return rep;
    }

    EigenData eigenbundle() const {
        EigenData ed;
        int n2 = 2 * m();
        QiMatrix shifted = big;
        for (int i = 0; i < n2; ++i) shifted(i, i) -= GaussianRational::i();
        ed.L = shifted.kernel();
        if (ed.L.cols != m())
            throw contract_error("defective eigenstructure: dim L = " + std::to_string(ed.L.cols));
        // tangent projection
        QiMatrix eproj(m(), ed.L.cols);
        for (int i = 0; i < m(); ++i)
            for (int j = 0; j < ed.L.cols; ++j) eproj(i, j) = ed.L(i, j);
        QiMatrix ech = eproj.transpose();
        ech.rref();
        std::vector<std::vector<GaussianRational>> cols;
        for (int r = 0; r < ech.rows; ++r) {
            std::vector<GaussianRational> v(m());
            bool nz = false;
            for (int c = 0; c < m(); ++c) {
                v[c] = ech(r, c);
                if (!v[c].is_zero()) nz = true;
            }
            if (nz) cols.push_back(std::move(v));
        }
        ed.E = QiMatrix::from_cols(m(), cols);
        ed.type = m() - ed.E.cols; // complex codimension of E in V tensor C
        ed.l_cap_lbar_trivial = (QiMatrix::hstack(ed.L, conj(ed.L)).rank() == n2);
        ed.delta_real = real_points(intersect_col_spaces(ed.E, conj(ed.E)));
        return ed;
    }

    // Conjugation by the shear of a closed 2-form.
    GcStructure b_transform(const QiForm& b_form, const LieAlgebra* ambient = nullptr) const {
        if (ambient != nullptr) {
            QiForm db = ambient->d(b_form);
            if (!db.is_zero())
                throw input_error("B-field is not closed: dB = " + form_str(db, ambient->space));
        }
        QiMatrix bmap = two_form_map(b_form);
        int n = m();
        QiMatrix eb = QiMatrix::identity(2 * n), ebinv = eb;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                eb(n + i, j) = bmap(i, j);
                ebinv(n + i, j) = -bmap(i, j);
            }
        return GcStructure(space, ebinv * big * eb);
    }

    // ---- helpers ----

    GeneralizedVector section_basis(int a) const {
        return a < m() ? GeneralizedVector::basis_vector(m(), a)
                       : GeneralizedVector::basis_covector(m(), a - m());
    }
    std::string section_label(int a) const {
        return a < m() ? space.labels[a] : space.labels[a - m()] + "^";
    }

    static QiMatrix intersect_col_spaces(const QiMatrix& a, const QiMatrix& b) {
        if (a.cols == 0 || b.cols == 0) return QiMatrix(a.rows, 0);
        QiMatrix stacked = QiMatrix::hstack(a, -b);
        QiMatrix ker = stacked.kernel();
        std::vector<std::vector<GaussianRational>> gens;
        for (int j = 0; j < ker.cols; ++j) {
            std::vector<GaussianRational> coeff(a.cols);
            for (int i = 0; i < a.cols; ++i) coeff[i] = ker(i, j);
            std::vector<GaussianRational> v(a.rows);
            for (int i = 0; i < a.rows; ++i)
                for (int c = 0; c < a.cols; ++c) v[i] += a(i, c) * coeff[c];
            gens.push_back(std::move(v));
        }
        QiMatrix span = QiMatrix::from_cols(a.rows, gens);
        // reduce to a basis
        QiMatrix ech = span.transpose();
        ech.rref();
        std::vector<std::vector<GaussianRational>> basis;
        for (int r = 0; r < ech.rows; ++r) {
            std::vector<GaussianRational> v(a.rows);
            bool nz = false;
            for (int c = 0; c < a.rows; ++c) {
                v[c] = ech(r, c);
                if (!v[c].is_zero()) nz = true;
            }
            if (nz) basis.push_back(std::move(v));
        }
        return QiMatrix::from_cols(a.rows, basis);
    }

    // Real points of a conjugation-stable complex column space.
    static QiMatrix real_points(const QiMatrix& c) {
        std::vector<std::vector<GaussianRational>> gens;
        for (int j = 0; j < c.cols; ++j) {
            std::vector<GaussianRational> re(c.rows), im(c.rows);
            for (int i = 0; i < c.rows; ++i) {
                re[i] = GaussianRational(c(i, j).re);
                im[i] = GaussianRational(c(i, j).im);
            }
            gens.push_back(std::move(re));
            gens.push_back(std::move(im));
        }
        QiMatrix span = QiMatrix::from_cols(c.rows, gens);
        QiMatrix ech = span.transpose();
        ech.rref();
        std::vector<std::vector<GaussianRational>> basis;
        for (int r = 0; r < ech.rows; ++r) {
            std::vector<GaussianRational> v(c.rows);
            bool nz = false;
            for (int k = 0; k < c.rows; ++k) {
                v[k] = ech(r, k);
                if (!v[k].is_zero()) nz = true;
            }
            if (nz) basis.push_back(std::move(v));
        }
        return QiMatrix::from_cols(c.rows, basis);
    }
};

// ---- standard examples --------------------------------------------------

// The structure induced by a complex structure J (B = beta = 0).
inline GcStructure gc_from_complex(BasedSpace sp, const QiMatrix& J) {
    return GcStructure::from_blocks(std::move(sp), J, QiForm(J.rows), QiForm(J.rows));
}

// The structure induced by a symplectic form (blocks 0, -w^{-1}; w, 0).
inline GcStructure gc_from_symplectic(BasedSpace sp, const QiForm& omega) {
    int n = sp.dim;
    QiMatrix wmap = two_form_map(omega);
    auto winv = wmap.inverse();
    if (!winv) throw input_error("symplectic form is degenerate");
    QiMatrix big(2 * n, 2 * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            big(i, n + j) = -(*winv)(i, j);
            big(n + i, j) = wmap(i, j);
        }
    return GcStructure(std::move(sp), std::move(big));
}

} // namespace gcgw
