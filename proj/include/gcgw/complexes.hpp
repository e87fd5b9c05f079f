#pragma once

// The transverse bigraded complex of an integrable structure at the
// invariant level: the abstract exterior algebra on the transverse frame
// theta_1..theta_k and its conjugates, the restriction of the invariant
// derivative with its bidegree components, the Hodge star of the declared
// unitary frame, adjoints, Laplacians, Lefschetz operators and the duality
// pairings.  Everything is a matrix over Q(i) on the 4^k monomial basis.

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "gcgw/gcs.hpp"
#include "gcgw/lie.hpp"

namespace gcgw {

class TransverseComplex {
public:
    int k = 0;                          // transverse complex dimension (= type)
    BasedSpace ambient_space;
    std::vector<QiForm> thetas;         // ambient representatives, unitary frame
    BasedSpace frame;                   // abstract labels t1..tk, tb1..tbk
    std::vector<QiForm> d_gen;          // d of each abstract generator (dim 2k forms)

    int dim() const { return 1 << (2 * k); } // 4^k monomials
    int p_of(Mask m) const { return mask_grade(m & ((Mask(1) << k) - 1)); }
    int q_of(Mask m) const { return mask_grade(m >> k); }
    int deg_of(Mask m) const { return mask_grade(m); }

    // operator matrices on the monomial basis
    QiMatrix D, dL, dLbar;
    QiMatrix star, star_inv;
    QiMatrix gram;                      // G_ab = h(mono_a, mono_b)
    QiMatrix Dstar, dLstar, dLbarstar;  // -star (conjugate flavor) star
    QiMatrix lapD, lapdL, lapdLbar;
    QiMatrix Lop, Lambda;               // Lefschetz and dual Lefschetz
    bool stokes_ok = false;             // top(D alpha) = 0 on degree 2k-1

    // ---- construction ----------------------------------------------------

    static TransverseComplex from_structure(const GcStructure& j, const LieAlgebra& alg) {
        AxiomReport ax = j.check_axioms(&alg);
        if (!ax.square_ok || !ax.orthogonal_ok)
            throw contract_error("transverse split: structure fails axioms (a)/(b)");
        if (ax.integrable.has_value() && !*ax.integrable)
            throw contract_error("transverse split: structure is not integrable: " + ax.witness);
        EigenData ed = j.eigenbundle();
        int m = j.m();
        // G* = L cap (V* tensor C): members of L with zero vector part
        QiMatrix top(m, ed.L.cols);
        for (int i = 0; i < m; ++i)
            for (int c = 0; c < ed.L.cols; ++c) top(i, c) = ed.L(i, c);
        QiMatrix combos = top.kernel();
        std::vector<std::vector<GaussianRational>> covs;
        for (int c = 0; c < combos.cols; ++c) {
            std::vector<GaussianRational> v(m);
            for (int i = 0; i < m; ++i)
                for (int t = 0; t < ed.L.cols; ++t) v[i] += ed.L(m + i, t) * combos(t, c);
            covs.push_back(std::move(v));
        }
        QiMatrix covm = QiMatrix::from_cols(m, covs);
        QiMatrix ech = covm.transpose();
        ech.rref();
        std::vector<QiForm> th;
        for (int r = 0; r < ech.rows; ++r) {
            QiForm f(m);
            for (int c = 0; c < m; ++c) f.add_term(Mask(1) << c, ech(r, c));
            if (!f.is_zero()) th.push_back(f);
        }
        if (static_cast<int>(th.size()) != ed.type)
            throw contract_error("transverse split: rank of L cap V* differs from the type");
        return from_thetas(alg, th);
    }

    static TransverseComplex from_thetas(const LieAlgebra& alg, std::vector<QiForm> th,
                                         const std::optional<QiMatrix>& gram_in = std::nullopt) {
        TransverseComplex tc;
        tc.ambient_space = alg.space;
        tc.thetas = std::move(th);
        tc.k = static_cast<int>(tc.thetas.size());
        if (2 * tc.k > 31) throw input_error("transverse rank too large");
        if (gram_in) tc.orthonormalize(*gram_in);
        tc.check_frame_independent();

        std::vector<std::string> labels;
        for (int j = 1; j <= tc.k; ++j) labels.push_back("t" + std::to_string(j));
        for (int j = 1; j <= tc.k; ++j) labels.push_back("tb" + std::to_string(j));
        tc.frame = BasedSpace(labels);

        tc.expand_differentials(alg);
        tc.assemble();
        return tc;
    }

    // ---- element helpers ---------------------------------------------------

    QiForm monomial_ambient(Mask m) const {
        QiForm f = QiForm::scalar(ambient_space.dim, GaussianRational(1));
        for (int b = 0; b < 2 * k; ++b)
            if (m & (Mask(1) << b)) f = wedge(f, b < k ? thetas[b] : conj(thetas[b - k]));
        return f;
    }

    std::vector<GaussianRational> to_coords(const QiForm& abstract_form) const {
        std::vector<GaussianRational> v(dim());
        for (const auto& [m, c] : abstract_form.terms) v[static_cast<int>(m)] = c;
        return v;
    }
    QiForm from_coords(const std::vector<GaussianRational>& v) const {
        QiForm f(2 * k);
        for (int i = 0; i < dim(); ++i) f.add_term(static_cast<Mask>(i), v[i]);
        return f;
    }

    QiForm conj_abstract(const QiForm& x) const {
        QiForm r(2 * k);
        for (const auto& [m, c] : x.terms) {
            Mask lowbits = m & ((Mask(1) << k) - 1);
            Mask hibits = m >> k;
            Mask swapped = hibits | (lowbits << k);
            int p = mask_grade(lowbits), q = mask_grade(hibits);
            GaussianRational coeff = c.conj();
            if ((p * q) % 2 == 1) coeff = -coeff;
            r.add_term(swapped, coeff);
        }
        return r;
    }

    // project a matrix column-wise onto the component with the given
    // bidegree shift (dp, dq)
    QiMatrix component(const QiMatrix& op, int dp, int dq) const {
        QiMatrix r(dim(), dim());
        for (int c = 0; c < dim(); ++c) {
            int p = p_of(static_cast<Mask>(c)), q = q_of(static_cast<Mask>(c));
            for (int rr = 0; rr < dim(); ++rr) {
                if (op(rr, c).is_zero()) continue;
                if (p_of(static_cast<Mask>(rr)) == p + dp && q_of(static_cast<Mask>(rr)) == q + dq)
                    r(rr, c) = op(rr, c);
            }
        }
        return r;
    }

    // coefficient of the top monomial, the invariant stand-in for the
    // integral (leafwise volume normalized to 1)
    GaussianRational top_coefficient(const std::vector<GaussianRational>& coords) const {
        GaussianRational s;
        for (int j = 0; j < dim(); ++j)
            if (!top_row_[j].is_zero() && !coords[j].is_zero()) s += top_row_[j] * coords[j];
        return s;
    }

    GaussianRational inner(const std::vector<GaussianRational>& x,
                           const std::vector<GaussianRational>& y) const {
        GaussianRational s;
        for (int a = 0; a < dim(); ++a)
            for (int b = 0; b < dim(); ++b)
                if (!gram(a, b).is_zero()) s += x[a] * y[b].conj() * gram(a, b);
        return s;
    }

    // ---- reports -----------------------------------------------------------

    std::vector<int> cohomology_dims_D() const {
        std::vector<int> dims;
        for (int r = 0; r <= 2 * k; ++r) {
            auto in = degree_block(D, r - 1), out = degree_block(D, r);
            dims.push_back(static_cast<int>(out.second.cols) - out.first - in.first);
        }
        return dims;
    }

    std::vector<std::vector<int>> cohomology_dims_dL() const {
        std::vector<std::vector<int>> h(k + 1, std::vector<int>(k + 1, 0));
        for (int p = 0; p <= k; ++p)
            for (int q = 0; q <= k; ++q) {
                auto in = bidegree_block(dL, p, q - 1);
                auto out = bidegree_block(dL, p, q);
                h[p][q] = out.second.cols - out.first - in.first;
            }
        return h;
    }

    int harmonic_dim_D(int r) const { return kernel_dim_on_degree(lapD, r); }
    int harmonic_dim_dL(int p, int q) const { return kernel_dim_on_bidegree(lapdL, p, q); }

    // basis (as full coordinate vectors) of ker of a degree-preserving
    // operator restricted to a (bi)degree slice
    std::vector<std::vector<GaussianRational>> harmonic_basis_D(int r) const {
        return kernel_on_slice(lapD, [&](Mask m) { return deg_of(m) == r; });
    }
    std::vector<std::vector<GaussianRational>> harmonic_basis_dL(int p, int q) const {
        return kernel_on_slice(lapdL, [&](Mask m) { return p_of(m) == p && q_of(m) == q; });
    }

    bool kahler() const {
        std::vector<GaussianRational> w = fundamental_form();
        std::vector<GaussianRational> dw(dim());
        for (int i = 0; i < dim(); ++i)
            for (int j = 0; j < dim(); ++j)
                if (!D(i, j).is_zero()) dw[i] += D(i, j) * w[j];
        for (auto& c : dw)
            if (!c.is_zero()) return false;
        return true;
    }

    std::vector<GaussianRational> fundamental_form() const {
        // sum_j f_{2j-1} ^ f_{2j} = sum_j (i/2) theta_j ^ conj(theta_j)
        QiForm w(2 * k);
        for (int j = 0; j < k; ++j) {
            Mask m = (Mask(1) << j) | (Mask(1) << (k + j));
            w.add_term(m, GaussianRational(Rational(0), Rational(1, 2)));
        }
        return to_coords(w);
    }

    // ---- internals ---------------------------------------------------------

    void orthonormalize(const QiMatrix& h) {
        if (h.rows != k || h.cols != k) throw input_error("transverse metric must be k x k");
        if (conj_transpose(h) != h) throw input_error("transverse metric must be hermitian");
        // Gram-Schmidt in theta-coordinate space; u_j tracked as combos
        std::vector<std::vector<GaussianRational>> u; // combos over original thetas
        auto hdot = [&](const std::vector<GaussianRational>& x, const std::vector<GaussianRational>& y) {
            GaussianRational s;
            for (int a = 0; a < k; ++a)
                for (int b = 0; b < k; ++b) s += x[a] * y[b].conj() * h(a, b);
            return s;
        };
        std::vector<QiForm> out;
        for (int j = 0; j < k; ++j) {
            std::vector<GaussianRational> v(k);
            v[j] = GaussianRational(1);
            for (const auto& prev : u) {
                GaussianRational num = hdot(v, prev), den = hdot(prev, prev);
                GaussianRational coef = num / den;
                for (int a = 0; a < k; ++a) v[a] -= coef * prev[a];
            }
            GaussianRational n2 = hdot(v, v);
            if (n2.im != 0 || n2.re <= 0)
                throw input_error("transverse metric is not positive definite");
            auto s = rational_sqrt(n2.re);
            if (!s)
                throw input_error("transverse metric cannot be orthonormalized over the rationals: "
                                  "pivot " + rational_str(n2.re) + " is not a perfect square");
            u.push_back(v);
            QiForm f(ambient_space.dim);
            for (int a = 0; a < k; ++a) f = f + (v[a] / GaussianRational(*s)) * thetas[a];
            out.push_back(f);
        }
        thetas = std::move(out);
    }

    void check_frame_independent() const {
        int m = ambient_space.dim;
        std::vector<std::vector<GaussianRational>> cols;
        for (const auto& t : thetas) {
            if (t.grade() > 1) throw input_error("transverse frame entries must be 1-forms");
            std::vector<GaussianRational> v(m), w(m);
            for (int i = 0; i < m; ++i) {
                v[i] = t.coeff(Mask(1) << i);
                w[i] = v[i].conj();
            }
            cols.push_back(v);
            cols.push_back(w);
        }
        if (QiMatrix::from_cols(m, cols).rank() != 2 * k)
            throw input_error("transverse frame and its conjugates are not independent");
    }

    void expand_differentials(const LieAlgebra& alg) {
        int m = ambient_space.dim;
        // ambient representatives of the abstract grade-2 monomials
        std::vector<Mask> two_monos;
        for (Mask msk = 0; msk < static_cast<Mask>(dim()); ++msk)
            if (deg_of(msk) == 2) two_monos.push_back(msk);
        QiMatrix table(1 << m, static_cast<int>(two_monos.size()));
        for (size_t c = 0; c < two_monos.size(); ++c) {
            QiForm amb = monomial_ambient(two_monos[c]);
            for (const auto& [mask, coeff] : amb.terms) table(static_cast<int>(mask), static_cast<int>(c)) = coeff;
        }
        d_gen.assign(2 * k, QiForm(2 * k));
        for (int g = 0; g < 2 * k; ++g) {
            QiForm amb = g < k ? thetas[g] : conj(thetas[g - k]);
            QiForm da = alg.d(amb);
            std::vector<GaussianRational> rhs(1 << m);
            for (const auto& [mask, coeff] : da.terms) rhs[static_cast<int>(mask)] = coeff;
            auto sol = table.solve(rhs);
            if (!sol)
                throw contract_error(
                    "transverse complex is not closed: d of a frame generator leaves the "
                    "transverse subalgebra (generator " + std::to_string(g + 1) + ")");
            QiForm abstract2(2 * k);
            for (size_t c = 0; c < two_monos.size(); ++c) abstract2.add_term(two_monos[c], (*sol)[c]);
            // integrability at the transverse level: no (0,2) part for a
            // (1,0) generator, no (2,0) part for a (0,1) generator
            for (const auto& [mask, coeff] : abstract2.terms) {
                int p = p_of(mask), q = q_of(mask);
                if (g < k && p == 0 && q == 2)
                    throw contract_error("transverse complex: d theta has a (0,2) component");
                if (g >= k && p == 2 && q == 0)
                    throw contract_error("transverse complex: d conj(theta) has a (2,0) component");
            }
            d_gen[g] = abstract2;
        }
    }

    QiForm d_abstract(const QiForm& x) const {
        QiForm r(2 * k);
        for (const auto& [m, coeff] : x.terms) {
            int pos = 0;
            for (Mask mm = m; mm; mm &= mm - 1, ++pos) {
                int t = __builtin_ctz(mm);
                if (d_gen[t].is_zero()) continue;
                QiForm rest = QiForm::monomial(2 * k, m & ~(Mask(1) << t), coeff);
                QiForm term = wedge(d_gen[t], rest);
                r = (pos % 2 == 0) ? r + term : r - term;
            }
        }
        return r;
    }

    // theta-monomial coordinates -> f-monomial coordinates and back
    std::vector<GaussianRational> theta_to_f(const std::vector<GaussianRational>& v) const {
        std::vector<GaussianRational> r(dim());
        for (int i = 0; i < dim(); ++i)
            for (int j = 0; j < dim(); ++j)
                if (!t2f_(i, j).is_zero()) r[i] += t2f_(i, j) * v[j];
        return r;
    }

    void assemble() {
        int n = dim();
        // change of basis: f-monomial -> theta-monomial coordinates
        f2t_ = QiMatrix(n, n);
        for (Mask m = 0; m < static_cast<Mask>(n); ++m) {
            QiForm prod = QiForm::scalar(2 * k, GaussianRational(1));
            for (int b = 0; b < 2 * k; ++b) {
                if (!(m & (Mask(1) << b))) continue;
                // f_{2j-1} = (theta_j + conj)/2 ; f_{2j} = (theta_j - conj)/(2i)
                int j = b / 2;
                QiForm f(2 * k);
                GaussianRational half(Rational(1, 2));
                GaussianRational half_over_i = GaussianRational(Rational(0), Rational(-1, 2)); // 1/(2i)
                if (b % 2 == 0) {
                    f.add_term(Mask(1) << j, half);
                    f.add_term(Mask(1) << (k + j), half);
                } else {
                    f.add_term(Mask(1) << j, half_over_i);
                    f.add_term(Mask(1) << (k + j), -half_over_i);
                }
                prod = wedge(prod, f);
            }
            for (const auto& [mask, c] : prod.terms) f2t_(static_cast<int>(mask), static_cast<int>(m)) = c;
        }
        auto inv = f2t_.inverse();
        if (!inv) throw contract_error("transverse frame change of basis is singular");
        t2f_ = *inv;
        top_row_.assign(n, GaussianRational(0));
        for (int j = 0; j < n; ++j) top_row_[j] = t2f_(n - 1, j);

        // star on f-monomials: signed complement
        QiMatrix star_f(n, n);
        Mask full = static_cast<Mask>(n - 1);
        for (Mask m = 0; m < static_cast<Mask>(n); ++m) {
            Mask comp = full & ~m;
            star_f(static_cast<int>(comp), static_cast<int>(m)) =
                GaussianRational(merge_sign(m, comp));
        }
        star = f2t_ * star_f * t2f_;
        auto sinv = star.inverse();
        if (!sinv) throw contract_error("hodge star is singular");
        star_inv = *sinv;

        // differential and its bidegree components
        D = QiMatrix(n, n);
        for (int c = 0; c < n; ++c) {
            QiForm img = d_abstract(QiForm::monomial(2 * k, static_cast<Mask>(c), GaussianRational(1)));
            for (const auto& [mask, coeff] : img.terms) D(static_cast<int>(mask), c) = coeff;
        }
        dL = component(D, 0, 1);
        dLbar = component(D, 1, 0);
        if (D != dL + dLbar)
            throw contract_error("invariant derivative leaves the (p+1,q)+(p,q+1) window");
        if (!(D * D).is_zero() || !(dL * dL).is_zero() || !(dLbar * dLbar).is_zero())
            throw contract_error("differential identities failed on assembly");
        if (!(dL * dLbar + dLbar * dL).is_zero())
            throw contract_error("bidegree components fail to anticommute");

        // gram matrix of h(a,b) = top(a ^ star(conj b)); star columns are
        // read off directly, the wedge against a single monomial is sparse
        gram = QiMatrix(n, n);
        std::vector<QiForm> star_conj(n, QiForm(2 * k));
        for (int b = 0; b < n; ++b) {
            QiForm cb = conj_abstract(QiForm::monomial(2 * k, static_cast<Mask>(b), GaussianRational(1)));
            QiForm sb(2 * k);
            for (const auto& [m, c] : cb.terms)
                for (int r = 0; r < n; ++r)
                    if (!star(r, static_cast<int>(m)).is_zero())
                        sb.add_term(static_cast<Mask>(r), c * star(r, static_cast<int>(m)));
            star_conj[b] = std::move(sb);
        }
        for (int a = 0; a < n; ++a) {
            QiForm fa = QiForm::monomial(2 * k, static_cast<Mask>(a), GaussianRational(1));
            for (int b = 0; b < n; ++b)
                gram(a, b) = top_coefficient(to_coords(wedge(fa, star_conj[b])));
        }

        // adjoints via the star formula (the (-1)^{2k(r-1)-1} prefactor is
        // identically -1, kept as a single global sign)
        Dstar = -(star * D * star);
        dLstar = -(star * dLbar * star);
        dLbarstar = -(star * dL * star);

        lapD = Dstar * D + D * Dstar;
        lapdL = dLstar * dL + dL * dLstar;
        lapdLbar = dLbarstar * dLbar + dLbar * dLbarstar;

        // Lefschetz pair
        Lop = QiMatrix(n, n);
        QiForm w = from_coords(fundamental_form());
        for (int c = 0; c < n; ++c) {
            QiForm img = wedge(QiForm::monomial(2 * k, static_cast<Mask>(c), GaussianRational(1)), w);
            for (const auto& [mask, coeff] : img.terms) Lop(static_cast<int>(mask), c) = coeff;
        }
        Lambda = star_inv * Lop * star;

        // Stokes stand-in: the top functional kills exact forms
        stokes_ok = true;
        for (int c = 0; c < n && stokes_ok; ++c) {
            if (deg_of(static_cast<Mask>(c)) != 2 * k - 1) continue;
            GaussianRational s;
            for (int r = 0; r < n; ++r)
                if (!D(r, c).is_zero()) s += top_row_[r] * D(r, c);
            if (!s.is_zero()) stokes_ok = false;
        }
    }

    static std::vector<GaussianRational> mat_apply(const QiMatrix& a, const std::vector<GaussianRational>& x) {
        std::vector<GaussianRational> y(a.rows);
        for (int i = 0; i < a.rows; ++i)
            for (int j = 0; j < a.cols; ++j)
                if (!a(i, j).is_zero()) y[i] += a(i, j) * x[j];
        return y;
    }

    // restriction of an operator to the given source degree: returns
    // (rank, submatrix of columns)
    std::pair<int, QiMatrix> degree_block(const QiMatrix& op, int r) const {
        if (r < 0 || r > 2 * k) return {0, QiMatrix(dim(), 0)};
        std::vector<std::vector<GaussianRational>> cols;
        for (int c = 0; c < dim(); ++c)
            if (deg_of(static_cast<Mask>(c)) == r) cols.push_back(op.col(c));
        QiMatrix sub = QiMatrix::from_cols(dim(), cols);
        return {sub.rank(), sub};
    }
    std::pair<int, QiMatrix> bidegree_block(const QiMatrix& op, int p, int q) const {
        if (p < 0 || q < 0 || p > k || q > k) return {0, QiMatrix(dim(), 0)};
        std::vector<std::vector<GaussianRational>> cols;
        for (int c = 0; c < dim(); ++c)
            if (p_of(static_cast<Mask>(c)) == p && q_of(static_cast<Mask>(c)) == q)
                cols.push_back(op.col(c));
        QiMatrix sub = QiMatrix::from_cols(dim(), cols);
        return {sub.rank(), sub};
    }

    template <class Pred>
    std::vector<std::vector<GaussianRational>> kernel_on_slice(const QiMatrix& op, Pred pred) const {
        std::vector<int> idx;
        for (int c = 0; c < dim(); ++c)
            if (pred(static_cast<Mask>(c))) idx.push_back(c);
        QiMatrix sub(dim(), static_cast<int>(idx.size()));
        for (size_t j = 0; j < idx.size(); ++j)
            for (int i = 0; i < dim(); ++i) sub(i, static_cast<int>(j)) = op(i, idx[j]);
        QiMatrix ker = sub.kernel();
        std::vector<std::vector<GaussianRational>> out;
        for (int j = 0; j < ker.cols; ++j) {
            std::vector<GaussianRational> v(dim());
            for (size_t t = 0; t < idx.size(); ++t) v[idx[t]] = ker(static_cast<int>(t), j);
            out.push_back(std::move(v));
        }
        return out;
    }

    int kernel_dim_on_degree(const QiMatrix& op, int r) const {
        return static_cast<int>(kernel_on_slice(op, [&](Mask m) { return deg_of(m) == r; }).size());
    }
    int kernel_dim_on_bidegree(const QiMatrix& op, int p, int q) const {
        return static_cast<int>(
            kernel_on_slice(op, [&](Mask m) { return p_of(m) == p && q_of(m) == q; }).size());
    }

private:
    QiMatrix f2t_, t2f_;
    std::vector<GaussianRational> top_row_;
};

// ---- verification reports ------------------------------------------------

// adjointness of B to A under the gram form: h(A x, y) = h(x, B y)
inline bool is_adjoint_pair(const TransverseComplex& tc, const QiMatrix& a, const QiMatrix& b) {
    return a.transpose() * tc.gram == tc.gram * conj(b);
}

struct HodgeReport {
    bool star_square_ok = false;     // star star = (-1)^{r(2k-r)}
    bool star_bidegree_ok = false;   // star maps A^{p,q} to A^{k-q,k-p}
    bool gram_hermitian = false;
    bool gram_positive = false;      // diagonal in the monomial basis, positive
    bool adjoint_D = false, adjoint_dL = false, adjoint_dLbar = false;
    bool laplacians_self_adjoint = false;
    bool harmonic_equals_cohomology = false;
    bool stokes_ok = false;
    bool passed() const {
        return star_square_ok && star_bidegree_ok && gram_hermitian && gram_positive && adjoint_D &&
               adjoint_dL && adjoint_dLbar && laplacians_self_adjoint && harmonic_equals_cohomology &&
               stokes_ok;
    }
};

inline HodgeReport verify_hodge(const TransverseComplex& tc) {
    HodgeReport rep;
    int n = tc.dim(), k = tc.k;

    QiMatrix ss = tc.star * tc.star;
    QiMatrix expect(n, n);
    for (int c = 0; c < n; ++c) {
        int r = tc.deg_of(static_cast<Mask>(c));
        int e = (r * (2 * k - r)) % 2;
        expect(c, c) = GaussianRational(e == 0 ? 1 : -1);
    }
    rep.star_square_ok = (ss == expect);

    rep.star_bidegree_ok = true;
    for (int c = 0; c < n && rep.star_bidegree_ok; ++c) {
        int p = tc.p_of(static_cast<Mask>(c)), q = tc.q_of(static_cast<Mask>(c));
        for (int r = 0; r < n; ++r) {
            if (tc.star(r, c).is_zero()) continue;
            if (tc.p_of(static_cast<Mask>(r)) != k - q || tc.q_of(static_cast<Mask>(r)) != k - p) {
                rep.star_bidegree_ok = false;
                break;
            }
        }
    }

    rep.gram_hermitian = (conj_transpose(tc.gram) == tc.gram);
    rep.gram_positive = true;
    for (int a = 0; a < n && rep.gram_positive; ++a) {
        for (int b = 0; b < n; ++b) {
            if (a == b) {
                if (tc.gram(a, a).im != 0 || tc.gram(a, a).re <= 0) rep.gram_positive = false;
            } else if (!tc.gram(a, b).is_zero()) {
                rep.gram_positive = false;
            }
            if (!rep.gram_positive) break;
        }
    }

    rep.adjoint_D = is_adjoint_pair(tc, tc.D, tc.Dstar);
    rep.adjoint_dL = is_adjoint_pair(tc, tc.dL, tc.dLstar);
    rep.adjoint_dLbar = is_adjoint_pair(tc, tc.dLbar, tc.dLbarstar);
    rep.laplacians_self_adjoint = is_adjoint_pair(tc, tc.lapD, tc.lapD) &&
                                  is_adjoint_pair(tc, tc.lapdL, tc.lapdL) &&
                                  is_adjoint_pair(tc, tc.lapdLbar, tc.lapdLbar);

    rep.harmonic_equals_cohomology = true;
    std::vector<int> bd = tc.cohomology_dims_D();
    for (int r = 0; r <= 2 * k; ++r)
        if (tc.harmonic_dim_D(r) != bd[r]) rep.harmonic_equals_cohomology = false;
    auto h = tc.cohomology_dims_dL();
    for (int p = 0; p <= k; ++p)
        for (int q = 0; q <= k; ++q)
            if (tc.harmonic_dim_dL(p, q) != h[p][q]) rep.harmonic_equals_cohomology = false;

    rep.stokes_ok = tc.stokes_ok;
    return rep;
}

struct LefschetzReport {
    bool bracket_identity = false;    // [Lambda, L] = (k - (p+q)) id
    bool kahler = false;              // D(omega) = 0
    // the remaining entries are only meaningful when kahler holds
    bool commutators_vanish = false;  // [dL, L] = [dLbar, L] = 0, [dL*, Lambda] = [dLbar*, Lambda] = 0
    bool dual_brackets = false;       // [Lambda, dL] = -i dLbar*, [Lambda, dLbar] = i dL*
    bool laplacian_doubling = false;  // lap_D = 2 lap_dL
    bool hodge_decomposition = false; // dim H^r_D = sum_{p+q=r} h^{p,q}
    std::string note;
};

inline LefschetzReport verify_lefschetz(const TransverseComplex& tc) {
    LefschetzReport rep;
    int n = tc.dim(), k = tc.k;

    QiMatrix brk = tc.Lambda * tc.Lop - tc.Lop * tc.Lambda;
    QiMatrix expect(n, n);
    for (int c = 0; c < n; ++c)
        expect(c, c) = GaussianRational(
            Rational(k - tc.p_of(static_cast<Mask>(c)) - tc.q_of(static_cast<Mask>(c))));
    rep.bracket_identity = (brk == expect);

    rep.kahler = tc.kahler();
    if (!rep.kahler) {
        rep.note = "transverse fundamental form is not closed; Kahler identities skipped";
        return rep;
    }

    auto comm = [](const QiMatrix& a, const QiMatrix& b) { return a * b - b * a; };
    rep.commutators_vanish = comm(tc.dL, tc.Lop).is_zero() && comm(tc.dLbar, tc.Lop).is_zero() &&
                             comm(tc.dLstar, tc.Lambda).is_zero() &&
                             comm(tc.dLbarstar, tc.Lambda).is_zero();
    GaussianRational i = GaussianRational::i();
    rep.dual_brackets = (comm(tc.Lambda, tc.dL) == -i * tc.dLbarstar) &&
                        (comm(tc.Lambda, tc.dLbar) == i * tc.dLstar);
    rep.laplacian_doubling = (tc.lapD == GaussianRational(2) * tc.lapdL);

    rep.hodge_decomposition = true;
    std::vector<int> bd = tc.cohomology_dims_D();
    auto h = tc.cohomology_dims_dL();
    for (int r = 0; r <= 2 * k; ++r) {
        int total = 0;
        for (int p = 0; p <= k; ++p) {
            int q = r - p;
            if (q >= 0 && q <= k) total += h[p][q];
        }
        if (total != bd[r]) rep.hodge_decomposition = false;
    }
    return rep;
}

struct DualityReport {
    bool dims_D_symmetric = false;      // dim H^r = dim H^{2k-r}
    bool dims_dL_symmetric = false;     // h^{p,q} = h^{k-p,k-q}
    bool pairing_D_nondegenerate = false;
    bool pairing_dL_nondegenerate = false;
    bool passed() const {
        return dims_D_symmetric && dims_dL_symmetric && pairing_D_nondegenerate &&
               pairing_dL_nondegenerate;
    }
};

inline DualityReport verify_duality(const TransverseComplex& tc) {
    DualityReport rep;
    int k = tc.k;
    std::vector<int> bd = tc.cohomology_dims_D();
    rep.dims_D_symmetric = true;
    for (int r = 0; r <= 2 * k; ++r)
        if (bd[r] != bd[2 * k - r]) rep.dims_D_symmetric = false;
    auto h = tc.cohomology_dims_dL();
    rep.dims_dL_symmetric = true;
    for (int p = 0; p <= k; ++p)
        for (int q = 0; q <= k; ++q)
            if (h[p][q] != h[k - p][k - q]) rep.dims_dL_symmetric = false;

    auto pairing_det_nonzero = [&](const std::vector<std::vector<GaussianRational>>& a,
                                   const std::vector<std::vector<GaussianRational>>& b) {
        if (a.size() != b.size()) return false;
        int r = static_cast<int>(a.size());
        if (r == 0) return true;
        QiMatrix p(r, r);
        for (int x = 0; x < r; ++x)
            for (int y = 0; y < r; ++y) {
                QiForm wx = tc.from_coords(a[x]), wy = tc.from_coords(b[y]);
                p(x, y) = tc.top_coefficient(tc.to_coords(wedge(wx, wy)));
            }
        return !p.det().is_zero();
    };

    rep.pairing_D_nondegenerate = true;
    for (int r = 0; r <= 2 * k; ++r)
        if (!pairing_det_nonzero(tc.harmonic_basis_D(r), tc.harmonic_basis_D(2 * k - r)))
            rep.pairing_D_nondegenerate = false;
    rep.pairing_dL_nondegenerate = true;
    for (int p = 0; p <= k; ++p)
        for (int q = 0; q <= k; ++q)
            if (!pairing_det_nonzero(tc.harmonic_basis_dL(p, q), tc.harmonic_basis_dL(k - p, k - q)))
                rep.pairing_dL_nondegenerate = false;
    return rep;
}

} // namespace gcgw
