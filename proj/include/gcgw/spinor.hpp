#pragma once

// Pure-spinor lines: the correspondence between mixed forms rho = e^{B+iw}^Omega
// and generalized complex structures (annihilator under the Clifford action),
// Calabi-Yau style closedness/nondegeneracy verification, and the leaf
// distribution cut out by ker(Omega ^ conj(Omega)).

#include <optional>
#include <string>
#include <vector>

#include "gcgw/gcs.hpp"

namespace gcgw {

struct PureSpinor {
    int dim = 0;
    QiForm b;                  // real 2-form
    QiForm omega;              // real 2-form
    std::vector<QiForm> thetas; // complex 1-forms, the decomposable part
    std::optional<QiForm> raw;  // set when given unfactored

    static PureSpinor factored(QiForm b, QiForm omega, std::vector<QiForm> thetas) {
        PureSpinor s;
        s.dim = b.dim;
        s.b = std::move(b);
        s.omega = std::move(omega);
        s.thetas = std::move(thetas);
        return s;
    }
    static PureSpinor unfactored(QiForm rho) {
        PureSpinor s;
        s.dim = rho.dim;
        s.b = QiForm(rho.dim);
        s.omega = QiForm(rho.dim);
        s.raw = std::move(rho);
        return s;
    }
    bool is_factored() const { return !raw.has_value(); }

    QiForm decomposable_part() const {
        QiForm om = QiForm::scalar(dim, GaussianRational(1));
        for (const auto& t : thetas) om = wedge(om, t);
        return om;
    }

    QiForm build() const {
        if (raw) return *raw;
        QiForm exponent = b + GaussianRational::i() * omega;
        if (exponent.is_zero()) return decomposable_part();
        return wedge(form_exp(exponent), decomposable_part());
    }
};

// 2^m x 2m matrix whose columns are the Clifford actions of the basis
// sections e_i, e^i on rho; its kernel is the annihilator of rho.
inline QiMatrix clifford_annihilator_system(const QiForm& rho) {
    int m = rho.dim;
    QiMatrix sys(1 << m, 2 * m);
    for (int a = 0; a < 2 * m; ++a) {
        GeneralizedVector v = a < m ? GeneralizedVector::basis_vector(m, a)
                                    : GeneralizedVector::basis_covector(m, a - m);
        QiForm act = clifford_act(v, rho);
        for (const auto& [mask, c] : act.terms) sys(static_cast<int>(mask), a) = c;
    }
    return sys;
}

struct SpinorStructure {
    GcStructure structure;
    QiMatrix annihilator; // 2m x m basis of the annihilator = +i eigenspace
};

// The structure whose +i eigenspace is the annihilator of rho.  Rejects
// impure spinors (annihilator not middle-dimensional) and spinors of
// nontrivial real index (annihilator meeting its conjugate).
inline SpinorStructure spinor_to_structure(const BasedSpace& sp, const QiForm& rho) {
    int m = sp.dim;
    QiMatrix sys = clifford_annihilator_system(rho);
    QiMatrix ann = sys.kernel();
    if (ann.cols != m)
        throw input_error("spinor is not pure: annihilator dimension " + std::to_string(ann.cols) +
                          ", expected " + std::to_string(m));
    QiMatrix both = QiMatrix::hstack(ann, conj(ann));
    if (both.rank() != 2 * m)
        throw input_error("spinor has nontrivial real index: L meets conj(L)");
    auto inv = both.inverse();
    if (!inv) throw contract_error("annihilator basis failed to invert");
    QiMatrix d(2 * m, 2 * m);
    for (int i = 0; i < m; ++i) {
        d(i, i) = GaussianRational::i();
        d(m + i, m + i) = -GaussianRational::i();
    }
    QiMatrix big = both * d * *inv;
    if (!is_real(big)) throw contract_error("reconstructed structure is not real");
    return {GcStructure(sp, big), ann};
}

// The annihilator line of the +i eigenspace inside the form algebra,
// normalized so its first nonzero coefficient (grade-major order) is 1.
inline QiForm structure_to_spinor(const GcStructure& j) {
    int m = j.m();
    EigenData ed = j.eigenbundle();
    int nforms = 1 << m;
    QiMatrix stacked(0, nforms);
    std::vector<QiMatrix> blocks;
    for (int col = 0; col < ed.L.cols; ++col) {
        GeneralizedVector v = GeneralizedVector::from_stacked(ed.L.col(col));
        QiMatrix action(nforms, nforms);
        for (int b = 0; b < nforms; ++b) {
            QiForm mono = QiForm::monomial(m, static_cast<Mask>(b), GaussianRational(1));
            QiForm img = clifford_act(v, mono);
            for (const auto& [mask, c] : img.terms) action(static_cast<int>(mask), b) = c;
        }
        blocks.push_back(std::move(action));
    }
    QiMatrix sys = blocks.empty() ? QiMatrix(0, nforms) : blocks[0];
    for (size_t i = 1; i < blocks.size(); ++i) sys = QiMatrix::vstack(sys, blocks[i]);
    QiMatrix line = sys.kernel();
    if (line.cols != 1)
        throw contract_error("canonical line is not one-dimensional: dim = " + std::to_string(line.cols));
    // normalize deterministically: first nonzero coefficient in (grade, mask) order
    std::vector<std::pair<int, Mask>> order;
    for (Mask msk = 0; msk < static_cast<Mask>(nforms); ++msk) order.push_back({mask_grade(msk), msk});
    std::sort(order.begin(), order.end());
    GaussianRational lead;
    for (auto& [g, msk] : order) {
        if (!line(static_cast<int>(msk), 0).is_zero()) {
            lead = line(static_cast<int>(msk), 0);
            break;
        }
    }
    QiForm rho(m);
    for (int b = 0; b < nforms; ++b) rho.add_term(static_cast<Mask>(b), line(b, 0) / lead);
    return rho;
}

// Exact factorization of a decomposable k-form into 1-form factors
// (candidates come from its degree-1 annihilator, taken in echelon order).
inline std::optional<std::vector<QiForm>> decompose(const QiForm& om, int expected_factors) {
    int m = om.dim;
    if (expected_factors == 0)
        return om.grade() == 0 && !om.is_zero() ? std::make_optional(std::vector<QiForm>{}) : std::nullopt;
    QiMatrix sys(1 << m, m);
    for (int t = 0; t < m; ++t) {
        QiForm gen = QiForm::generator(m, t);
        QiForm w = wedge(gen, om);
        for (const auto& [mask, c] : w.terms) sys(static_cast<int>(mask), t) = c;
    }
    QiMatrix ann = sys.kernel();
    if (ann.cols != expected_factors) return std::nullopt;
    std::vector<QiForm> factors;
    QiForm prod = QiForm::scalar(m, GaussianRational(1));
    for (int j = 0; j < ann.cols; ++j) {
        QiForm f(m);
        for (int t = 0; t < m; ++t) f.add_term(Mask(1) << t, ann(t, j));
        factors.push_back(f);
        prod = wedge(prod, f);
    }
    if (prod.is_zero()) return std::nullopt;
    // om must be a scalar multiple of the product of the factors
    Mask lead = prod.terms.begin()->first;
    if (om.coeff(lead).is_zero()) return std::nullopt;
    GaussianRational scale = om.coeff(lead) / prod.coeff(lead);
    if (!(scale * prod == om)) return std::nullopt;
    factors[0] = scale * factors[0];
    return factors;
}

struct CalabiYauReport {
    bool d_rho_zero = false;
    std::string d_rho_value;     // exact value when nonzero
    bool nondegenerate = false;
    std::string nondeg_value;    // exact top-form w^{n-k} ^ Omega ^ conj(Omega)
    bool decomposable = false;
    std::vector<bool> d_theta_zero;
    bool axioms_ab = false;      // structure from the spinor satisfies (a),(b)
    std::optional<bool> integrable;
    int type = -1;
    bool gcy = false;
    bool strong = false;
};

inline CalabiYauReport check_calabi_yau(const LieAlgebra& alg, const PureSpinor& spinor,
                                        bool strong_requested) {
    CalabiYauReport rep;
    const BasedSpace& sp = alg.space;
    int m = sp.dim;
    if (m % 2 != 0) throw input_error("Calabi-Yau check needs an even-dimensional algebra");
    int n = m / 2;

    QiForm rho = spinor.build();
    QiForm drho = alg.d(rho);
    rep.d_rho_zero = drho.is_zero();
    if (!rep.d_rho_zero) rep.d_rho_value = form_str(drho, sp);

    std::vector<QiForm> thetas = spinor.thetas;
    QiForm om_part(m);
    if (spinor.is_factored()) {
        rep.decomposable = true;
        om_part = spinor.decomposable_part();
    } else {
        // lowest-degree component of rho is the decomposable part
        int low = 31;
        for (const auto& [msk, c] : spinor.raw->terms) low = std::min(low, mask_grade(msk));
        om_part = spinor.raw->graded_part(low);
        auto factors = decompose(om_part, low);
        rep.decomposable = factors.has_value();
        if (factors) thetas = *factors;
    }
    int k = spinor.is_factored() ? static_cast<int>(spinor.thetas.size())
                                 : om_part.top_grade();

    for (const auto& th : thetas) rep.d_theta_zero.push_back(alg.d(th).is_zero());

    // nondegeneracy at the point: w^{n-k} ^ Omega ^ conj(Omega) != 0 for
    // factored input; equivalent annihilator test otherwise
    if (spinor.is_factored()) {
        QiForm pow = QiForm::scalar(m, GaussianRational(1));
        for (int t = 0; t < n - k; ++t) pow = wedge(pow, spinor.omega);
        QiForm top = wedge(pow, wedge(om_part, conj(om_part)));
        rep.nondegenerate = !top.is_zero() && top.grade() == m;
        rep.nondeg_value = form_str(top, sp);
    }

    try {
        SpinorStructure ss = spinor_to_structure(sp, rho);
        if (!spinor.is_factored()) rep.nondegenerate = true; // pure + trivial real index
        AxiomReport ax = ss.structure.check_axioms(&alg);
        rep.axioms_ab = ax.square_ok && ax.orthogonal_ok;
        rep.integrable = ax.integrable;
        rep.type = ss.structure.eigenbundle().type;
    } catch (const input_error&) {
        rep.nondegenerate = false;
        rep.axioms_ab = false;
    }

    bool thetas_closed = true;
    for (bool bz : rep.d_theta_zero) thetas_closed = thetas_closed && bz;
    rep.gcy = rep.d_rho_zero && rep.nondegenerate;
    rep.strong = strong_requested && rep.gcy && rep.decomposable && thetas_closed;
    return rep;
}

struct LeafReport {
    QiMatrix basis;     // real basis of the leaf directions
    int codim = 0;
    bool subalgebra = false;
};

// s = { X : i_X (Omega ^ conj(Omega)) = 0 }, with a closure check.
inline LeafReport leaf_distribution(const LieAlgebra& alg, const PureSpinor& spinor) {
    const BasedSpace& sp = alg.space;
    int m = sp.dim;
    QiForm om = spinor.is_factored() ? spinor.decomposable_part() : [&] {
        int low = 31;
        for (const auto& [msk, c] : spinor.raw->terms) low = std::min(low, mask_grade(msk));
        return spinor.raw->graded_part(low);
    }();
    QiForm vol = wedge(om, conj(om));
    QiMatrix sys(1 << m, m);
    for (int t = 0; t < m; ++t) {
        std::vector<GaussianRational> et(m);
        et[t] = GaussianRational(1);
        QiForm w = interior(et, vol);
        for (const auto& [mask, c] : w.terms) sys(static_cast<int>(mask), t) = c;
    }
    LeafReport rep;
    QiMatrix ker = sys.kernel();
    rep.basis = GcStructure::real_points(ker);
    rep.codim = m - rep.basis.cols;
    rep.subalgebra = true;
    for (int a = 0; a < rep.basis.cols && rep.subalgebra; ++a)
        for (int b = a + 1; b < rep.basis.cols; ++b) {
            auto br = alg.bracket(rep.basis.col(a), rep.basis.col(b));
            if (!rep.basis.col_space_contains(br)) {
                rep.subalgebra = false;
                break;
            }
        }
    return rep;
}

} // namespace gcgw
