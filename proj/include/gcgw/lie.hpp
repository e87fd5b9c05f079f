#pragma once

// Finite-dimensional Lie algebras given by the differentials of the dual
// generators (de^k as a 2-form).  The induced invariant exterior derivative
// extends those differentials as an antiderivation; the Courant bracket on
// constant-coefficient sections of V + V* is computed with the Cartan
// formula, which is exact for invariant data.

#include <optional>
#include <string>
#include <vector>

#include "gcgw/linalg.hpp"
#include "gcgw/multivector.hpp"

namespace gcgw {

// A section X + xi of (V + V*) tensor C with constant coefficients.
struct GeneralizedVector {
    std::vector<GaussianRational> vec; // coordinates in e_1..e_n
    std::vector<GaussianRational> cov; // coordinates in e^1..e^n

    explicit GeneralizedVector(int n) : vec(n), cov(n) {}
    int dim() const { return static_cast<int>(vec.size()); }

    static GeneralizedVector basis_vector(int n, int i) {
        GeneralizedVector g(n);
        g.vec[i] = GaussianRational(1);
        return g;
    }
    static GeneralizedVector basis_covector(int n, int i) {
        GeneralizedVector g(n);
        g.cov[i] = GaussianRational(1);
        return g;
    }
    // Coordinates stacked as (vec; cov), the layout used by GC structure
    // matrices.
    static GeneralizedVector from_stacked(const std::vector<GaussianRational>& x) {
        int n = static_cast<int>(x.size()) / 2;
        GeneralizedVector g(n);
        for (int i = 0; i < n; ++i) {
            g.vec[i] = x[i];
            g.cov[i] = x[n + i];
        }
        return g;
    }
    std::vector<GaussianRational> stacked() const {
        std::vector<GaussianRational> x(2 * vec.size());
        for (size_t i = 0; i < vec.size(); ++i) {
            x[i] = vec[i];
            x[vec.size() + i] = cov[i];
        }
        return x;
    }

    bool is_zero() const {
        for (const auto& c : vec)
            if (!c.is_zero()) return false;
        for (const auto& c : cov)
            if (!c.is_zero()) return false;
        return true;
    }

    GeneralizedVector conj() const {
        GeneralizedVector g(dim());
        for (int i = 0; i < dim(); ++i) {
            g.vec[i] = vec[i].conj();
            g.cov[i] = cov[i].conj();
        }
        return g;
    }

    friend GeneralizedVector operator+(GeneralizedVector a, const GeneralizedVector& b) {
        for (int i = 0; i < a.dim(); ++i) {
            a.vec[i] += b.vec[i];
            a.cov[i] += b.cov[i];
        }
        return a;
    }
    friend GeneralizedVector operator-(GeneralizedVector a, const GeneralizedVector& b) {
        for (int i = 0; i < a.dim(); ++i) {
            a.vec[i] -= b.vec[i];
            a.cov[i] -= b.cov[i];
        }
        return a;
    }
    friend GeneralizedVector operator*(const GaussianRational& s, GeneralizedVector a) {
        for (int i = 0; i < a.dim(); ++i) {
            a.vec[i] = s * a.vec[i];
            a.cov[i] = s * a.cov[i];
        }
        return a;
    }
};

// <X+xi, Y+eta> = (xi(Y) + eta(X)) / 2, the split-signature pairing.
inline GaussianRational pairing(const GeneralizedVector& u, const GeneralizedVector& v) {
    if (u.dim() != v.dim()) throw input_error("pairing: dimension mismatch");
    GaussianRational s;
    for (int i = 0; i < u.dim(); ++i) {
        s += u.cov[i] * v.vec[i];
        s += v.cov[i] * u.vec[i];
    }
    return GaussianRational(Rational(1, 2)) * s;
}

struct LieValidation {
    bool antisymmetry_ok = true; // structural: the differentials are stored as 2-forms
    bool d_squared_zero = true;
    std::string first_failure;       // generator where d^2 != 0, with the value
    std::optional<int> nilpotency_class; // set when nilpotency was requested and holds
    bool nilpotent_checked = false;
    bool nilpotent = false;

    bool ok() const { return d_squared_zero; }
};

class LieAlgebra {
public:
    BasedSpace space;
    std::vector<QiForm> d_dual; // d of e^k, a degree-2 form (or zero)

    LieAlgebra() = default;
    explicit LieAlgebra(BasedSpace sp) : space(std::move(sp)) {
        d_dual.assign(space.dim, QiForm(space.dim));
    }

    static LieAlgebra abelian(int n) { return LieAlgebra(BasedSpace(n)); }

    void set_d(int k, QiForm w) {
        if (w.grade() > 0 && w.grade() != 2) throw input_error("d of a generator must be a 2-form");
        for (const auto& [m, c] : w.terms)
            if (c.im != 0) throw input_error("structure constants must be real");
        d_dual[k] = std::move(w);
    }

    // Structure constants: [e_i, e_j] = sum_k c^k_ij e_k, recovered from
    // de^k = -sum_{i<j} c^k_ij e^i ^ e^j.
    GaussianRational c(int k, int i, int j) const {
        if (i == j) return GaussianRational(0);
        Mask m = (Mask(1) << i) | (Mask(1) << j);
        GaussianRational v = -d_dual[k].coeff(m);
        return i < j ? v : -v;
    }

    static LieAlgebra from_structure_constants(
        int n, const std::vector<std::tuple<int, int, int, GaussianRational>>& cs) {
        LieAlgebra L{BasedSpace(n)};
        std::vector<QiForm> d(n, QiForm(n));
        for (const auto& [k, i, j, v] : cs) {
            if (i == j) continue;
            int a = std::min(i, j), b = std::max(i, j);
            GaussianRational val = (i < j) ? v : -v;
            d[k].add_term((Mask(1) << a) | (Mask(1) << b), -val);
        }
        for (int k = 0; k < n; ++k) L.set_d(k, d[k]);
        return L;
    }

    // Lie bracket of constant vector fields.
    std::vector<GaussianRational> bracket(const std::vector<GaussianRational>& x,
                                          const std::vector<GaussianRational>& y) const {
        int n = space.dim;
        std::vector<GaussianRational> r(n);
        for (int i = 0; i < n; ++i) {
            if (x[i].is_zero()) continue;
            for (int j = 0; j < n; ++j) {
                if (y[j].is_zero()) continue;
                for (int k = 0; k < n; ++k) {
                    GaussianRational ck = c(k, i, j);
                    if (!ck.is_zero()) r[k] += ck * x[i] * y[j];
                }
            }
        }
        return r;
    }

    // Invariant exterior derivative, extended as an antiderivation.
    QiForm d(const QiForm& w) const {
        QiForm r(space.dim);
        for (const auto& [m, coeff] : w.terms) {
            int pos = 0;
            for (Mask mm = m; mm; mm &= mm - 1, ++pos) {
                int t = __builtin_ctz(mm);
                if (d_dual[t].is_zero()) continue;
                QiForm rest = QiForm::monomial(space.dim, m & ~(Mask(1) << t), coeff);
                QiForm term = wedge(d_dual[t], rest);
                r = (pos % 2 == 0) ? r + term : r - term;
            }
        }
        return r;
    }

    LieValidation validate(bool check_nilpotent = false) const {
        LieValidation v;
        for (int k = 0; k < space.dim; ++k) {
            QiForm dd = d(d_dual[k]);
            if (!dd.is_zero()) {
                v.d_squared_zero = false;
                v.first_failure = "d^2(" + space.labels[k] + ") = " + form_str(dd, space);
                break;
            }
        }
        if (check_nilpotent && v.d_squared_zero) {
            v.nilpotent_checked = true;
            auto cls = nilpotency_class();
            v.nilpotent = cls.has_value();
            v.nilpotency_class = cls;
        }
        return v;
    }

    // Class of the lower central series g = g_1 >= [g,g_1] >= ..., or
    // nullopt when the series stalls before reaching zero.
    std::optional<int> nilpotency_class() const {
        int n = space.dim;
        QiMatrix current = QiMatrix::identity(n); // columns span g_1 = g
        for (int cls = 1; cls <= n + 1; ++cls) {
            std::vector<std::vector<GaussianRational>> gens;
            for (int i = 0; i < n; ++i) {
                std::vector<GaussianRational> ei(n);
                ei[i] = GaussianRational(1);
                for (int j = 0; j < current.cols; ++j) {
                    auto b = bracket(ei, current.col(j));
                    bool nz = false;
                    for (auto& x : b)
                        if (!x.is_zero()) nz = true;
                    if (nz) gens.push_back(std::move(b));
                }
            }
            QiMatrix next = QiMatrix::from_cols(n, gens);
            int rk = next.rank();
            if (rk == 0) return cls;
            if (rk >= current.rank()) return std::nullopt; // stalled: not nilpotent
            // row-reduce the transpose to extract a basis of the new term
            QiMatrix ech = next.transpose();
            ech.rref();
            std::vector<std::vector<GaussianRational>> basis;
            for (int r2 = 0; r2 < ech.rows; ++r2) {
                std::vector<GaussianRational> row(ech.cols);
                bool nz = false;
                for (int c2 = 0; c2 < ech.cols; ++c2) {
                    row[c2] = ech(r2, c2);
                    if (!row[c2].is_zero()) nz = true;
                }
                if (nz) basis.push_back(std::move(row));
            }
            current = QiMatrix::from_cols(n, basis);
        }
        return std::nullopt;
    }

    // Courant bracket of invariant sections:
    //   [X+xi, Y+eta] = [X,Y] + i_X d(eta) - i_Y d(xi)
    // (the Lie-derivative and exact-correction terms collapse because
    // contractions of constant data are constants).
    GeneralizedVector courant(const GeneralizedVector& u, const GeneralizedVector& v) const {
        int n = space.dim;
        GeneralizedVector r(n);
        r.vec = bracket(u.vec, v.vec);
        QiForm deta(n), dxi(n);
        for (int k = 0; k < n; ++k) {
            if (!v.cov[k].is_zero()) deta = deta + v.cov[k] * d_dual[k];
            if (!u.cov[k].is_zero()) dxi = dxi + u.cov[k] * d_dual[k];
        }
        QiForm one_form = interior(u.vec, deta) - interior(v.vec, dxi);
        for (int k = 0; k < n; ++k) r.cov[k] = one_form.coeff(Mask(1) << k);
        return r;
    }
};

} // namespace gcgw
