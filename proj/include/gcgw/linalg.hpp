#pragma once

// Dense exact linear algebra over any field type that provides
// +,-,*,/,==, is_zero() and a default constructor equal to zero.
// Everything here is pure: reductions work on copies.

#include <algorithm>
#include <optional>
#include <vector>

#include "gcgw/rational.hpp"

namespace gcgw {

template <class F>
class Matrix {
public:
    int rows = 0, cols = 0;
    std::vector<F> a;

    Matrix() = default;
    Matrix(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c) {}

    static Matrix identity(int n) {
        Matrix m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = F(1);
        return m;
    }
    static Matrix zero(int r, int c) { return Matrix(r, c); }

    F& operator()(int r, int c) { return a[static_cast<size_t>(r) * cols + c]; }
    const F& operator()(int r, int c) const { return a[static_cast<size_t>(r) * cols + c]; }

    bool is_zero() const {
        for (const auto& x : a)
            if (!x.is_zero()) return false;
        return true;
    }

    friend bool operator==(const Matrix& x, const Matrix& y) {
        return x.rows == y.rows && x.cols == y.cols && x.a == y.a;
    }
    friend bool operator!=(const Matrix& x, const Matrix& y) { return !(x == y); }

    Matrix operator-() const {
        Matrix r = *this;
        for (auto& x : r.a) x = -x;
        return r;
    }
    friend Matrix operator+(const Matrix& x, const Matrix& y) {
        if (x.rows != y.rows || x.cols != y.cols) throw contract_error("matrix shape mismatch in +");
        Matrix r = x;
        for (size_t i = 0; i < r.a.size(); ++i) r.a[i] += y.a[i];
        return r;
    }
    friend Matrix operator-(const Matrix& x, const Matrix& y) {
        if (x.rows != y.rows || x.cols != y.cols) throw contract_error("matrix shape mismatch in -");
        Matrix r = x;
        for (size_t i = 0; i < r.a.size(); ++i) r.a[i] -= y.a[i];
        return r;
    }
    friend Matrix operator*(const Matrix& x, const Matrix& y) {
        if (x.cols != y.rows) throw contract_error("matrix shape mismatch in *");
        Matrix r(x.rows, y.cols);
        for (int i = 0; i < x.rows; ++i)
            for (int k = 0; k < x.cols; ++k) {
                if (x(i, k).is_zero()) continue;
                for (int j = 0; j < y.cols; ++j) {
                    if (y(k, j).is_zero()) continue;
                    r(i, j) += x(i, k) * y(k, j);
                }
            }
        return r;
    }
    friend Matrix operator*(const F& s, const Matrix& y) {
        Matrix r = y;
        for (auto& x : r.a) x = s * x;
        return r;
    }

    Matrix transpose() const {
        Matrix r(cols, rows);
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j) r(j, i) = (*this)(i, j);
        return r;
    }

    std::vector<F> col(int j) const {
        std::vector<F> v(rows);
        for (int i = 0; i < rows; ++i) v[i] = (*this)(i, j);
        return v;
    }
    void set_col(int j, const std::vector<F>& v) {
        for (int i = 0; i < rows; ++i) (*this)(i, j) = v[i];
    }

    static Matrix from_cols(int nrows, const std::vector<std::vector<F>>& cs) {
        Matrix m(nrows, static_cast<int>(cs.size()));
        for (size_t j = 0; j < cs.size(); ++j) m.set_col(static_cast<int>(j), cs[j]);
        return m;
    }

    static Matrix hstack(const Matrix& x, const Matrix& y) {
        if (x.rows != y.rows) throw contract_error("hstack row mismatch");
        Matrix r(x.rows, x.cols + y.cols);
        for (int i = 0; i < x.rows; ++i) {
            for (int j = 0; j < x.cols; ++j) r(i, j) = x(i, j);
            for (int j = 0; j < y.cols; ++j) r(i, x.cols + j) = y(i, j);
        }
        return r;
    }
    static Matrix vstack(const Matrix& x, const Matrix& y) {
        if (x.cols != y.cols) throw contract_error("vstack col mismatch");
        Matrix r(x.rows + y.rows, x.cols);
        for (int i = 0; i < x.rows; ++i)
            for (int j = 0; j < x.cols; ++j) r(i, j) = x(i, j);
        for (int i = 0; i < y.rows; ++i)
            for (int j = 0; j < x.cols; ++j) r(x.rows + i, j) = y(i, j);
        return r;
    }

    // Reduced row echelon form in place; returns pivot column indices.
    std::vector<int> rref() {
        std::vector<int> pivots;
        int r = 0;
        for (int c = 0; c < cols && r < rows; ++c) {
            int p = -1;
            for (int i = r; i < rows; ++i)
                if (!(*this)(i, c).is_zero()) {
                    p = i;
                    break;
                }
            if (p < 0) continue;
            if (p != r)
                for (int j = 0; j < cols; ++j) std::swap((*this)(p, j), (*this)(r, j));
            F inv = F(1) / (*this)(r, c);
            for (int j = c; j < cols; ++j) (*this)(r, j) = (*this)(r, j) * inv;
            for (int i = 0; i < rows; ++i) {
                if (i == r || (*this)(i, c).is_zero()) continue;
                F f = (*this)(i, c);
                for (int j = c; j < cols; ++j) (*this)(i, j) -= f * (*this)(r, j);
            }
            pivots.push_back(c);
            ++r;
        }
        return pivots;
    }

    int rank() const {
        Matrix m = *this;
        return static_cast<int>(m.rref().size());
    }

    // Basis of the right null space, one column per basis vector.
    Matrix kernel() const {
        Matrix m = *this;
        std::vector<int> piv = m.rref();
        std::vector<bool> is_piv(cols, false);
        for (int c : piv) is_piv[c] = true;
        std::vector<std::vector<F>> basis;
        for (int c = 0; c < cols; ++c) {
            if (is_piv[c]) continue;
            std::vector<F> v(cols);
            v[c] = F(1);
            for (size_t r2 = 0; r2 < piv.size(); ++r2) v[piv[r2]] = -m(static_cast<int>(r2), c);
            basis.push_back(std::move(v));
        }
        return from_cols(cols, basis);
    }

    // One solution of (*this) x = b, if any.
    std::optional<std::vector<F>> solve(const std::vector<F>& b) const {
        if (static_cast<int>(b.size()) != rows) throw contract_error("solve: rhs size mismatch");
        Matrix aug(rows, cols + 1);
        for (int i = 0; i < rows; ++i) {
            for (int j = 0; j < cols; ++j) aug(i, j) = (*this)(i, j);
            aug(i, cols) = b[i];
        }
        std::vector<int> piv = aug.rref();
        if (!piv.empty() && piv.back() == cols) return std::nullopt;
        std::vector<F> x(cols);
        for (size_t r2 = 0; r2 < piv.size(); ++r2) x[piv[r2]] = aug(static_cast<int>(r2), cols);
        return x;
    }

    std::optional<Matrix> inverse() const {
        if (rows != cols) throw contract_error("inverse of non-square matrix");
        Matrix aug = hstack(*this, identity(rows));
        std::vector<int> piv = aug.rref();
        if (static_cast<int>(piv.size()) != rows) return std::nullopt;
        Matrix r(rows, rows);
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < rows; ++j) r(i, j) = aug(i, rows + j);
        return r;
    }

    F det() const {
        if (rows != cols) throw contract_error("determinant of non-square matrix");
        Matrix m = *this;
        F d(1);
        for (int c = 0; c < cols; ++c) {
            int p = -1;
            for (int i = c; i < rows; ++i)
                if (!m(i, c).is_zero()) {
                    p = i;
                    break;
                }
            if (p < 0) return F(0);
            if (p != c) {
                for (int j = 0; j < cols; ++j) std::swap(m(p, j), m(c, j));
                d = -d;
            }
            d = d * m(c, c);
            F inv = F(1) / m(c, c);
            for (int i = c + 1; i < rows; ++i) {
                if (m(i, c).is_zero()) continue;
                F f = m(i, c) * inv;
                for (int j = c; j < cols; ++j) m(i, j) -= f * m(c, j);
            }
        }
        return d;
    }

    // Does the column space contain v?
    bool col_space_contains(const std::vector<F>& v) const { return solve(v).has_value(); }

    // Column-space equality of two matrices with the same row count.
    static bool same_col_space(const Matrix& x, const Matrix& y) {
        int rx = x.rank(), ry = y.rank();
        if (rx != ry) return false;
        return hstack(x, y).rank() == rx;
    }
};

using QiMatrix = Matrix<GaussianRational>;

inline QiMatrix conj(const QiMatrix& m) {
    QiMatrix r = m;
    for (auto& x : r.a) x = x.conj();
    return r;
}

inline QiMatrix conj_transpose(const QiMatrix& m) { return conj(m).transpose(); }

inline bool is_real(const QiMatrix& m) {
    for (const auto& x : m.a)
        if (x.im != 0) return false;
    return true;
}

} // namespace gcgw
