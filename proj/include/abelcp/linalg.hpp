#pragma once

// Dense exact linear algebra over Q: row reduction, kernels, solves.

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "abelcp/error.hpp"
#include "abelcp/scalar.hpp"

namespace abelcp {

using Vector = std::vector<Scalar>;

class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    static Matrix from_columns(const std::vector<Vector>& cols, std::size_t rows) {
        Matrix m(rows, cols.size());
        for (std::size_t j = 0; j < cols.size(); ++j) {
            require(cols[j].size() == rows, ErrorKind::MalformedInput, "column length mismatch");
            for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
        }
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Scalar& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Scalar& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    Vector column(std::size_t j) const {
        Vector v(rows_);
        for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
        return v;
    }

    Vector apply(const Vector& x) const {
        require(x.size() == cols_, ErrorKind::MalformedInput, "matrix-vector size mismatch");
        Vector y(rows_);
        for (std::size_t i = 0; i < rows_; ++i) {
            Scalar acc;
            for (std::size_t j = 0; j < cols_; ++j)
                if (sgn(x[j]) != 0 && sgn((*this)(i, j)) != 0) acc += (*this)(i, j) * x[j];
            y[i] = std::move(acc);
        }
        return y;
    }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        require(a.cols_ == b.rows_, ErrorKind::MalformedInput, "matrix product size mismatch");
        Matrix c(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const Scalar& aik = a(i, k);
                if (sgn(aik) == 0) continue;
                for (std::size_t j = 0; j < b.cols_; ++j)
                    if (sgn(b(k, j)) != 0) c(i, j) += aik * b(k, j);
            }
        return c;
    }

    friend Matrix operator-(const Matrix& a, const Matrix& b) {
        require(a.rows_ == b.rows_ && a.cols_ == b.cols_, ErrorKind::MalformedInput, "matrix difference size mismatch");
        Matrix c(a.rows_, a.cols_);
        for (std::size_t i = 0; i < a.data_.size(); ++i) c.data_[i] = a.data_[i] - b.data_[i];
        return c;
    }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

    bool is_identity() const { return rows_ == cols_ && *this == identity(rows_); }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Scalar> data_;
};

/// Reduced row echelon form, returned together with the pivot columns.
struct RowEchelon {
    Matrix reduced;
    std::vector<std::size_t> pivots;
};

inline RowEchelon rref(Matrix m) {
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
        std::size_t sel = row;
        while (sel < m.rows() && sgn(m(sel, col)) == 0) ++sel;
        if (sel == m.rows()) continue;
        if (sel != row)
            for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(sel, j), m(row, j));
        const Scalar inv = 1 / m(row, col);
        for (std::size_t j = col; j < m.cols(); ++j) m(row, j) *= inv;
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == row || sgn(m(i, col)) == 0) continue;
            const Scalar f = m(i, col);
            for (std::size_t j = col; j < m.cols(); ++j)
                if (sgn(m(row, j)) != 0) m(i, j) -= f * m(row, j);
        }
        pivots.push_back(col);
        ++row;
    }
    return {std::move(m), std::move(pivots)};
}

inline std::size_t rank(const Matrix& m) { return rref(m).pivots.size(); }

/// Basis of the right kernel, one vector per free column, in column order.
inline std::vector<Vector> kernel(const Matrix& m) {
    const auto [r, pivots] = rref(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto p : pivots) is_pivot[p] = true;
    std::vector<Vector> basis;
    for (std::size_t free = 0; free < m.cols(); ++free) {
        if (is_pivot[free]) continue;
        Vector v(m.cols());
        v[free] = 1;
        for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -r(i, free);
        basis.push_back(std::move(v));
    }
    return basis;
}

/// Unique solution of m x = rhs, or nullopt when m is singular or the system
/// is inconsistent.
inline std::optional<Vector> solve_unique(const Matrix& m, const Vector& rhs) {
    require(rhs.size() == m.rows(), ErrorKind::MalformedInput, "right-hand side size mismatch");
    Matrix aug(m.rows(), m.cols() + 1);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) aug(i, j) = m(i, j);
        aug(i, m.cols()) = rhs[i];
    }
    const auto [r, pivots] = rref(std::move(aug));
    if (pivots.size() != m.cols() || (!pivots.empty() && pivots.back() == m.cols())) return std::nullopt;
    Vector x(m.cols());
    for (std::size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = r(i, m.cols());
    return x;
}

inline Scalar determinant(Matrix m) {
    require(m.rows() == m.cols(), ErrorKind::MalformedInput, "determinant of non-square matrix");
    Scalar det = 1;
    const std::size_t n = m.rows();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t sel = col;
        while (sel < n && sgn(m(sel, col)) == 0) ++sel;
        if (sel == n) return 0;
        if (sel != col) {
            for (std::size_t j = 0; j < n; ++j) std::swap(m(sel, j), m(col, j));
            det = -det;
        }
        det *= m(col, col);
        const Scalar inv = 1 / m(col, col);
        for (std::size_t i = col + 1; i < n; ++i) {
            if (sgn(m(i, col)) == 0) continue;
            const Scalar f = m(i, col) * inv;
            for (std::size_t j = col; j < n; ++j) m(i, j) -= f * m(col, j);
        }
    }
    return det;
}

inline std::optional<Matrix> inverse(const Matrix& m) {
    require(m.rows() == m.cols(), ErrorKind::MalformedInput, "inverse of non-square matrix");
    const std::size_t n = m.rows();
    Matrix aug(n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
        aug(i, n + i) = 1;
    }
    const auto [r, pivots] = rref(std::move(aug));
    if (pivots.size() < n || pivots[n - 1] != n - 1) return std::nullopt;
    Matrix inv(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) inv(i, j) = r(i, n + j);
    return inv;
}

inline bool is_zero(const Vector& v) {
    for (const auto& x : v)
        if (sgn(x) != 0) return false;
    return true;
}

}  // namespace abelcp
