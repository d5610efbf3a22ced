#pragma once

#include "grpd/arith.hpp"

#include <algorithm>
#include <cassert>
#include <optional>
#include <utility>
#include <vector>

namespace grpd {

/// Dense row-major matrix over an exact ring.
template <class T>
class Matrix {
public:
    Matrix() = default;
    Matrix(size_t rows, size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}

    static Matrix identity(size_t n) {
        Matrix m(n, n);
        for (size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    static Matrix from_columns(size_t rows, const std::vector<std::vector<T>>& cols) {
        Matrix m(rows, cols.size());
        for (size_t j = 0; j < cols.size(); ++j) {
            assert(cols[j].size() == rows);
            for (size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
        }
        return m;
    }

    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }

    T& operator()(size_t i, size_t j) { return data_[i * cols_ + j]; }
    const T& operator()(size_t i, size_t j) const { return data_[i * cols_ + j]; }

    std::vector<T> column(size_t j) const {
        std::vector<T> c(rows_);
        for (size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
        return c;
    }

    std::vector<std::vector<T>> columns() const {
        std::vector<std::vector<T>> out;
        out.reserve(cols_);
        for (size_t j = 0; j < cols_; ++j) out.push_back(column(j));
        return out;
    }

    Matrix transpose() const {
        Matrix t(cols_, rows_);
        for (size_t i = 0; i < rows_; ++i)
            for (size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    std::vector<T> operator*(const std::vector<T>& v) const {
        assert(v.size() == cols_);
        std::vector<T> r(rows_, T(0));
        for (size_t i = 0; i < rows_; ++i)
            for (size_t j = 0; j < cols_; ++j)
                if ((*this)(i, j) != 0 && v[j] != 0) r[i] += (*this)(i, j) * v[j];
        return r;
    }

    Matrix operator*(const Matrix& b) const {
        assert(cols_ == b.rows_);
        Matrix r(rows_, b.cols_);
        for (size_t i = 0; i < rows_; ++i)
            for (size_t k = 0; k < cols_; ++k) {
                const T& a = (*this)(i, k);
                if (a == 0) continue;
                for (size_t j = 0; j < b.cols_; ++j)
                    if (b(k, j) != 0) r(i, j) += a * b(k, j);
            }
        return r;
    }

    bool operator==(const Matrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
    }

    bool is_zero() const {
        return std::all_of(data_.begin(), data_.end(), [](const T& x) { return x == 0; });
    }

    void swap_rows(size_t a, size_t b) {
        if (a == b) return;
        for (size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
    }
    void swap_cols(size_t a, size_t b) {
        if (a == b) return;
        for (size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
    }
    /// row[dst] += f * row[src]
    void add_row(size_t dst, size_t src, const T& f) {
        for (size_t j = 0; j < cols_; ++j)
            if ((*this)(src, j) != 0) (*this)(dst, j) += f * (*this)(src, j);
    }
    /// col[dst] += f * col[src]
    void add_col(size_t dst, size_t src, const T& f) {
        for (size_t i = 0; i < rows_; ++i)
            if ((*this)(i, src) != 0) (*this)(i, dst) += f * (*this)(i, src);
    }

private:
    size_t rows_ = 0;
    size_t cols_ = 0;
    std::vector<T> data_;
};

using QMatrix = Matrix<Rational>;
using ZMatrix = Matrix<Integer>;

inline QMatrix to_rational(const ZMatrix& m) {
    QMatrix r(m.rows(), m.cols());
    for (size_t i = 0; i < m.rows(); ++i)
        for (size_t j = 0; j < m.cols(); ++j) r(i, j) = Rational(m(i, j));
    return r;
}

/// Requires integral entries.
inline ZMatrix to_integer(const QMatrix& m) {
    ZMatrix r(m.rows(), m.cols());
    for (size_t i = 0; i < m.rows(); ++i)
        for (size_t j = 0; j < m.cols(); ++j) {
            if (!is_integral(m(i, j))) throw Error(ErrorKind::Internal, "to_integer: non-integral entry");
            r(i, j) = m(i, j).get_num();
        }
    return r;
}

/// Column-major sparse matrix with rational entries; rows sorted within a column.
class SparseMatrix {
public:
    using Entry = std::pair<size_t, Rational>;

    SparseMatrix() = default;
    SparseMatrix(size_t rows, size_t cols) : rows_(rows), cols_(cols) {}

    size_t rows() const { return rows_; }
    size_t cols() const { return cols_.size(); }

    /// Accumulates into (i, j).
    void add(size_t i, size_t j, const Rational& v) {
        assert(i < rows_ && j < cols_.size());
        if (v == 0) return;
        auto& col = cols_[j];
        auto it = std::lower_bound(col.begin(), col.end(), i,
                                   [](const Entry& e, size_t r) { return e.first < r; });
        if (it != col.end() && it->first == i) {
            it->second += v;
            if (it->second == 0) col.erase(it);
        } else {
            col.insert(it, {i, v});
        }
    }

    const std::vector<Entry>& column(size_t j) const { return cols_[j]; }

    QVector operator*(const QVector& v) const {
        assert(v.size() == cols());
        QVector r(rows_, Rational(0));
        for (size_t j = 0; j < cols(); ++j) {
            if (v[j] == 0) continue;
            for (const auto& [i, a] : cols_[j]) r[i] += a * v[j];
        }
        return r;
    }

    /// y^T A, i.e. the transpose applied to y.
    QVector transpose_times(const QVector& y) const {
        assert(y.size() == rows_);
        QVector r(cols(), Rational(0));
        for (size_t j = 0; j < cols(); ++j)
            for (const auto& [i, a] : cols_[j])
                if (y[i] != 0) r[j] += a * y[i];
        return r;
    }

    QMatrix dense() const {
        QMatrix m(rows_, cols());
        for (size_t j = 0; j < cols(); ++j)
            for (const auto& [i, a] : cols_[j]) m(i, j) = a;
        return m;
    }

    static SparseMatrix from_dense(const QMatrix& m) {
        SparseMatrix s(m.rows(), m.cols());
        for (size_t j = 0; j < m.cols(); ++j)
            for (size_t i = 0; i < m.rows(); ++i)
                if (m(i, j) != 0) s.cols_[j].push_back({i, m(i, j)});
        return s;
    }

    SparseMatrix operator*(const SparseMatrix& b) const {
        assert(cols() == b.rows());
        SparseMatrix r(rows_, b.cols());
        for (size_t j = 0; j < b.cols(); ++j) {
            QVector acc(rows_, Rational(0));
            bool any = false;
            for (const auto& [k, bv] : b.cols_[j])
                for (const auto& [i, av] : cols_[k]) {
                    acc[i] += av * bv;
                    any = true;
                }
            if (!any) continue;
            for (size_t i = 0; i < rows_; ++i)
                if (acc[i] != 0) r.cols_[j].push_back({i, acc[i]});
        }
        return r;
    }

    bool is_zero() const {
        return std::all_of(cols_.begin(), cols_.end(), [](const auto& c) { return c.empty(); });
    }

    bool is_integral() const {
        for (const auto& c : cols_)
            for (const auto& e : c)
                if (!grpd::is_integral(e.second)) return false;
        return true;
    }

    bool operator==(const SparseMatrix& o) const { return rows_ == o.rows_ && cols_ == o.cols_; }

private:
    size_t rows_ = 0;
    std::vector<std::vector<Entry>> cols_;
};

// ---------------------------------------------------------------------------
// Rational linear algebra (dense Gauss-Jordan).

struct RowEchelon {
    QMatrix reduced;
    std::vector<size_t> pivots;  // pivot column of each nonzero row
};

inline RowEchelon rref(QMatrix m) {
    RowEchelon out;
    size_t row = 0;
    for (size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
        size_t p = row;
        while (p < m.rows() && m(p, col) == 0) ++p;
        if (p == m.rows()) continue;
        m.swap_rows(row, p);
        Rational inv = 1 / m(row, col);
        for (size_t j = 0; j < m.cols(); ++j) m(row, j) *= inv;
        for (size_t i = 0; i < m.rows(); ++i)
            if (i != row && m(i, col) != 0) m.add_row(i, row, -m(i, col));
        out.pivots.push_back(col);
        ++row;
    }
    out.reduced = std::move(m);
    return out;
}

inline size_t rank(const QMatrix& m) { return rref(m).pivots.size(); }

/// Columns form a basis of the null space.
inline QMatrix kernel_basis(const QMatrix& m) {
    auto e = rref(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (size_t p : e.pivots) is_pivot[p] = true;
    std::vector<QVector> basis;
    for (size_t f = 0; f < m.cols(); ++f) {
        if (is_pivot[f]) continue;
        QVector v(m.cols(), Rational(0));
        v[f] = 1;
        for (size_t r = 0; r < e.pivots.size(); ++r) v[e.pivots[r]] = -e.reduced(r, f);
        basis.push_back(std::move(v));
    }
    return QMatrix::from_columns(m.cols(), basis);
}

/// Indices of a maximal independent set of columns (leftmost choice).
inline std::vector<size_t> independent_columns(const QMatrix& m) { return rref(m).pivots; }

inline QMatrix select_columns(const QMatrix& m, const std::vector<size_t>& idx) {
    QMatrix r(m.rows(), idx.size());
    for (size_t j = 0; j < idx.size(); ++j)
        for (size_t i = 0; i < m.rows(); ++i) r(i, j) = m(i, idx[j]);
    return r;
}

inline QMatrix hcat(const QMatrix& a, const QMatrix& b) {
    assert(a.rows() == b.rows() || a.cols() == 0 || b.cols() == 0);
    size_t rows = a.cols() ? a.rows() : b.rows();
    QMatrix r(rows, a.cols() + b.cols());
    for (size_t i = 0; i < rows; ++i) {
        for (size_t j = 0; j < a.cols(); ++j) r(i, j) = a(i, j);
        for (size_t j = 0; j < b.cols(); ++j) r(i, a.cols() + j) = b(i, j);
    }
    return r;
}

/// Solves A X = B; nullopt if inconsistent. Free variables are set to zero.
inline std::optional<QMatrix> solve(const QMatrix& a, const QMatrix& b) {
    assert(a.rows() == b.rows());
    auto e = rref(hcat(a, b));
    QMatrix x(a.cols(), b.cols());
    for (size_t r = 0; r < e.pivots.size(); ++r) {
        size_t p = e.pivots[r];
        if (p >= a.cols()) return std::nullopt;
        for (size_t j = 0; j < b.cols(); ++j) x(p, j) = e.reduced(r, a.cols() + j);
    }
    return x;
}

inline std::optional<QVector> solve(const QMatrix& a, const QVector& b) {
    auto x = solve(a, QMatrix::from_columns(a.rows(), {b}));
    if (!x) return std::nullopt;
    return x->column(0);
}

/// Basis of the column space (subset of the given columns).
inline QMatrix column_space(const QMatrix& m) { return select_columns(m, independent_columns(m)); }

}  // namespace grpd
