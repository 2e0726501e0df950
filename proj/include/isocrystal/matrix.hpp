/*
   Copyright 2026 The isocrystal authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#ifndef ISOCRYSTAL_MATRIX_HPP
#define ISOCRYSTAL_MATRIX_HPP

#include <algorithm>
#include <cstdint>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace isoc {

/// Dense row-major matrix over a commutative ring R. Like the polynomial
/// types, it keeps a zero of R so that empty and zero matrices still know
/// their ring.
template <class R>
class Matrix {
   public:
    using entry_type = R;

    Matrix() = default;
    Matrix(int rows, int cols, const R& zero)
        : rows_(rows), cols_(cols), zero_(zero.zero_like()), a_(static_cast<std::size_t>(rows) * cols, zero_) {}
    Matrix(int rows, int cols, std::vector<R> entries, const R& zero)
        : rows_(rows), cols_(cols), zero_(zero.zero_like()), a_(std::move(entries)) {
        if (a_.size() != static_cast<std::size_t>(rows) * cols) throw DomainError("matrix entry count does not match its shape");
    }
    static Matrix identity(int n, const R& zero) {
        Matrix m(n, n, zero);
        for (int i = 0; i < n; ++i) m(i, i) = zero.one_like();
        return m;
    }
    static Matrix from_rows(const std::vector<std::vector<R>>& rows) {
        if (rows.empty() || rows[0].empty()) throw DomainError("matrix needs at least one entry");
        Matrix m(static_cast<int>(rows.size()), static_cast<int>(rows[0].size()), rows[0][0]);
        for (int i = 0; i < m.rows_; ++i) {
            if (static_cast<int>(rows[i].size()) != m.cols_) throw DomainError("ragged matrix rows");
            for (int j = 0; j < m.cols_; ++j) m(i, j) = rows[i][j];
        }
        return m;
    }

    int rows() const noexcept { return rows_; }
    int cols() const noexcept { return cols_; }
    bool is_square() const noexcept { return rows_ == cols_; }
    const R& zero() const noexcept { return zero_; }
    R& operator()(int i, int j) { return a_[static_cast<std::size_t>(i) * cols_ + j]; }
    const R& operator()(int i, int j) const { return a_[static_cast<std::size_t>(i) * cols_ + j]; }
    const std::vector<R>& entries() const noexcept { return a_; }

    bool is_zero() const {
        for (const auto& x : a_)
            if (!x.is_zero()) return false;
        return true;
    }
    Matrix zero_like() const { return Matrix(rows_, cols_, zero_); }

    Matrix operator-() const {
        Matrix r(*this);
        for (auto& x : r.a_) x = -x;
        return r;
    }
    friend Matrix operator+(const Matrix& a, const Matrix& b) {
        a.same_shape(b);
        Matrix r(a);
        for (std::size_t k = 0; k < r.a_.size(); ++k) r.a_[k] += b.a_[k];
        return r;
    }
    friend Matrix operator-(const Matrix& a, const Matrix& b) {
        a.same_shape(b);
        Matrix r(a);
        for (std::size_t k = 0; k < r.a_.size(); ++k) r.a_[k] -= b.a_[k];
        return r;
    }
    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        if (a.cols_ != b.rows_) throw DomainError("matrix product shape mismatch");
        Matrix r(a.rows_, b.cols_, a.zero_);
        for (int i = 0; i < a.rows_; ++i)
            for (int k = 0; k < a.cols_; ++k) {
                const R& x = a(i, k);
                if (x.is_zero()) continue;
                for (int j = 0; j < b.cols_; ++j) r(i, j) += x * b(k, j);
            }
        return r;
    }
    Matrix scaled(const R& s) const {
        Matrix r(*this);
        for (auto& x : r.a_) x = s * x;
        return r;
    }
    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
    }

    Matrix transpose() const {
        Matrix r(cols_, rows_, zero_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
        return r;
    }
    Matrix block(int r0, int c0, int nr, int nc) const {
        Matrix r(nr, nc, zero_);
        for (int i = 0; i < nr; ++i)
            for (int j = 0; j < nc; ++j) r(i, j) = (*this)(r0 + i, c0 + j);
        return r;
    }
    void set_block(int r0, int c0, const Matrix& b) {
        for (int i = 0; i < b.rows_; ++i)
            for (int j = 0; j < b.cols_; ++j) (*this)(r0 + i, c0 + j) = b(i, j);
    }
    Matrix column(int j) const { return block(0, j, rows_, 1); }
    Matrix select_columns(const std::vector<int>& cols) const {
        Matrix r(rows_, static_cast<int>(cols.size()), zero_);
        for (int i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols.size(); ++j) r(i, static_cast<int>(j)) = (*this)(i, cols[j]);
        return r;
    }
    static Matrix hstack(const Matrix& a, const Matrix& b) {
        Matrix r(a.rows_, a.cols_ + b.cols_, a.zero_);
        r.set_block(0, 0, a);
        r.set_block(0, a.cols_, b);
        return r;
    }
    static Matrix vstack(const Matrix& a, const Matrix& b) {
        Matrix r(a.rows_ + b.rows_, a.cols_, a.zero_);
        r.set_block(0, 0, a);
        r.set_block(a.rows_, 0, b);
        return r;
    }

    template <class F>
    auto map(F&& f) const {
        using S = decltype(f(zero_));
        std::vector<S> v;
        v.reserve(a_.size());
        for (const auto& x : a_) v.push_back(f(x));
        return Matrix<S>(rows_, cols_, std::move(v), f(zero_));
    }

    R trace() const {
        R acc = zero_;
        for (int i = 0; i < std::min(rows_, cols_); ++i) acc += (*this)(i, i);
        return acc;
    }

   private:
    void same_shape(const Matrix& b) const {
        if (rows_ != b.rows_ || cols_ != b.cols_) throw DomainError("matrix shape mismatch");
    }

    int rows_ = 0;
    int cols_ = 0;
    R zero_{};
    std::vector<R> a_;
};

template <class R>
Matrix<R> sigma(const Matrix<R>& m, std::uint64_t q) {
    return m.map([q](const R& x) { return sigma(x, q); });
}

/// sigma applied n times.
template <class T>
T sigma_n(const T& x, std::uint64_t q, int n) {
    T r = x;
    for (int i = 0; i < n; ++i) r = sigma(r, q);
    return r;
}

/// Kronecker product, row-major: e_i (x) f_j sits at index i * dim(f) + j.
template <class R>
Matrix<R> kronecker(const Matrix<R>& a, const Matrix<R>& b) {
    Matrix<R> r(a.rows() * b.rows(), a.cols() * b.cols(), a.zero());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j)
            for (int k = 0; k < b.rows(); ++k)
                for (int l = 0; l < b.cols(); ++l) r(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
    return r;
}

/// k-element subsets of {0..n-1} in lexicographic order.
std::vector<std::vector<int>> lexicographic_subsets(int n, int k);

/// Division-free characteristic polynomial det(X*I - A) (Berkowitz), as
/// coefficients low-to-high; the last one is 1.
template <class R>
std::vector<R> charpoly_coefficients(const Matrix<R>& a) {
    if (!a.is_square()) throw DomainError("characteristic polynomial of a non-square matrix");
    const int n = a.rows();
    const R zero = a.zero();
    const R one = zero.one_like();
    if (n == 0) return {one};
    // vect holds coefficients from the top degree down
    std::vector<R> vect{one, -a(0, 0)};
    for (int r = 1; r < n; ++r) {
        std::vector<R> t(static_cast<std::size_t>(r) + 2, zero);
        t[0] = one;
        t[1] = -a(r, r);
        std::vector<R> v(r, zero);
        for (int i = 0; i < r; ++i) v[i] = a(i, r);
        for (int k = 2; k <= r + 1; ++k) {
            R acc = zero;
            for (int i = 0; i < r; ++i) acc += a(r, i) * v[i];
            t[k] = -acc;
            if (k == r + 1) break;
            std::vector<R> w(r, zero);
            for (int i = 0; i < r; ++i)
                for (int j = 0; j < r; ++j) w[i] += a(i, j) * v[j];
            v = std::move(w);
        }
        std::vector<R> next(static_cast<std::size_t>(r) + 2, zero);
        for (int i = 0; i < r + 2; ++i)
            for (int j = 0; j <= std::min(i, r); ++j) next[i] += t[i - j] * vect[j];
        vect = std::move(next);
    }
    return std::vector<R>(vect.rbegin(), vect.rend());
}

/// Determinant by fraction-free (Bareiss) elimination. Every division is
/// exact, so this works over fields and over polynomial rings alike.
template <class R>
R det_bareiss(Matrix<R> m) {
    if (!m.is_square()) throw DomainError("determinant of a non-square matrix");
    const int n = m.rows();
    R one = m.zero().one_like();
    if (n == 0) return one;
    R prev = one;
    bool negate = false;
    for (int k = 0; k < n - 1; ++k) {
        if (m(k, k).is_zero()) {
            int p = k + 1;
            while (p < n && m(p, k).is_zero()) ++p;
            if (p == n) return m.zero();
            for (int j = 0; j < n; ++j) std::swap(m(k, j), m(p, j));
            negate = !negate;
        }
        for (int i = k + 1; i < n; ++i) {
            for (int j = k + 1; j < n; ++j) m(i, j) = exact_div(m(i, j) * m(k, k) - m(i, k) * m(k, j), prev);
            m(i, k) = m.zero();
        }
        prev = m(k, k);
    }
    R d = m(n - 1, n - 1);
    return negate ? -d : d;
}

/// Laplace-free determinant usable over any commutative ring, via the
/// constant term of the characteristic polynomial.
template <class R>
R det_division_free(const Matrix<R>& m) {
    auto c = charpoly_coefficients(m);
    return (m.rows() % 2 == 0) ? c[0] : -c[0];
}

/// Exact division hook for Bareiss; fields divide, polynomial rings use
/// their exact quotient (found by ADL).
template <class R>
R exact_div(const R& a, const R& b) {
    return a / b;
}

/// n-th compound matrix: minors indexed by lexicographic subsets.
template <class R>
Matrix<R> compound(const Matrix<R>& a, int k) {
    const int n = a.rows();
    if (k < 0 || k > n) throw DomainError("exterior power index out of range");
    auto subsets = lexicographic_subsets(n, k);
    const int s = static_cast<int>(subsets.size());
    Matrix<R> r(s, s, a.zero());
    for (int i = 0; i < s; ++i)
        for (int j = 0; j < s; ++j) {
            Matrix<R> minor(k, k, a.zero());
            for (int x = 0; x < k; ++x)
                for (int y = 0; y < k; ++y) minor(x, y) = a(subsets[i][x], subsets[j][y]);
            r(i, j) = k == 0 ? a.zero().one_like() : det_division_free(minor);
        }
    return r;
}

/// Gauss-Jordan inverse. Pivots are chosen by smallest pivot_weight so that
/// series matrices lose as little precision as possible.
template <class R>
Matrix<R> inverse(const Matrix<R>& m) {
    if (!m.is_square()) throw DomainError("inverse of a non-square matrix");
    const int n = m.rows();
    Matrix<R> a(m);
    Matrix<R> inv = Matrix<R>::identity(n, m.zero());
    for (int k = 0; k < n; ++k) {
        int p = -1, best = std::numeric_limits<int>::max();
        for (int i = k; i < n; ++i) {
            int w = pivot_weight(a(i, k));
            if (w < best) {
                best = w;
                p = i;
            }
        }
        if (p < 0) throw SingularMatrix("matrix is singular (column " + std::to_string(k) + ")");
        for (int j = 0; j < n; ++j) {
            std::swap(a(k, j), a(p, j));
            std::swap(inv(k, j), inv(p, j));
        }
        R pinv = a(k, k).inverse();
        for (int j = 0; j < n; ++j) {
            a(k, j) = a(k, j) * pinv;
            inv(k, j) = inv(k, j) * pinv;
        }
        for (int i = 0; i < n; ++i) {
            if (i == k || a(i, k).is_zero()) continue;
            R f = a(i, k);
            for (int j = 0; j < n; ++j) {
                a(i, j) -= f * a(k, j);
                inv(i, j) -= f * inv(k, j);
            }
        }
    }
    return inv;
}

/// Reduced row echelon form over a field; returns the pivot columns.
template <class R>
std::vector<int> rref(Matrix<R>& a) {
    std::vector<int> pivots;
    int row = 0;
    for (int c = 0; c < a.cols() && row < a.rows(); ++c) {
        int p = row;
        while (p < a.rows() && a(p, c).is_zero()) ++p;
        if (p == a.rows()) continue;
        for (int j = 0; j < a.cols(); ++j) std::swap(a(row, j), a(p, j));
        R inv = a(row, c).inverse();
        for (int j = 0; j < a.cols(); ++j) a(row, j) = a(row, j) * inv;
        for (int i = 0; i < a.rows(); ++i) {
            if (i == row || a(i, c).is_zero()) continue;
            R f = a(i, c);
            for (int j = 0; j < a.cols(); ++j) a(i, j) -= f * a(row, j);
        }
        pivots.push_back(c);
        ++row;
    }
    return pivots;
}

template <class R>
int rank(Matrix<R> a) {
    return static_cast<int>(rref(a).size());
}

/// Basis of the right kernel {v : a v = 0} over a field, as columns.
template <class R>
Matrix<R> kernel(const Matrix<R>& m) {
    Matrix<R> a(m);
    auto piv = rref(a);
    std::vector<int> free;
    for (int c = 0, k = 0; c < a.cols(); ++c) {
        if (k < static_cast<int>(piv.size()) && piv[k] == c)
            ++k;
        else
            free.push_back(c);
    }
    Matrix<R> ker(a.cols(), static_cast<int>(free.size()), a.zero());
    for (std::size_t f = 0; f < free.size(); ++f) {
        ker(free[f], static_cast<int>(f)) = a.zero().one_like();
        for (std::size_t k = 0; k < piv.size(); ++k) ker(piv[k], static_cast<int>(f)) = -a(static_cast<int>(k), free[f]);
    }
    return ker;
}

}  // namespace isoc

#endif
