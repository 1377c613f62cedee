#pragma once

// Small dense matrices over a field: exact Q(c) or complex doubles.

#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <utility>
#include <vector>

#include "ellhyp/error.hpp"
#include "ellhyp/rational_function.hpp"

namespace ellhyp {

/// Pivoting policy per scalar type: exact fields only need a nonzero pivot,
/// floating types take the largest magnitude.
template <class T>
struct FieldTraits;

template <>
struct FieldTraits<RationalFunctionC> {
  static bool is_zero(const RationalFunctionC& x) { return x.is_zero(); }
  static double pivot_score(const RationalFunctionC& x) { return x.is_zero() ? 0.0 : 1.0 + 1.0 / (1.0 + x.numerator().degree() + x.denominator().degree()); }
};

template <>
struct FieldTraits<std::complex<double>> {
  static bool is_zero(const std::complex<double>& x) { return std::abs(x) == 0.0; }
  static double pivot_score(const std::complex<double>& x) { return std::abs(x); }
};

template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}
  Matrix(std::initializer_list<std::initializer_list<T>> init) : rows_(init.size()), cols_(init.begin()->size()) {
    data_.reserve(rows_ * cols_);
    for (const auto& row : init) {
      if (row.size() != cols_) throw Error(Errc::parse_error, "ragged matrix initializer");
      data_.insert(data_.end(), row.begin(), row.end());
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw Error(Errc::composition_mismatch, "matrix shape mismatch");
    Matrix r(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        if (FieldTraits<T>::is_zero(a(i, k))) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) r(i, j) += a(i, k) * b(k, j);
      }
    return r;
  }

  friend Matrix operator+(Matrix a, const Matrix& b) {
    for (std::size_t k = 0; k < a.data_.size(); ++k) a.data_[k] += b.data_[k];
    return a;
  }
  friend Matrix operator-(Matrix a, const Matrix& b) {
    for (std::size_t k = 0; k < a.data_.size(); ++k) a.data_[k] -= b.data_[k];
    return a;
  }

  Matrix scaled(const T& s) const {
    Matrix r = *this;
    for (auto& x : r.data_) x *= s;
    return r;
  }

  Matrix transpose() const {
    Matrix r(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
    return r;
  }

  /// Submatrix with one row and one column removed.
  Matrix minor_matrix(std::size_t row, std::size_t col) const {
    Matrix r(rows_ - 1, cols_ - 1);
    for (std::size_t i = 0, ri = 0; i < rows_; ++i) {
      if (i == row) continue;
      for (std::size_t j = 0, rj = 0; j < cols_; ++j) {
        if (j == col) continue;
        r(ri, rj++) = (*this)(i, j);
      }
      ++ri;
    }
    return r;
  }

  template <class F>
  auto map(F&& f) const {
    using U = decltype(f(std::declval<const T&>()));
    Matrix<U> r(rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) r(i, j) = f((*this)(i, j));
    return r;
  }

  T trace() const {
    T t(0);
    for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
    return t;
  }

  std::vector<T> column(std::size_t j) const {
    std::vector<T> c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
  }

  std::vector<T> apply(const std::vector<T>& v) const {
    std::vector<T> r(rows_, T(0));
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) r[i] += (*this)(i, j) * v[j];
    return r;
  }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<T> data_;
};

namespace detail {

/// Row-reduces `m` in place; returns (rank, sign of the row permutation,
/// product of pivots) and optionally applies the same operations to `rhs`.
template <class T>
struct Elimination {
  std::size_t rank = 0;
  T det_factor = T(1);
  bool full_rank = false;
};

template <class T>
Elimination<T> eliminate(Matrix<T>& m, Matrix<T>* rhs, bool reduce_above) {
  Elimination<T> out;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t best = row;
    double score = 0.0;
    for (std::size_t i = row; i < m.rows(); ++i) {
      double s = FieldTraits<T>::pivot_score(m(i, col));
      if (s > score) {
        score = s;
        best = i;
      }
    }
    if (score == 0.0) {
      out.det_factor = T(0);
      continue;
    }
    if (best != row) {
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(row, j), m(best, j));
      if (rhs)
        for (std::size_t j = 0; j < rhs->cols(); ++j) std::swap((*rhs)(row, j), (*rhs)(best, j));
      out.det_factor = -out.det_factor;
    }
    T piv = m(row, col);
    out.det_factor *= piv;
    for (std::size_t i = reduce_above ? 0 : row + 1; i < m.rows(); ++i) {
      if (i == row || FieldTraits<T>::is_zero(m(i, col))) continue;
      T f = m(i, col) / piv;
      for (std::size_t j = col; j < m.cols(); ++j) m(i, j) -= f * m(row, j);
      if (rhs)
        for (std::size_t j = 0; j < rhs->cols(); ++j) (*rhs)(i, j) -= f * (*rhs)(row, j);
    }
    if (reduce_above) {
      T inv = T(1) / piv;
      for (std::size_t j = col; j < m.cols(); ++j) m(row, j) *= inv;
      if (rhs)
        for (std::size_t j = 0; j < rhs->cols(); ++j) (*rhs)(row, j) *= inv;
    }
    ++row;
  }
  out.rank = row;
  out.full_rank = row == m.rows() && m.rows() == m.cols();
  return out;
}

}  // namespace detail

template <class T>
T determinant(Matrix<T> m) {
  if (m.rows() != m.cols()) throw Error(Errc::singular_matrix, "determinant of a non-square matrix");
  auto e = detail::eliminate<T>(m, nullptr, false);
  return e.rank == m.rows() ? e.det_factor : T(0);
}

template <class T>
std::size_t rank(Matrix<T> m) {
  return detail::eliminate<T>(m, nullptr, false).rank;
}

template <class T>
Matrix<T> inverse(Matrix<T> m) {
  if (m.rows() != m.cols()) throw Error(Errc::singular_matrix, "inverse of a non-square matrix");
  Matrix<T> inv = Matrix<T>::identity(m.rows());
  auto e = detail::eliminate<T>(m, &inv, true);
  if (e.rank != m.rows()) throw Error(Errc::singular_matrix, "matrix is not invertible");
  return inv;
}

template <class T>
Matrix<T> power(const Matrix<T>& m, int k) {
  Matrix<T> base = k < 0 ? inverse(m) : m;
  Matrix<T> r = Matrix<T>::identity(m.rows());
  for (int i = 0; i < (k < 0 ? -k : k); ++i) r = r * base;
  return r;
}

/// Basis of the right kernel {v : m v = 0}.
template <class T>
std::vector<std::vector<T>> kernel(Matrix<T> m) {
  detail::eliminate<T>(m, nullptr, true);
  std::vector<std::size_t> pivot_cols;
  std::vector<bool> is_pivot(m.cols(), false);
  for (std::size_t i = 0, col = 0; i < m.rows(); ++i) {
    while (col < m.cols() && FieldTraits<T>::is_zero(m(i, col))) ++col;
    if (col == m.cols()) break;
    pivot_cols.push_back(col);
    is_pivot[col] = true;
  }
  std::vector<std::vector<T>> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    std::vector<T> v(m.cols(), T(0));
    v[free] = T(1);
    for (std::size_t i = 0; i < pivot_cols.size(); ++i) v[pivot_cols[i]] = -m(i, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Characteristic polynomial det(lambda*I - m) by Faddeev-LeVerrier.
/// Coefficients are returned lowest degree first; the leading one is 1.
template <class T>
std::vector<T> characteristic_polynomial(const Matrix<T>& a) {
  std::size_t n = a.rows();
  std::vector<T> coeff(n + 1, T(0));
  coeff[n] = T(1);
  Matrix<T> mk(n, n);
  for (std::size_t k = 1; k <= n; ++k) {
    mk = a * mk + Matrix<T>::identity(n).scaled(coeff[n - k + 1]);
    T tr = (a * mk).trace();
    coeff[n - k] = -tr / T(static_cast<int>(k));
  }
  return coeff;
}

}  // namespace ellhyp
