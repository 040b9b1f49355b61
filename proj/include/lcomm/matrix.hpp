#pragma once

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <ostream>
#include <span>
#include <utility>
#include <vector>

#include "lcomm/errors.hpp"
#include "lcomm/scalar.hpp"

namespace lcomm {

template <Field F>
using Vector = std::vector<F>;

/// Dense row-major matrix over F. Zero-sized shapes are allowed internally
/// (empty constraint systems, zero-dimensional blocks).
template <Field F>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, F{}) {}
  Matrix(std::size_t rows, std::size_t cols, std::vector<F> entries)
      : rows_(rows), cols_(cols), data_(std::move(entries)) {
    require(data_.size() == rows_ * cols_, ErrorKind::DimensionMismatch,
            "entry count does not match rows*cols");
  }
  Matrix(std::initializer_list<std::initializer_list<F>> rows) {
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
      require(r.size() == cols_, ErrorKind::DimensionMismatch, "ragged matrix literal");
      data_.insert(data_.end(), r.begin(), r.end());
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = from_int<F>(1);
    return m;
  }
  static Matrix scalar(std::size_t n, const F& lambda) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = lambda;
    return m;
  }
  static Matrix from_columns(std::size_t rows, std::span<const Vector<F>> cols) {
    Matrix m(rows, cols.size());
    for (std::size_t c = 0; c < cols.size(); ++c) {
      require(cols[c].size() == rows, ErrorKind::DimensionMismatch, "column length differs from row count");
      for (std::size_t r = 0; r < rows; ++r) m(r, c) = cols[c][r];
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  F& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const F& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<const F> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
  Vector<F> column(std::size_t c) const {
    Vector<F> v(rows_);
    for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
    return v;
  }
  const std::vector<F>& entries() const { return data_; }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
  }
  Matrix adjoint() const {
    Matrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) t(c, r) = conj((*this)(r, c));
    return t;
  }

  Matrix& operator+=(const Matrix& o) {
    check_same_shape(o);
    for (std::size_t i = 0; i < data_.size(); ++i)
      if (!is_exact_zero(o.data_[i])) data_[i] += o.data_[i];
    return *this;
  }
  Matrix& operator-=(const Matrix& o) {
    check_same_shape(o);
    for (std::size_t i = 0; i < data_.size(); ++i)
      if (!is_exact_zero(o.data_[i])) data_[i] -= o.data_[i];
    return *this;
  }
  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }

  friend Matrix operator*(const F& s, Matrix a) {
    for (auto& x : a.data_) x = s * x;
    return a;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    require(a.cols_ == b.rows_, ErrorKind::DimensionMismatch, "matrix product shape mismatch");
    Matrix out(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const F& aik = a(i, k);
        if (is_exact_zero(aik)) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) {
          const F& bkj = b(k, j);
          if (!is_exact_zero(bkj)) out(i, j) += aik * bkj;
        }
      }
    return out;
  }

  friend Vector<F> operator*(const Matrix& a, const Vector<F>& x) {
    require(a.cols_ == x.size(), ErrorKind::DimensionMismatch, "matrix-vector shape mismatch");
    Vector<F> y(a.rows_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k)
        if (!is_exact_zero(a(i, k)) && !is_exact_zero(x[k])) y[i] += a(i, k) * x[k];
    return y;
  }

  /// Structural equality (exact backend) / entrywise tolerance (float backend).
  friend bool operator==(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) return false;
    if constexpr (is_exact_v<F>) {
      return a.data_ == b.data_;
    } else {
      for (std::size_t i = 0; i < a.data_.size(); ++i)
        if (!is_zero(a.data_[i] - b.data_[i])) return false;
      return true;
    }
  }

  bool is_zero_matrix() const {
    return std::all_of(data_.begin(), data_.end(), [](const F& x) { return is_zero(x); });
  }

  friend std::ostream& operator<<(std::ostream& os, const Matrix& m) {
    os << "[";
    for (std::size_t r = 0; r < m.rows_; ++r) {
      os << (r ? "; " : "");
      for (std::size_t c = 0; c < m.cols_; ++c) os << (c ? " " : "") << m(r, c);
    }
    return os << "]";
  }

 private:
  void check_same_shape(const Matrix& o) const {
    require(rows_ == o.rows_ && cols_ == o.cols_, ErrorKind::DimensionMismatch, "matrix shapes differ");
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<F> data_;
};

template <Field F>
void require_square(const Matrix<F>& a, const char* what) {
  require(a.is_square(), ErrorKind::NotSquare, std::string(what) + " must be square");
}

template <Field F>
Matrix<F> power(const Matrix<F>& a, std::size_t k) {
  require_square(a, "power base");
  Matrix<F> out = Matrix<F>::identity(a.rows());
  for (std::size_t i = 0; i < k; ++i) out = out * a;
  return out;
}

/// p(A) by Horner's rule; coefficients are in ascending degree order.
template <Field F>
Matrix<F> eval_poly(std::span<const F> coeffs, const Matrix<F>& a) {
  require_square(a, "eval_poly operand");
  const std::size_t n = a.rows();
  Matrix<F> acc(n, n);
  for (std::size_t i = coeffs.size(); i-- > 0;) {
    acc = acc * a;
    if (!is_exact_zero(coeffs[i]))
      for (std::size_t d = 0; d < n; ++d) acc(d, d) += coeffs[i];
  }
  return acc;
}

template <Field F>
Matrix<F> eval_poly(const std::vector<F>& coeffs, const Matrix<F>& a) {
  return eval_poly(std::span<const F>(coeffs), a);
}

/// A - lambda*I.
template <Field F>
Matrix<F> shift(const Matrix<F>& a, const F& lambda) {
  require_square(a, "shift operand");
  Matrix<F> out = a;
  for (std::size_t i = 0; i < a.rows(); ++i) out(i, i) -= lambda;
  return out;
}

/// True iff A = a11 * I.
template <Field F>
bool is_scalar_operator(const Matrix<F>& a) {
  require_square(a, "operator");
  if (a.rows() == 0) return true;
  return shift(a, a(0, 0)).is_zero_matrix();
}

template <Field F>
Matrix<F> block_diag(std::span<const Matrix<F>> blocks) {
  std::size_t r = 0, c = 0;
  for (const auto& b : blocks) r += b.rows(), c += b.cols();
  Matrix<F> out(r, c);
  std::size_t r0 = 0, c0 = 0;
  for (const auto& b : blocks) {
    for (std::size_t i = 0; i < b.rows(); ++i)
      for (std::size_t j = 0; j < b.cols(); ++j) out(r0 + i, c0 + j) = b(i, j);
    r0 += b.rows();
    c0 += b.cols();
  }
  return out;
}

template <Field F>
Matrix<F> block_diag(const Matrix<F>& a, const Matrix<F>& b) {
  const Matrix<F> blocks[] = {a, b};
  return block_diag<F>(std::span<const Matrix<F>>(blocks));
}

template <Field F>
Matrix<F> submatrix(const Matrix<F>& a, std::size_t r0, std::size_t c0, std::size_t rows, std::size_t cols) {
  require(r0 + rows <= a.rows() && c0 + cols <= a.cols(), ErrorKind::DimensionMismatch, "submatrix out of range");
  Matrix<F> out(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) out(i, j) = a(r0 + i, c0 + j);
  return out;
}

/// Places `b` into `a` with top-left corner at (r0, c0).
template <Field F>
void set_block(Matrix<F>& a, std::size_t r0, std::size_t c0, const Matrix<F>& b) {
  require(r0 + b.rows() <= a.rows() && c0 + b.cols() <= a.cols(), ErrorKind::DimensionMismatch,
          "block does not fit");
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) a(r0 + i, c0 + j) = b(i, j);
}

template <Field F>
Vector<F> unit_vector(std::size_t n, std::size_t i) {
  Vector<F> v(n);
  v[i] = from_int<F>(1);
  return v;
}

template <Field F>
bool is_zero_vector(const Vector<F>& v) {
  return std::all_of(v.begin(), v.end(), [](const F& x) { return is_zero(x); });
}

template <Field F>
Vector<F> axpy(const F& a, const Vector<F>& x, Vector<F> y) {
  for (std::size_t i = 0; i < y.size(); ++i)
    if (!is_exact_zero(x[i])) y[i] += a * x[i];
  return y;
}

}  // namespace lcomm
