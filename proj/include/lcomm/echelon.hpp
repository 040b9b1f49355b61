#pragma once

// Low-level elimination kernels behind the canonical subspace type.
//
// Exact backend: an incrementally maintained reduced row echelon form. Rows are
// kept fully reduced (each pivot column is zero in every other row), so a new
// vector is reduced with one pass over the stored rows, in any order.
//
// Float backend: SVD-based rank with the relative cutoff from FieldTraits, then
// a pivoted elimination on an orthonormal basis to reach the echelon shape.

#include <Eigen/Dense>

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <optional>
#include <vector>

#include "lcomm/matrix.hpp"

namespace lcomm {

namespace detail {

inline constexpr std::size_t kNoPivot = static_cast<std::size_t>(-1);

template <Field F>
class RowEchelon {
 public:
  explicit RowEchelon(std::size_t ncols) : ncols_(ncols), row_of_col_(ncols, kNoPivot) {}

  std::size_t ncols() const { return ncols_; }
  std::size_t rank() const { return rows_.size(); }
  bool full_rank() const { return rows_.size() == ncols_; }

  /// v minus its projection onto the row space along the free coordinates.
  Vector<F> reduce(Vector<F> v) const {
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      const F coef = v[pivots_[r]];
      if (is_exact_zero(coef)) continue;
      const Vector<F>& row = rows_[r];
      for (std::size_t c = 0; c < ncols_; ++c)
        if (!is_exact_zero(row[c])) v[c] -= coef * row[c];
    }
    return v;
  }

  /// Returns true iff v was independent of the stored rows.
  bool insert(Vector<F> v) {
    v = reduce(std::move(v));
    std::size_t lead = 0;
    while (lead < ncols_ && is_exact_zero(v[lead])) ++lead;
    if (lead == ncols_) return false;
    const F inv = from_int<F>(1) / v[lead];
    for (auto& x : v)
      if (!is_exact_zero(x)) x = inv * x;
    for (auto& row : rows_) {
      const F coef = row[lead];
      if (is_exact_zero(coef)) continue;
      for (std::size_t c = 0; c < ncols_; ++c)
        if (!is_exact_zero(v[c])) row[c] -= coef * v[c];
    }
    row_of_col_[lead] = rows_.size();
    rows_.push_back(std::move(v));
    pivots_.push_back(lead);
    return true;
  }

  /// Rows ordered by increasing pivot column, with their pivots.
  std::pair<std::vector<Vector<F>>, std::vector<std::size_t>> sorted() const {
    std::vector<std::size_t> order(rows_.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](auto a, auto b) { return pivots_[a] < pivots_[b]; });
    std::vector<Vector<F>> rows;
    std::vector<std::size_t> piv;
    rows.reserve(order.size());
    for (auto i : order) {
      rows.push_back(rows_[i]);
      piv.push_back(pivots_[i]);
    }
    return {std::move(rows), std::move(piv)};
  }

  /// Null space basis (unnormalized): one vector per free column.
  std::vector<Vector<F>> null_space() const {
    std::vector<Vector<F>> out;
    for (std::size_t f = 0; f < ncols_; ++f) {
      if (row_of_col_[f] != kNoPivot) continue;
      Vector<F> x(ncols_);
      x[f] = from_int<F>(1);
      for (std::size_t r = 0; r < rows_.size(); ++r)
        if (!is_exact_zero(rows_[r][f])) x[pivots_[r]] = -rows_[r][f];
      out.push_back(std::move(x));
    }
    return out;
  }

 private:
  std::size_t ncols_;
  std::vector<Vector<F>> rows_;
  std::vector<std::size_t> pivots_;
  std::vector<std::size_t> row_of_col_;
};

// ---------------------------------------------------------------------------
// Float helpers (Eigen)
// ---------------------------------------------------------------------------

inline Eigen::MatrixXcd to_eigen(const Matrix<Complex>& m) {
  Eigen::MatrixXcd e(m.rows(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) e(r, c) = m(r, c);
  return e;
}

inline Matrix<Complex> from_eigen(const Eigen::MatrixXcd& e) {
  Matrix<Complex> m(e.rows(), e.cols());
  for (Eigen::Index r = 0; r < e.rows(); ++r)
    for (Eigen::Index c = 0; c < e.cols(); ++c) m(r, c) = e(r, c);
  return m;
}

/// Number of singular values above rank_tol * max(sigma_max, 1). The unit floor keeps
/// rounding residue (an exactly-zero matrix computed in floating point) at rank 0.
inline std::size_t svd_rank(const Eigen::JacobiSVD<Eigen::MatrixXcd>& svd) {
  const auto& s = svd.singularValues();
  if (s.size() == 0) return 0;
  const double top = std::max(s(0), 1.0);
  std::size_t r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > FieldTraits<Complex>::rank_tol * top) ++r;
  return r;
}

/// Reduced echelon rows of an orthonormal row set (r x n), using partial
/// pivoting within each column; returns rows and pivots.
inline std::pair<std::vector<Vector<Complex>>, std::vector<std::size_t>> float_rref(Eigen::MatrixXcd rows) {
  const Eigen::Index r = rows.rows(), n = rows.cols();
  std::vector<std::size_t> pivots;
  Eigen::Index next = 0;
  for (Eigen::Index c = 0; c < n && next < r; ++c) {
    Eigen::Index best = next;
    double best_abs = 0.0;
    for (Eigen::Index i = next; i < r; ++i)
      if (std::abs(rows(i, c)) > best_abs) best_abs = std::abs(rows(i, c)), best = i;
    if (best_abs <= FieldTraits<Complex>::rank_tol) continue;
    rows.row(next).swap(rows.row(best));
    rows.row(next) /= rows(next, c);
    for (Eigen::Index i = 0; i < r; ++i)
      if (i != next) rows.row(i) -= rows(i, c) * rows.row(next);
    pivots.push_back(static_cast<std::size_t>(c));
    ++next;
  }
  std::vector<Vector<Complex>> out;
  for (Eigen::Index i = 0; i < next; ++i) {
    Vector<Complex> v(n);
    for (Eigen::Index c = 0; c < n; ++c) {
      Complex x = rows(i, c);
      if (std::abs(x) <= 1e-14) x = 0.0;
      v[c] = x;
    }
    v[pivots[i]] = 1.0;
    for (std::size_t j = 0; j < pivots.size(); ++j)
      if (static_cast<Eigen::Index>(j) != i) v[pivots[j]] = 0.0;
    out.push_back(std::move(v));
  }
  return {std::move(out), std::move(pivots)};
}

/// Canonical basis rows of span(vectors) in C^n, float backend.
inline std::pair<std::vector<Vector<Complex>>, std::vector<std::size_t>> float_canonical(
    const std::vector<Vector<Complex>>& vectors, std::size_t n) {
  if (vectors.empty() || n == 0) return {};
  Eigen::MatrixXcd m(n, vectors.size());
  for (std::size_t j = 0; j < vectors.size(); ++j)
    for (std::size_t i = 0; i < n; ++i) m(i, j) = vectors[j][i];
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m, Eigen::ComputeThinU);
  const std::size_t r = svd_rank(svd);
  if (r == 0) return {};
  Eigen::MatrixXcd q = svd.matrixU().leftCols(r).transpose();
  return float_rref(std::move(q));
}

inline std::vector<Vector<Complex>> float_null_space(const Matrix<Complex>& m) {
  const std::size_t c = m.cols();
  std::vector<Vector<Complex>> out;
  if (m.rows() == 0) {
    for (std::size_t i = 0; i < c; ++i) out.push_back(unit_vector<Complex>(c, i));
    return out;
  }
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(to_eigen(m), Eigen::ComputeFullV);
  const std::size_t r = svd_rank(svd);
  const auto& v = svd.matrixV();
  for (std::size_t j = r; j < c; ++j) {
    Vector<Complex> x(c);
    for (std::size_t i = 0; i < c; ++i) x[i] = v(i, j);
    out.push_back(std::move(x));
  }
  return out;
}

}  // namespace detail

/// rank(M); exact elimination or SVD with the relative cutoff.
template <Field F>
std::size_t rank(const Matrix<F>& m) {
  if constexpr (is_exact_v<F>) {
    detail::RowEchelon<F> ech(m.cols());
    for (std::size_t r = 0; r < m.rows() && !ech.full_rank(); ++r)
      ech.insert(Vector<F>(m.row(r).begin(), m.row(r).end()));
    return ech.rank();
  } else {
    if (m.rows() == 0 || m.cols() == 0) return 0;
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(detail::to_eigen(m));
    return detail::svd_rank(svd);
  }
}

template <Field F>
std::optional<Matrix<F>> try_inverse(const Matrix<F>& a) {
  require_square(a, "inverse operand");
  const std::size_t n = a.rows();
  if constexpr (is_exact_v<F>) {
    detail::RowEchelon<F> ech(2 * n);
    for (std::size_t r = 0; r < n; ++r) {
      Vector<F> row(2 * n);
      for (std::size_t c = 0; c < n; ++c) row[c] = a(r, c);
      row[n + r] = from_int<F>(1);
      ech.insert(std::move(row));
    }
    auto [rows, piv] = ech.sorted();
    for (std::size_t i = 0; i < n; ++i)
      if (piv[i] != i) return std::nullopt;
    Matrix<F> inv(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) inv(i, j) = rows[i][n + j];
    return inv;
  } else {
    if (rank(a) < n) return std::nullopt;
    return detail::from_eigen(detail::to_eigen(a).inverse());
  }
}

template <Field F>
Matrix<F> inverse(const Matrix<F>& a) {
  auto inv = try_inverse(a);
  require(inv.has_value(), ErrorKind::SingularU, "matrix is not invertible");
  return *std::move(inv);
}

}  // namespace lcomm
