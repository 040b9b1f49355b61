#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "lcomm/echelon.hpp"
#include "lcomm/matrix.hpp"

namespace lcomm {

/// Subspace of F^n stored by its reduced column echelon basis: column j has a
/// leading 1 in row pivots()[j], the pivot rows increase, and every other basis
/// column is zero in that row. Over the exact backend the representation is
/// canonical, so equality is entrywise equality of the bases.
template <Field F>
class Subspace {
 public:
  Subspace() = default;
  explicit Subspace(std::size_t ambient_dim) : n_(ambient_dim) {}

  static Subspace zero(std::size_t n) { return Subspace(n); }
  static Subspace full(std::size_t n) {
    Subspace s(n);
    for (std::size_t i = 0; i < n; ++i) {
      s.basis_.push_back(unit_vector<F>(n, i));
      s.pivots_.push_back(i);
    }
    return s;
  }

  /// Trusted constructor: caller guarantees the RCEF shape.
  static Subspace from_rcef(std::size_t n, std::vector<Vector<F>> basis, std::vector<std::size_t> pivots) {
    Subspace s(n);
    s.basis_ = std::move(basis);
    s.pivots_ = std::move(pivots);
    return s;
  }

  std::size_t ambient_dim() const { return n_; }
  std::size_t dim() const { return basis_.size(); }
  bool is_zero() const { return basis_.empty(); }
  bool is_full() const { return basis_.size() == n_; }
  const std::vector<Vector<F>>& basis() const { return basis_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }

  /// v - sum_j v[p_j] b_j. Zero exactly when v lies in the subspace.
  Vector<F> residual(Vector<F> v) const {
    require(v.size() == n_, ErrorKind::DimensionMismatch, "vector length differs from ambient dimension");
    const Vector<F> orig = v;
    for (std::size_t j = 0; j < basis_.size(); ++j) {
      const F coef = orig[pivots_[j]];
      if (is_exact_zero(coef)) continue;
      for (std::size_t i = 0; i < n_; ++i)
        if (!is_exact_zero(basis_[j][i])) v[i] -= coef * basis_[j][i];
    }
    return v;
  }

  bool contains_vector(const Vector<F>& v) const {
    const Vector<F> r = residual(v);
    if constexpr (is_exact_v<F>) {
      return is_zero_vector(r);
    } else {
      double nr = 0.0, nv = 0.0;
      for (std::size_t i = 0; i < n_; ++i) nr += std::norm(r[i]), nv += std::norm(v[i]);
      return std::sqrt(nr) <= FieldTraits<Complex>::rank_tol * std::max(1.0, std::sqrt(nv)) * 10.0;
    }
  }

  /// Coordinates of v in the stored basis (read off the pivot rows).
  Vector<F> coordinates(const Vector<F>& v) const {
    Vector<F> c(basis_.size());
    for (std::size_t j = 0; j < basis_.size(); ++j) c[j] = v[pivots_[j]];
    return c;
  }

  /// Basis vectors as the columns of an n x dim matrix.
  Matrix<F> basis_matrix() const { return Matrix<F>::from_columns(n_, std::span<const Vector<F>>(basis_)); }

  friend bool operator==(const Subspace& a, const Subspace& b) {
    if (a.n_ != b.n_ || a.dim() != b.dim() || a.pivots_ != b.pivots_) return false;
    if constexpr (is_exact_v<F>) {
      return a.basis_ == b.basis_;
    } else {
      for (const auto& v : b.basis_)
        if (!a.contains_vector(v)) return false;
      return true;
    }
  }

 private:
  std::size_t n_ = 0;
  std::vector<Vector<F>> basis_;
  std::vector<std::size_t> pivots_;
};

template <Field F>
Subspace<F> canonicalize(std::span<const Vector<F>> vectors, std::size_t ambient_dim) {
  for (const auto& v : vectors)
    require(v.size() == ambient_dim, ErrorKind::DimensionMismatch, "column length differs from ambient dimension");
  if constexpr (is_exact_v<F>) {
    detail::RowEchelon<F> ech(ambient_dim);
    for (const auto& v : vectors) {
      if (ech.full_rank()) break;
      ech.insert(v);
    }
    auto [rows, piv] = ech.sorted();
    return Subspace<F>::from_rcef(ambient_dim, std::move(rows), std::move(piv));
  } else {
    auto [rows, piv] = detail::float_canonical(std::vector<Vector<F>>(vectors.begin(), vectors.end()), ambient_dim);
    return Subspace<F>::from_rcef(ambient_dim, std::move(rows), std::move(piv));
  }
}

template <Field F>
Subspace<F> canonicalize(const std::vector<Vector<F>>& vectors, std::size_t ambient_dim) {
  return canonicalize(std::span<const Vector<F>>(vectors), ambient_dim);
}

/// {x : Mx = 0}.
template <Field F>
Subspace<F> kernel(const Matrix<F>& m) {
  if constexpr (is_exact_v<F>) {
    detail::RowEchelon<F> ech(m.cols());
    for (std::size_t r = 0; r < m.rows() && !ech.full_rank(); ++r) {
      auto row = m.row(r);
      if (std::all_of(row.begin(), row.end(), [](const F& x) { return is_exact_zero(x); })) continue;
      ech.insert(Vector<F>(row.begin(), row.end()));
    }
    return canonicalize(ech.null_space(), m.cols());
  } else {
    return canonicalize(detail::float_null_space(m), m.cols());
  }
}

/// Column span of M.
template <Field F>
Subspace<F> image(const Matrix<F>& m) {
  std::vector<Vector<F>> cols;
  cols.reserve(m.cols());
  for (std::size_t c = 0; c < m.cols(); ++c) cols.push_back(m.column(c));
  return canonicalize(cols, m.rows());
}

/// A·U = span{A u : u in basis(U)}.
template <Field F>
Subspace<F> apply(const Matrix<F>& a, const Subspace<F>& u) {
  require(a.cols() == u.ambient_dim(), ErrorKind::DimensionMismatch, "operator domain differs from subspace ambient");
  std::vector<Vector<F>> imgs;
  imgs.reserve(u.dim());
  for (const auto& b : u.basis()) imgs.push_back(a * b);
  return canonicalize(imgs, a.rows());
}

template <Field F>
bool contains(const Subspace<F>& u, const Subspace<F>& v) {
  require(u.ambient_dim() == v.ambient_dim(), ErrorKind::DimensionMismatch, "subspaces live in different spaces");
  if (v.dim() > u.dim()) return false;
  for (const auto& b : v.basis())
    if (!u.contains_vector(b)) return false;
  return true;
}

template <Field F>
Subspace<F> join(const Subspace<F>& u, const Subspace<F>& v) {
  require(u.ambient_dim() == v.ambient_dim(), ErrorKind::DimensionMismatch, "subspaces live in different spaces");
  std::vector<Vector<F>> all = u.basis();
  all.insert(all.end(), v.basis().begin(), v.basis().end());
  return canonicalize(all, u.ambient_dim());
}

/// U ∩ V through the kernel of [B_U | -B_V].
template <Field F>
Subspace<F> meet(const Subspace<F>& u, const Subspace<F>& v) {
  require(u.ambient_dim() == v.ambient_dim(), ErrorKind::DimensionMismatch, "subspaces live in different spaces");
  const std::size_t n = u.ambient_dim(), k = u.dim(), l = v.dim();
  if (k == 0 || l == 0) return Subspace<F>::zero(n);
  Matrix<F> stacked(n, k + l);
  for (std::size_t j = 0; j < k; ++j)
    for (std::size_t i = 0; i < n; ++i) stacked(i, j) = u.basis()[j][i];
  for (std::size_t j = 0; j < l; ++j)
    for (std::size_t i = 0; i < n; ++i) stacked(i, k + j) = -v.basis()[j][i];
  const Subspace<F> ker = kernel(stacked);
  std::vector<Vector<F>> vecs;
  for (const auto& w : ker.basis()) {
    Vector<F> x(n);
    for (std::size_t j = 0; j < k; ++j)
      if (!is_exact_zero(w[j])) x = axpy(w[j], u.basis()[j], std::move(x));
    vecs.push_back(std::move(x));
  }
  return canonicalize(vecs, n);
}

template <Field F>
struct MeetJoin {
  Subspace<F> meet;
  Subspace<F> join;
};

template <Field F>
MeetJoin<F> meet_join(const Subspace<F>& u, const Subspace<F>& v) {
  return {meet(u, v), join(u, v)};
}

/// Span of the listed coordinate axes.
template <Field F>
Subspace<F> coordinate_span(std::size_t n, std::span<const std::size_t> axes) {
  std::vector<Vector<F>> vecs;
  for (auto i : axes) {
    require(i < n, ErrorKind::BadIndex, "coordinate index out of range");
    vecs.push_back(unit_vector<F>(n, i));
  }
  return canonicalize(vecs, n);
}

template <Field F>
Subspace<F> coordinate_range(std::size_t n, std::size_t first, std::size_t count) {
  std::vector<std::size_t> axes(count);
  std::iota(axes.begin(), axes.end(), first);
  return coordinate_span<F>(n, axes);
}

/// Image of U under the coordinate projection onto [first, first+count).
template <Field F>
Subspace<F> project_coordinates(const Subspace<F>& u, std::size_t first, std::size_t count) {
  require(first + count <= u.ambient_dim(), ErrorKind::DimensionMismatch, "projection range exceeds ambient");
  std::vector<Vector<F>> vecs;
  for (const auto& b : u.basis()) vecs.emplace_back(b.begin() + first, b.begin() + first + count);
  return canonicalize(vecs, count);
}

/// Embeds a subspace of F^count into F^n at coordinate offset `first`.
template <Field F>
Subspace<F> embed_coordinates(const Subspace<F>& u, std::size_t n, std::size_t first) {
  require(first + u.ambient_dim() <= n, ErrorKind::DimensionMismatch, "embedding does not fit");
  std::vector<Vector<F>> vecs;
  for (const auto& b : u.basis()) {
    Vector<F> v(n);
    std::copy(b.begin(), b.end(), v.begin() + first);
    vecs.push_back(std::move(v));
  }
  return canonicalize(vecs, n);
}

// ---------------------------------------------------------------------------
// Functionals and rank-one operators
// ---------------------------------------------------------------------------

template <Field F>
struct LinearFunctional {
  std::size_t ambient_dim = 0;
  Vector<F> coefficients;

  LinearFunctional() = default;
  explicit LinearFunctional(Vector<F> coeffs) : ambient_dim(coeffs.size()), coefficients(std::move(coeffs)) {}

  /// <x, xi> (bilinear pairing, no conjugation).
  F operator()(const Vector<F>& x) const {
    require(x.size() == ambient_dim, ErrorKind::DimensionMismatch, "functional applied to wrong-size vector");
    F s{};
    for (std::size_t i = 0; i < ambient_dim; ++i)
      if (!is_exact_zero(coefficients[i]) && !is_exact_zero(x[i])) s += coefficients[i] * x[i];
    return s;
  }
};

/// y ⊗ ξ : x ↦ <x, ξ> y.
template <Field F>
Matrix<F> outer_product(const Vector<F>& y, const LinearFunctional<F>& xi) {
  Matrix<F> out(y.size(), xi.ambient_dim);
  for (std::size_t r = 0; r < y.size(); ++r)
    for (std::size_t c = 0; c < xi.ambient_dim; ++c)
      if (!is_exact_zero(y[r]) && !is_exact_zero(xi.coefficients[c])) out(r, c) = y[r] * xi.coefficients[c];
  return out;
}

}  // namespace lcomm
