#pragma once

#include <cstddef>
#include <vector>

#include "lcomm/subspace.hpp"

namespace lcomm {

/// Column-major: entry (r, c) of an m x n matrix sits at index c*m + r.
template <Field F>
Vector<F> vec(const Matrix<F>& s) {
  const std::size_t m = s.rows(), n = s.cols();
  Vector<F> v(m * n);
  for (std::size_t c = 0; c < n; ++c)
    for (std::size_t r = 0; r < m; ++r) v[c * m + r] = s(r, c);
  return v;
}

template <Field F>
Matrix<F> unvec(const Vector<F>& v, std::size_t rows, std::size_t cols) {
  require(v.size() == rows * cols, ErrorKind::DimensionMismatch, "vector length is not rows*cols");
  Matrix<F> s(rows, cols);
  for (std::size_t c = 0; c < cols; ++c)
    for (std::size_t r = 0; r < rows; ++r) s(r, c) = v[c * rows + r];
  return s;
}

/// A linear subspace of the cod x dom matrices.
template <Field F>
class OperatorSpace {
 public:
  OperatorSpace() = default;
  OperatorSpace(std::size_t dom, std::size_t cod, Subspace<F> space) : dom_(dom), cod_(cod), space_(std::move(space)) {
    require(space_.ambient_dim() == dom * cod, ErrorKind::DimensionMismatch, "operator space ambient is not cod*dom");
    basis_.reserve(space_.dim());
    for (const auto& b : space_.basis()) basis_.push_back(unvec(b, cod_, dom_));
  }

  static OperatorSpace full(std::size_t dom, std::size_t cod) { return {dom, cod, Subspace<F>::full(dom * cod)}; }
  static OperatorSpace zero(std::size_t dom, std::size_t cod) { return {dom, cod, Subspace<F>::zero(dom * cod)}; }

  static OperatorSpace span_of(std::size_t dom, std::size_t cod, const std::vector<Matrix<F>>& mats) {
    std::vector<Vector<F>> vs;
    vs.reserve(mats.size());
    for (const auto& s : mats) {
      require(s.rows() == cod && s.cols() == dom, ErrorKind::DimensionMismatch, "matrix shape differs from space");
      vs.push_back(vec(s));
    }
    return {dom, cod, canonicalize(vs, dom * cod)};
  }

  std::size_t dom_dim() const { return dom_; }
  std::size_t cod_dim() const { return cod_; }
  std::size_t dim() const { return space_.dim(); }
  const Subspace<F>& space() const { return space_; }
  const std::vector<Matrix<F>>& basis_matrices() const { return basis_; }

  friend bool operator==(const OperatorSpace& a, const OperatorSpace& b) {
    return a.dom_ == b.dom_ && a.cod_ == b.cod_ && a.space_ == b.space_;
  }

 private:
  std::size_t dom_ = 0;
  std::size_t cod_ = 0;
  Subspace<F> space_;
  std::vector<Matrix<F>> basis_;
};

template <Field F>
bool member(const Matrix<F>& s, const OperatorSpace<F>& v) {
  require(s.rows() == v.cod_dim() && s.cols() == v.dom_dim(), ErrorKind::DimensionMismatch,
          "matrix shape differs from operator space");
  return v.space().contains_vector(vec(s));
}

template <Field F>
bool contains(const OperatorSpace<F>& big, const OperatorSpace<F>& small) {
  require(big.dom_dim() == small.dom_dim() && big.cod_dim() == small.cod_dim(), ErrorKind::DimensionMismatch,
          "operator spaces of different shapes");
  return contains(big.space(), small.space());
}

template <Field F>
OperatorSpace<F> meet(const OperatorSpace<F>& a, const OperatorSpace<F>& b) {
  require(a.dom_dim() == b.dom_dim() && a.cod_dim() == b.cod_dim(), ErrorKind::DimensionMismatch,
          "operator spaces of different shapes");
  return {a.dom_dim(), a.cod_dim(), meet(a.space(), b.space())};
}

/// V·M = span{B_i x_j}.
template <Field F>
Subspace<F> apply_to_subspace(const OperatorSpace<F>& v, const Subspace<F>& m) {
  require(v.dom_dim() == m.ambient_dim(), ErrorKind::DimensionMismatch, "operator domain differs from subspace ambient");
  if constexpr (is_exact_v<F>) {
    detail::RowEchelon<F> ech(v.cod_dim());
    for (const auto& b : v.basis_matrices())
      for (const auto& x : m.basis()) {
        if (ech.full_rank()) return Subspace<F>::full(v.cod_dim());
        ech.insert(b * x);
      }
    auto [rows, piv] = ech.sorted();
    return Subspace<F>::from_rcef(v.cod_dim(), std::move(rows), std::move(piv));
  } else {
    std::vector<Vector<F>> imgs;
    for (const auto& b : v.basis_matrices())
      for (const auto& x : m.basis()) imgs.push_back(b * x);
    return canonicalize(imgs, v.cod_dim());
  }
}

/// Brute-force algebra test: B_i B_j ∈ V for every ordered pair of basis matrices.
template <Field F>
bool is_product_closed(const OperatorSpace<F>& v) {
  require(v.dom_dim() == v.cod_dim(), ErrorKind::NotSquareAmbient, "product closure needs square operators");
  const auto& bs = v.basis_matrices();
  for (const auto& bi : bs)
    for (const auto& bj : bs)
      if (!member(bi * bj, v)) return false;
  return true;
}

enum class Side { left, right };

/// {T : T·B_i ∈ V for all i} (left) or {T : B_i·T ∈ V for all i} (right).
///
/// Membership of W in V is linear in vec(W): for every coordinate q that is not
/// a pivot of V's RCEF basis, vec(W)[q] - Σ_j vec(W)[p_j]·b_j[q] = 0. Each such
/// functional, composed with T ↦ T·B_i (or B_i·T), contributes one row of a
/// system whose kernel is the multiplier space.
template <Field F>
OperatorSpace<F> multiplier_space(const OperatorSpace<F>& v, Side side) {
  const std::size_t n = v.dom_dim(), m = v.cod_dim();
  require(n == m, ErrorKind::NotSquareAmbient, "multiplier space needs square operators");
  const std::size_t t = n;
  const Subspace<F>& sp = v.space();
  std::vector<bool> is_pivot(m * n, false);
  for (auto p : sp.pivots()) is_pivot[p] = true;

  // Each output coordinate q = c*m + r of W = T·B (or B·T) is a linear form in vec(T).
  // Coefficient of vec(T)[k*t + i] (entry T(i,k)):
  //   left  W(r,c) = Σ_k T(r,k) B(k,c)  -> i == r, coef B(k,c)
  //   right W(r,c) = Σ_k B(r,k) T(k,c)  -> col == c, coef B(r,i)
  auto form = [&](const Matrix<F>& b, std::size_t q) {
    const std::size_t r = q % m, c = q / m;
    Vector<F> row(t * t);
    if (side == Side::left) {
      for (std::size_t k = 0; k < t; ++k)
        if (!is_exact_zero(b(k, c))) row[k * t + r] = b(k, c);
    } else {
      for (std::size_t i = 0; i < t; ++i)
        if (!is_exact_zero(b(r, i))) row[c * t + i] = b(r, i);
    }
    return row;
  };

  std::vector<F> entries;
  std::size_t nrows = 0;
  for (const auto& b : v.basis_matrices()) {
    std::vector<Vector<F>> forms(m * n);
    for (std::size_t q = 0; q < m * n; ++q) forms[q] = form(b, q);
    for (std::size_t q = 0; q < m * n; ++q) {
      if (is_pivot[q]) continue;
      Vector<F> row = forms[q];
      for (std::size_t j = 0; j < sp.dim(); ++j) {
        const F& bq = sp.basis()[j][q];
        if (!is_exact_zero(bq)) row = axpy(-bq, forms[sp.pivots()[j]], std::move(row));
      }
      entries.insert(entries.end(), row.begin(), row.end());
      ++nrows;
    }
  }
  // V = {0} has no basis matrices and V = full has no free coordinates; both leave T unconstrained.
  return {t, t, kernel(Matrix<F>(nrows, t * t, std::move(entries)))};
}

}  // namespace lcomm
