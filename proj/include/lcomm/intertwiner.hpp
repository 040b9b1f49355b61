#pragma once

#include <cstddef>
#include <vector>

#include "lcomm/operator_space.hpp"

namespace lcomm {

/// I(A,B;M) = {S (m x n) : S A x = B S x for x in M}.
///
/// For each basis vector x of M the m equations (S(Ax) - B(Sx))_r = 0 are
/// linear in vec(S); entry S(k,c) has coefficient δ_rk (Ax)_c - B(r,k) x_c.
template <Field F>
OperatorSpace<F> intertwiner_space(const Matrix<F>& a, const Matrix<F>& b, const Subspace<F>& m) {
  require_square(a, "A");
  require_square(b, "B");
  const std::size_t n = a.rows(), p = b.rows();
  require(m.ambient_dim() == n, ErrorKind::DimensionMismatch, "subspace ambient differs from A");
  std::vector<F> entries;
  entries.reserve(m.dim() * p * p * n);
  for (const auto& x : m.basis()) {
    const Vector<F> ax = a * x;
    for (std::size_t r = 0; r < p; ++r) {
      Vector<F> row(p * n);
      for (std::size_t c = 0; c < n; ++c) {
        if (!is_exact_zero(ax[c])) row[c * p + r] += ax[c];
        if (is_exact_zero(x[c])) continue;
        for (std::size_t k = 0; k < p; ++k)
          if (!is_exact_zero(b(r, k))) row[c * p + k] -= b(r, k) * x[c];
      }
      entries.insert(entries.end(), row.begin(), row.end());
    }
  }
  return {n, p, kernel(Matrix<F>(m.dim() * p, p * n, std::move(entries)))};
}

/// C(A;M) = I(A,A;M).
template <Field F>
OperatorSpace<F> local_commutant(const Matrix<F>& a, const Subspace<F>& m) {
  return intertwiner_space(a, a, m);
}

/// I(A,B) on the whole space.
template <Field F>
OperatorSpace<F> intertwiners(const Matrix<F>& a, const Matrix<F>& b) {
  require_square(a, "A");
  return intertwiner_space(a, b, Subspace<F>::full(a.rows()));
}

/// (A)'.
template <Field F>
OperatorSpace<F> commutant(const Matrix<F>& a) {
  return intertwiners(a, a);
}

/// Alg(M) = {T : T M ⊆ M}. The residual of T x_i on the non-pivot coordinates
/// of M's basis (the projection along M onto that coordinate complement) must vanish.
template <Field F>
OperatorSpace<F> alg_of(const Subspace<F>& m) {
  const std::size_t n = m.ambient_dim();
  std::vector<bool> is_pivot(n, false);
  for (auto p : m.pivots()) is_pivot[p] = true;
  std::vector<F> entries;
  std::size_t nrows = 0;
  for (const auto& x : m.basis())
    for (std::size_t q = 0; q < n; ++q) {
      if (is_pivot[q]) continue;
      Vector<F> row(n * n);
      for (std::size_t c = 0; c < n; ++c) {
        if (is_exact_zero(x[c])) continue;
        row[c * n + q] += x[c];
        for (std::size_t j = 0; j < m.dim(); ++j) {
          const F& bq = m.basis()[j][q];
          if (!is_exact_zero(bq)) row[c * n + m.pivots()[j]] -= bq * x[c];
        }
      }
      entries.insert(entries.end(), row.begin(), row.end());
      ++nrows;
    }
  return {n, n, kernel(Matrix<F>(nrows, n * n, std::move(entries)))};
}

/// M_{A,B} = ∩_i ker(S_i A - B S_i) over a basis {S_i} of I(A,B;M).
template <Field F>
Subspace<F> girder_of(const Matrix<F>& a, const Matrix<F>& b, const OperatorSpace<F>& space) {
  const std::size_t n = a.rows(), p = b.rows();
  std::vector<F> entries;
  entries.reserve(space.dim() * p * n);
  for (const auto& s : space.basis_matrices()) {
    const Matrix<F> d = s * a - b * s;
    entries.insert(entries.end(), d.entries().begin(), d.entries().end());
  }
  return kernel(Matrix<F>(space.dim() * p, n, std::move(entries)));
}

template <Field F>
Subspace<F> girder(const Matrix<F>& a, const Matrix<F>& b, const Subspace<F>& m) {
  return girder_of(a, b, intertwiner_space(a, b, m));
}

/// C(A; C(A;M)·M): the largest algebra inside C(A;M).
template <Field F>
OperatorSpace<F> largest_inner_algebra(const Matrix<F>& a, const Subspace<F>& m) {
  return local_commutant(a, apply_to_subspace(local_commutant(a, m), m));
}

/// C(B; I(A,B;M)·M): the largest algebra acting on I(A,B;M) from the left.
template <Field F>
OperatorSpace<F> left_module_algebra(const Matrix<F>& a, const Matrix<F>& b, const Subspace<F>& m) {
  return local_commutant(b, apply_to_subspace(intertwiner_space(a, b, m), m));
}

/// C(A;G) ∩ Alg(G) with G the girder of C(A;M): the largest algebra acting on C(A;M) from the right.
template <Field F>
OperatorSpace<F> right_module_algebra(const Matrix<F>& a, const Subspace<F>& m) {
  const Subspace<F> g = girder(a, a, m);
  return meet(local_commutant(a, g), alg_of(g));
}

// ---------------------------------------------------------------------------
// Instances with I(A,B;M) = I(A,B)
// ---------------------------------------------------------------------------

/// A = [[A11, A12], [0, λ I_d]] on F^k ⊕ F^d, B = λ I_p, M = F^k ⊕ 0.
template <Field F>
struct FullIntertwinerInstance {
  Matrix<F> a;
  Matrix<F> b;
  Subspace<F> m;
  F lambda;
};

/// Builds the instance; requires im(A12) ⊆ im(λI - A11).
template <Field F>
FullIntertwinerInstance<F> build_full_intertwiner_instance(const F& lambda, const Matrix<F>& a11, const Matrix<F>& a12,
                                                          std::size_t p) {
  require_square(a11, "A11");
  const std::size_t k = a11.rows(), d = a12.cols();
  require(a12.rows() == k, ErrorKind::DimensionMismatch, "A12 rows differ from A11");
  const Matrix<F> gap = shift(a11, lambda);  // A11 - λI, same image as λI - A11
  require(contains(image(gap), image(a12)), ErrorKind::PreconditionViolated, "im(A12) not inside im(λI - A11)");
  Matrix<F> a(k + d, k + d);
  set_block(a, 0, 0, a11);
  set_block(a, 0, k, a12);
  set_block(a, k, k, Matrix<F>::scalar(d, lambda));
  return {std::move(a), Matrix<F>::scalar(p, lambda), coordinate_range<F>(k + d, 0, k), lambda};
}

/// Checks I(A,B;M) = I(A,B) and that both equal {[S1 S2] : im(λI - A11) ⊆ ker S1}.
template <Field F>
bool validate_full_intertwiner_instance(const FullIntertwinerInstance<F>& inst) {
  const std::size_t n = inst.a.rows(), p = inst.b.rows(), k = inst.m.dim();
  const OperatorSpace<F> local = intertwiner_space(inst.a, inst.b, inst.m);
  const OperatorSpace<F> global = intertwiners(inst.a, inst.b);
  if (!(local == global)) return false;
  // S1 (p x k) annihilates the image of A11 - λI: S1·g_c = 0 for each column g_c.
  const Matrix<F> gap = shift(submatrix(inst.a, 0, 0, k, k), inst.lambda);
  std::vector<F> entries;
  for (std::size_t c = 0; c < k; ++c)
    for (std::size_t r = 0; r < p; ++r) {
      Vector<F> row(p * n);
      for (std::size_t j = 0; j < k; ++j)
        if (!is_exact_zero(gap(j, c))) row[j * p + r] = gap(j, c);
      entries.insert(entries.end(), row.begin(), row.end());
    }
  const OperatorSpace<F> described(n, p, kernel(Matrix<F>(k * p, p * n, std::move(entries))));
  return described == local;
}

}  // namespace lcomm
