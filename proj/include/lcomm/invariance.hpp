#pragma once

#include <cstddef>
#include <string>

#include "lcomm/intertwiner.hpp"

namespace lcomm {

template <Field F>
bool is_invariant(const Matrix<F>& a, const Subspace<F>& m) {
  require(a.rows() == m.ambient_dim() && a.cols() == m.ambient_dim(), ErrorKind::DimensionMismatch,
          "operator and subspace shapes differ");
  for (const auto& x : m.basis())
    if (!m.contains_vector(a * x)) return false;
  return true;
}

/// M is invariant under every basis matrix of the operator space.
template <Field F>
bool is_invariant_under(const OperatorSpace<F>& v, const Subspace<F>& m) {
  for (const auto& t : v.basis_matrices())
    if (!is_invariant(t, m)) return false;
  return true;
}

/// M is invariant under every operator of its own local commutant.
template <Field F>
bool is_ultrainvariant(const Matrix<F>& a, const Subspace<F>& m) {
  require_square(a, "A");
  return is_invariant_under(local_commutant(a, m), m);
}

struct AlgebraVerdict {
  bool is_scalar_operator = false;
  bool via_product_closure = false;
  bool via_cm_subset_girder = false;
  bool via_cm_equals_girder = false;
  bool via_girder_invariant = false;
  bool consistent = true;
  /// Final answer: C(A;M) is an algebra.
  bool is_algebra = false;
  /// M ∈ Lat(C(A;M)), checked directly.
  bool ultrainvariant = false;
  /// C(A;M) is an algebra and M equals its girder (meaningful for non-scalar A).
  bool ultrainvariant_via_girder = false;
};

struct AlgebraStatusOptions {
  /// Mutation hook for harness self-tests: condition (iv) is reported true without being evaluated.
  bool skip_condition_iv = false;
};

template <Field F>
struct AlgebraAnalysis {
  AlgebraVerdict verdict;
  OperatorSpace<F> local;
  Subspace<F> cm;
  Subspace<F> girder;
};

/// Evaluates all four equivalent algebra conditions on C(A;M) and cross-checks them.
template <Field F>
AlgebraAnalysis<F> analyze_algebra(const Matrix<F>& a, const Subspace<F>& m, AlgebraStatusOptions opts = {}) {
  require_square(a, "A");
  require(a.rows() == m.ambient_dim(), ErrorKind::DimensionMismatch, "subspace ambient differs from A");
  AlgebraAnalysis<F> out;
  AlgebraVerdict& v = out.verdict;
  out.local = local_commutant(a, m);
  out.cm = apply_to_subspace(out.local, m);
  out.girder = girder_of(a, a, out.local);
  v.is_scalar_operator = is_scalar_operator(a);
  v.via_product_closure = is_product_closed(out.local);
  v.via_cm_subset_girder = contains(out.girder, out.cm);
  v.via_cm_equals_girder = out.cm == out.girder;
  v.via_girder_invariant = opts.skip_condition_iv ? true : is_invariant_under(out.local, out.girder);
  v.ultrainvariant = is_invariant_under(out.local, m);
  if (v.is_scalar_operator) {
    v.is_algebra = true;
    v.consistent = true;
    v.ultrainvariant_via_girder = m == out.girder;
    return out;
  }
  v.consistent = v.via_product_closure == v.via_cm_subset_girder && v.via_cm_subset_girder == v.via_cm_equals_girder &&
                 v.via_cm_equals_girder == v.via_girder_invariant;
  v.is_algebra = v.via_product_closure;
  v.ultrainvariant_via_girder = v.is_algebra && m == out.girder;
  if (!v.consistent || v.ultrainvariant != v.ultrainvariant_via_girder)
    throw Error(ErrorKind::InternalInconsistency,
                "algebra conditions disagree: (i)=" + std::to_string(v.via_product_closure) +
                    " (ii)=" + std::to_string(v.via_cm_subset_girder) + " (iii)=" +
                    std::to_string(v.via_cm_equals_girder) + " (iv)=" + std::to_string(v.via_girder_invariant) +
                    " direct-ultra=" + std::to_string(v.ultrainvariant) +
                    " girder-ultra=" + std::to_string(v.ultrainvariant_via_girder));
  return out;
}

template <Field F>
AlgebraVerdict algebra_status(const Matrix<F>& a, const Subspace<F>& m, AlgebraStatusOptions opts = {}) {
  return analyze_algebra(a, m, opts).verdict;
}

/// C(A;N)·N with N = C(A;M)·M: ultrainvariant and contains M, but not always the least such.
/// For A = J_3, M = span(e2) it returns the whole space although ker A² is ultrainvariant.
template <Field F>
Subspace<F> ultrainvariant_closure(const Matrix<F>& a, const Subspace<F>& m) {
  require_square(a, "A");
  const Subspace<F> n = apply_to_subspace(local_commutant(a, m), m);
  Subspace<F> out = apply_to_subspace(local_commutant(a, n), n);
  if (!contains(out, m) || !is_ultrainvariant(a, out))
    throw Error(ErrorKind::InternalInconsistency, "two-step closure is not an ultrainvariant superspace of M");
  return out;
}

template <Field F>
struct ConjugatedProblem {
  Matrix<F> a;      // U A U^{-1}
  Subspace<F> m;    // U M
  Matrix<F> u_inv;
};

template <Field F>
ConjugatedProblem<F> conjugate_problem(const Matrix<F>& a, const Subspace<F>& m, const Matrix<F>& u) {
  require_square(a, "A");
  require(u.rows() == a.rows() && u.cols() == a.cols(), ErrorKind::DimensionMismatch, "U shape differs from A");
  auto inv = try_inverse(u);
  require(inv.has_value(), ErrorKind::SingularU, "similarity U is singular");
  return {u * a * *inv, apply(u, m), *std::move(inv)};
}

template <Field F>
struct ComponentReduction {
  Subspace<F> m1, m2;   // P1 M, P2 M
  Matrix<F> a1, a2;
  bool m_ultrainvariant = false;
  bool m1_ultrainvariant = false;
  bool m2_ultrainvariant = false;
  bool split_sum = false;  // M = P1 M ⊕ P2 M
};

/// Projections of M onto the two diagonal blocks of A = A1 ⊕ A2 (sizes d1, d2).
template <Field F>
ComponentReduction<F> reduce_components(const Matrix<F>& a, std::size_t d1, std::size_t d2, const Subspace<F>& m) {
  require_square(a, "A");
  require(d1 + d2 == a.rows(), ErrorKind::BadSplit, "declared block sizes do not add up to A");
  require(m.ambient_dim() == a.rows(), ErrorKind::DimensionMismatch, "subspace ambient differs from A");
  for (std::size_t i = 0; i < d1; ++i)
    for (std::size_t j = 0; j < d2; ++j)
      require(is_zero(a(i, d1 + j)) && is_zero(a(d1 + j, i)), ErrorKind::BadSplit,
              "A is not block diagonal for the declared split");
  ComponentReduction<F> r;
  r.a1 = submatrix(a, 0, 0, d1, d1);
  r.a2 = submatrix(a, d1, d1, d2, d2);
  r.m1 = project_coordinates(m, 0, d1);
  r.m2 = project_coordinates(m, d1, d2);
  r.m_ultrainvariant = is_ultrainvariant(a, m);
  r.m1_ultrainvariant = is_ultrainvariant(r.a1, r.m1);
  r.m2_ultrainvariant = is_ultrainvariant(r.a2, r.m2);
  r.split_sum = join(embed_coordinates(r.m1, a.rows(), 0), embed_coordinates(r.m2, a.rows(), d1)) == m;
  return r;
}

}  // namespace lcomm
