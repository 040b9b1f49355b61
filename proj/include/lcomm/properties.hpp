#pragma once

// Registry of machine-checkable laws. The fuzz runner evaluates every entry on
// every generated instance; unit tests call individual entries by name.

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lcomm/fixtures.hpp"
#include "lcomm/io.hpp"

namespace lcomm::props {

using Q = GaussRational;

struct Case {
  Matrix<Q> a;
  Subspace<Q> m;
  std::uint64_t aux_seed = 0;
  AlgebraStatusOptions algebra_options{};
};

enum class Status { pass, skip, fail };

struct Outcome {
  Status status = Status::pass;
  std::string detail;
};

inline Outcome pass() { return {}; }
inline Outcome skip(std::string why = {}) { return {Status::skip, std::move(why)}; }
inline Outcome fail(std::string why) { return {Status::fail, std::move(why)}; }

struct Law {
  std::string_view module;
  std::string_view name;
  std::function<Outcome(const Case&, SplitMix64&)> check;
};

namespace detail {

inline std::uint64_t name_hash(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) h = (h ^ c) * 0x100000001b3ULL;
  return h;
}

/// Random subspace of M: span of random combinations of its basis.
inline Subspace<Q> random_subspace_of(const Subspace<Q>& m, SplitMix64& rng) {
  std::vector<Vector<Q>> vs;
  const auto k = static_cast<std::size_t>(rng.uniform(0, static_cast<long>(m.dim())));
  for (std::size_t i = 0; i < k; ++i) {
    Vector<Q> v(m.ambient_dim());
    for (const auto& b : m.basis()) v = axpy(random_scalar<Q>(rng), b, std::move(v));
    vs.push_back(std::move(v));
  }
  return canonicalize(vs, m.ambient_dim());
}

inline Matrix<Q> small_square(SplitMix64& rng, std::size_t lo = 1, std::size_t hi = 3) {
  const auto p = static_cast<std::size_t>(rng.uniform(static_cast<long>(lo), static_cast<long>(hi)));
  return random_matrix<Q>(p, p, rng);
}

inline bool coprime_min_polys(const Matrix<Q>& a, const Matrix<Q>& b) {
  return poly_degree(poly_gcd(minimal_polynomial(a), minimal_polynomial(b))) == 0;
}

/// Exact spectrum when every root of q_A lies in Q(i) (within the search bound).
inline std::optional<SpectrumSpec<Q>> try_spectrum(const Matrix<Q>& a) {
  Poly<Q> rest;
  auto spec = find_gaussian_rational_roots(minimal_polynomial(a), &rest);
  if (poly_degree(rest) > 0) return std::nullopt;
  return spec;
}

/// Projection onto M along the span of the coordinates that are not pivots of M.
inline Matrix<Q> projection_along_complement(const Subspace<Q>& m) {
  const std::size_t n = m.ambient_dim();
  Matrix<Q> p(n, n);
  for (std::size_t j = 0; j < m.dim(); ++j)
    for (std::size_t i = 0; i < n; ++i) p(i, m.pivots()[j]) = m.basis()[j][i];
  return p;
}

inline std::optional<std::size_t> nilpotency(const Matrix<Q>& a) {
  try {
    return nilpotent_order(a);
  } catch (const Error&) {
    return std::nullopt;
  }
}

inline bool is_diagonal(const Matrix<Q>& a) {
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c)
      if (r != c && !is_zero(a(r, c))) return false;
  return true;
}

/// Weighted backward shift: nonzero superdiagonal, zero elsewhere.
inline bool is_backward_shift(const Matrix<Q>& a) {
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c)
      if ((c == r + 1) == is_zero(a(r, c))) return false;
  return true;
}

}  // namespace detail

inline const std::vector<Law>& registry() {
  using namespace lcomm;
  static const std::vector<Law> laws = {
      // ---------------- linear-core
      {"linear-core", "canonicalize-order-and-scale-independent",
       [](const Case& c, SplitMix64& rng) {
         std::vector<Vector<Q>> vs = c.m.basis();
         for (auto& v : vs) {
           Q s;
           do s = random_scalar<Q>(rng);
           while (is_zero(s));
           for (auto& x : v) x = s * x;
         }
         for (std::size_t i = vs.size(); i > 1; --i) std::swap(vs[i - 1], vs[rng.next() % i]);
         if (vs.size() >= 2) vs.push_back(axpy(Q(1), vs[0], vs[1]));
         const auto again = canonicalize(vs, c.m.ambient_dim());
         if (!(again == c.m)) return fail("permuted/scaled basis gives a different RCEF");
         if (!(canonicalize(c.m.basis(), c.m.ambient_dim()) == c.m)) return fail("canonicalize not idempotent");
         return pass();
       }},
      {"linear-core", "grassmann-identity",
       [](const Case& c, SplitMix64& rng) {
         const auto v = random_subspace<Q>(c.m.ambient_dim(),
                                           static_cast<std::size_t>(rng.uniform(0, static_cast<long>(c.m.ambient_dim()))), rng);
         const auto mj = meet_join(c.m, v);
         if (c.m.dim() + v.dim() != mj.meet.dim() + mj.join.dim()) return fail("dim U + dim V != dim meet + dim join");
         if (!contains(c.m, mj.meet) || !contains(v, mj.meet) || !contains(mj.join, c.m) || !contains(mj.join, v))
           return fail("meet/join not bounds");
         return pass();
       }},
      {"linear-core", "rank-nullity",
       [](const Case& c, SplitMix64&) {
         if (rank(c.a) + kernel(c.a).dim() != c.a.cols()) return fail("rank + nullity != cols");
         if (image(c.a).dim() != rank(c.a)) return fail("dim image != rank");
         return pass();
       }},
      {"linear-core", "mutual-containment-is-equality",
       [](const Case& c, SplitMix64& rng) {
         const auto v = join(detail::random_subspace_of(c.m, rng), c.m);
         if (!(contains(c.m, v) && contains(v, c.m)) || !(v == c.m)) return fail("containment/equality mismatch");
         const auto w = join(c.m, random_subspace<Q>(c.m.ambient_dim(), 1, rng));
         if ((contains(c.m, w) && contains(w, c.m)) != (w == c.m)) return fail("containment/equality mismatch");
         return pass();
       }},
      // ---------------- operator-space
      {"operator-space", "basis-matrices-are-members",
       [](const Case& c, SplitMix64&) {
         const auto cm = local_commutant(c.a, c.m);
         for (const auto& b : cm.basis_matrices())
           if (!member(b, cm)) return fail("stored basis matrix not a member");
         for (const auto& b : cm.basis_matrices())
           for (const auto& x : c.m.basis())
             if (!(b * (c.a * x) == c.a * (b * x))) return fail("basis matrix does not commute with A on M");
         return pass();
       }},
      {"operator-space", "apply-distributes-over-join",
       [](const Case& c, SplitMix64& rng) {
         const auto cm = local_commutant(c.a, c.m);
         const auto m1 = detail::random_subspace_of(c.m, rng), m2 = detail::random_subspace_of(c.m, rng);
         if (!(apply_to_subspace(cm, join(m1, m2)) == join(apply_to_subspace(cm, m1), apply_to_subspace(cm, m2))))
           return fail("V(M1 v M2) != VM1 v VM2");
         return pass();
       }},
      {"operator-space", "left-multiplier-is-algebra",
       [](const Case& c, SplitMix64&) {
         const auto l = multiplier_space(local_commutant(c.a, c.m), Side::left);
         if (!is_product_closed(l)) return fail("left multiplier space not product-closed");
         return pass();
       }},
      // ---------------- intertwiner-solver
      {"intertwiner-solver", "anti-monotone-in-subspace",
       [](const Case& c, SplitMix64& rng) {
         const auto b = detail::small_square(rng);
         const auto m2 = detail::random_subspace_of(c.m, rng);
         if (!contains(intertwiner_space(c.a, b, m2), intertwiner_space(c.a, b, c.m)))
           return fail("I(A,B;M) not inside I(A,B;M2) for M2 in M");
         return pass();
       }},
      {"intertwiner-solver", "join-law",
       [](const Case& c, SplitMix64& rng) {
         const auto b = detail::small_square(rng);
         const auto m2 = random_subspace_for(c.a, rng);
         if (!(intertwiner_space(c.a, b, join(c.m, m2)) ==
               meet(intertwiner_space(c.a, b, c.m), intertwiner_space(c.a, b, m2))))
           return fail("I(A,B;M1 v M2) != I(A,B;M1) ^ I(A,B;M2)");
         return pass();
       }},
      {"intertwiner-solver", "similarity-transport",
       [](const Case& c, SplitMix64& rng) {
         const auto b = detail::small_square(rng, 1, 2);
         const auto u = random_invertible<Q>(c.a.rows(), rng);
         const auto v = random_invertible<Q>(b.rows(), rng);
         const auto ui = inverse(u), vi = inverse(v);
         const auto moved = intertwiner_space(u * c.a * ui, v * b * vi, apply(u, c.m));
         std::vector<Matrix<Q>> back;
         for (const auto& s : moved.basis_matrices()) back.push_back(vi * s * u);
         if (!(OperatorSpace<Q>::span_of(c.a.rows(), b.rows(), back) == intertwiner_space(c.a, b, c.m)))
           return fail("V^-1 I(UAU^-1, VBV^-1; UM) U != I(A,B;M)");
         return pass();
       }},
      {"intertwiner-solver", "block-criterion",
       [](const Case& c, SplitMix64& rng) {
         // M = leading k coordinates; S = [S1 S2] intertwines on M iff B S1 = S1 A11 + S2 A21.
         const std::size_t n = c.a.rows(), k = static_cast<std::size_t>(rng.uniform(0, static_cast<long>(n)));
         const auto b = detail::small_square(rng, 1, 2);
         const std::size_t p = b.rows();
         const auto a11 = submatrix(c.a, 0, 0, k, k), a21 = submatrix(c.a, k, 0, n - k, k);
         std::vector<Q> entries;
         for (std::size_t col = 0; col < k; ++col)
           for (std::size_t r = 0; r < p; ++r) {
             Vector<Q> row(p * n);
             // (B S1)(r,col) = Σ_t B(r,t) S(t,col)
             for (std::size_t t = 0; t < p; ++t) row[col * p + t] += b(r, t);
             // -(S1 A11)(r,col) = -Σ_j S(r,j) A11(j,col);  -(S2 A21)(r,col) = -Σ_j S(r,k+j) A21(j,col)
             for (std::size_t j = 0; j < k; ++j) row[j * p + r] -= a11(j, col);
             for (std::size_t j = 0; j < n - k; ++j) row[(k + j) * p + r] -= a21(j, col);
             entries.insert(entries.end(), row.begin(), row.end());
           }
         const OperatorSpace<Q> blocks(n, p, kernel(Matrix<Q>(k * p, p * n, std::move(entries))));
         if (!(blocks == intertwiner_space(c.a, b, coordinate_range<Q>(n, 0, k))))
           return fail("block equation space differs from I(A,B;M)");
         return pass();
       }},
      {"intertwiner-solver", "girder-laws",
       [](const Case& c, SplitMix64& rng) {
         const auto b = detail::small_square(rng, 1, 3);
         const auto g = girder(c.a, b, c.m);
         if (!contains(g, c.m)) return fail("girder does not contain M");
         if (!(intertwiner_space(c.a, b, g) == intertwiner_space(c.a, b, c.m))) return fail("I(A,B;girder) != I(A,B;M)");
         if (!(girder(c.a, b, g) == g)) return fail("girder not idempotent");
         const auto k = join(c.m, random_subspace_for(c.a, rng));
         if (!contains(girder(c.a, b, k), g)) return fail("girder not monotone");
         return pass();
       }},
      {"intertwiner-solver", "translation-invariance",
       [](const Case& c, SplitMix64& rng) {
         const auto b = detail::small_square(rng, 1, 3);
         const Q lambda = random_scalar<Q>(rng);
         if (!(intertwiner_space(shift(c.a, lambda), shift(b, lambda), c.m) == intertwiner_space(c.a, b, c.m)))
           return fail("I(A-λ, B-λ; M) != I(A,B;M)");
         return pass();
       }},
      {"intertwiner-solver", "proper-inclusion",
       [](const Case& c, SplitMix64&) {
         if (is_scalar_operator(c.a) || !is_invariant(c.a, c.m) || c.m.is_full()) return skip();
         const auto comm = commutant(c.a), loc = local_commutant(c.a, c.m);
         if (!contains(loc, comm) || comm.dim() >= loc.dim()) return fail("(A)' is not a proper subspace of C(A;M)");
         return pass();
       }},
      {"intertwiner-solver", "shift-composition",
       [](const Case& c, SplitMix64& rng) {
         const auto b = detail::small_square(rng, 1, 2);
         const auto loc = local_commutant(c.a, c.m);
         const auto target = intertwiner_space(c.a, b, c.m);
         for (std::size_t t = 0; t < std::min<std::size_t>(loc.dim(), 3); ++t) {
           const auto& tm = loc.basis_matrices()[rng.next() % loc.dim()];
           const auto s_space = intertwiner_space(c.a, b, apply(tm, c.m));
           for (const auto& s : s_space.basis_matrices())
             if (!member(s * tm, target)) return fail("S T not in I(A,B;M)");
         }
         return pass();
       }},
      {"intertwiner-solver", "projection-criterion",
       [](const Case& c, SplitMix64&) {
         const auto p = detail::projection_along_complement(c.m);
         if (!(p * p == p) || !(image(p) == c.m)) return fail("stored complement projection malformed");
         if (member(p, local_commutant(c.a, c.m)) != is_invariant(c.a, c.m))
           return fail("projection in C(A;M) disagrees with invariance of M");
         return pass();
       }},
      {"intertwiner-solver", "disjoint-spectra-rosenblum",
       [](const Case& c, SplitMix64& rng) {
         const auto b = detail::small_square(rng, 1, 3);
         const bool coprime = detail::coprime_min_polys(c.a, b);
         if (coprime != intertwiners(c.a, b).space().is_zero())
           return fail(coprime ? "disjoint spectra but I(A,B) != {0}" : "shared eigenvalue but I(A,B) = {0}");
         return pass();
       }},
      {"intertwiner-solver", "module-algebras-match-multipliers",
       [](const Case& c, SplitMix64&) {
         const auto loc = local_commutant(c.a, c.m);
         const auto left = left_module_algebra(c.a, c.a, c.m), right = right_module_algebra(c.a, c.m);
         if (!(left == multiplier_space(loc, Side::left))) return fail("left module algebra != left multiplier oracle");
         if (!(right == multiplier_space(loc, Side::right))) return fail("right module algebra != right multiplier oracle");
         if (!is_product_closed(left) || !is_product_closed(right)) return fail("module algebra not product-closed");
         if (!(largest_inner_algebra(c.a, c.m) == left)) return fail("largest inner algebra != left module algebra");
         return pass();
       }},
      // ---------------- invariance-analysis
      {"invariance-analysis", "four-way-algebra-criterion",
       [](const Case& c, SplitMix64&) {
         try {
           const auto v = algebra_status(c.a, c.m, c.algebra_options);
           if (v.is_algebra != is_product_closed(local_commutant(c.a, c.m)))
             return fail("verdict disagrees with brute-force product closure");
           if (v.ultrainvariant != is_ultrainvariant(c.a, c.m)) return fail("ultrainvariance verdict mismatch");
         } catch (const Error& e) {
           return fail(e.what());
         }
         return pass();
       }},
      {"invariance-analysis", "closure-laws",
       [](const Case& c, SplitMix64&) {
         const auto cl = ultrainvariant_closure(c.a, c.m);
         if (!contains(cl, c.m)) return fail("closure does not contain M");
         if (!is_ultrainvariant(c.a, cl)) return fail("closure not ultrainvariant");
         if (!(ultrainvariant_closure(c.a, cl) == cl)) return fail("closure not idempotent");
         if (is_ultrainvariant(c.a, c.m) && !(cl == c.m)) return fail("ultrainvariant M is not its own closure");
         return pass();
       }},
      {"invariance-analysis", "sublattice",
       [](const Case& c, SplitMix64& rng) {
         const auto u = ultrainvariant_closure(c.a, c.m);
         const auto v = ultrainvariant_closure(c.a, random_subspace_for(c.a, rng));
         const auto mj = meet_join(u, v);
         if (!is_ultrainvariant(c.a, mj.meet) || !is_ultrainvariant(c.a, mj.join))
           return fail("meet or join of ultrainvariant subspaces is not ultrainvariant");
         // Bounded by V only once the first step lands in V; the closure need not be the least upper bound.
         const auto w = meet(c.m, v);
         if (contains(v, apply_to_subspace(local_commutant(c.a, w), w)) && !contains(v, ultrainvariant_closure(c.a, w)))
           return fail("closure of W escapes an ultrainvariant V containing C(A;W)W");
         return pass();
       }},
      {"invariance-analysis", "similarity-preserves-verdicts",
       [](const Case& c, SplitMix64& rng) {
         const auto u = random_invertible<Q>(c.a.rows(), rng);
         const auto t = conjugate_problem(c.a, c.m, u);
         if (is_ultrainvariant(c.a, c.m) != is_ultrainvariant(t.a, t.m)) return fail("ultrainvariance not transported");
         if (algebra_status(c.a, c.m).is_algebra != algebra_status(t.a, t.m).is_algebra)
           return fail("algebra verdict not transported");
         if (!(apply(u, ultrainvariant_closure(c.a, c.m)) == ultrainvariant_closure(t.a, t.m)))
           return fail("closure does not commute with similarity");
         return pass();
       }},
      {"invariance-analysis", "nilpotent-closure-is-kernel-power",
       [](const Case& c, SplitMix64&) {
         const auto n = detail::nilpotency(c.a);
         if (!n) return skip();
         // Smallest kernel power above C(A;M)M, not above M: J_3 with M = span(e2) separates the two.
         const auto first = apply_to_subspace(local_commutant(c.a, c.m), c.m);
         const auto cl = ultrainvariant_closure(c.a, c.m);
         for (std::size_t j = 0; j <= *n; ++j) {
           const auto k = kernel(power(c.a, j));
           if (contains(k, first)) return cl == k ? pass() : fail("closure is not the smallest ker(A^j) above C(A;M)M");
         }
         return fail("no kernel power contains C(A;M)M");
       }},
      {"invariance-analysis", "direct-sum-assembly",
       [](const Case& c, SplitMix64& rng) {
         if (c.a.rows() > 4) return skip();
         const auto b = detail::small_square(rng, 1, 2);
         if (!detail::coprime_min_polys(c.a, b)) return skip();
         const auto a2 = block_diag(c.a, b);
         const std::size_t n = c.a.rows(), total = n + b.rows();
         const auto u = ultrainvariant_closure(c.a, c.m), v = ultrainvariant_closure(b, random_subspace_for(b, rng));
         const auto m = join(embed_coordinates(u, total, 0), embed_coordinates(v, total, n));
         if (!is_ultrainvariant(a2, m)) return fail("direct sum of blockwise ultrainvariant subspaces is not ultrainvariant");
         return pass();
       }},
      {"invariance-analysis", "reducing-pair-criterion",
       [](const Case& c, SplitMix64& rng) {
         if (c.a.rows() > 4) return skip();
         const auto b = detail::small_square(rng, 1, 2);
         const auto a2 = block_diag(c.a, b);
         const bool ultra = is_ultrainvariant(a2, coordinate_range<Q>(a2.rows(), 0, c.a.rows()));
         if (ultra != intertwiners(c.a, b).space().is_zero()) return fail("reducing-pair criterion violated");
         return pass();
       }},
      {"invariance-analysis", "components-of-ultrainvariant",
       [](const Case& c, SplitMix64& rng) {
         if (c.a.rows() > 4) return skip();
         const auto b = detail::small_square(rng, 1, 2);
         const auto a2 = block_diag(c.a, b);
         const auto m = ultrainvariant_closure(a2, embed_coordinates(c.m, a2.rows(), 0));
         const auto r = reduce_components(a2, c.a.rows(), b.rows(), m);
         if (!r.m_ultrainvariant) return fail("closure not ultrainvariant");
         if (!r.m1_ultrainvariant || !r.m2_ultrainvariant) return fail("component of ultrainvariant M not ultrainvariant");
         return pass();
       }},
      // ---------------- spectral-lattice
      {"spectral-lattice", "ascent-descent-kernel-image",
       [](const Case& c, SplitMix64&) {
         const auto spec = detail::try_spectrum(c.a);
         if (!spec) return skip("spectrum outside Q(i)");
         for (const auto& r : spec->roots) {
           const auto ad = ascent_descent(c.a, r.value);
           if (ad.ascent != ad.descent) return fail("ascent != descent");
           if (ad.ascent != r.multiplicity) return fail("ascent differs from root exponent");
           const auto bn = power(shift(c.a, r.value), ad.ascent);
           if (!is_ultrainvariant(c.a, kernel(bn)) || !is_ultrainvariant(c.a, image(bn)))
             return fail("ker or im of (A-λ)^n not ultrainvariant");
         }
         return pass();
       }},
      {"spectral-lattice", "polynomial-kernels",
       [](const Case& c, SplitMix64& rng) {
         Poly<Q> p;
         for (long i = 0, d = rng.uniform(1, 3); i <= d; ++i) p.push_back(random_scalar<Q>(rng));
         if (!is_ultrainvariant(c.a, kernel(eval_poly(p, c.a)))) return fail("ker p(A) not ultrainvariant");
         const auto ev = detail::try_spectrum(c.a);
         if (ev && !ev->roots.empty() && !is_ultrainvariant(c.a, kernel(shift(c.a, ev->roots[0].value))))
           return fail("eigenspace not ultrainvariant");
         return pass();
       }},
      {"spectral-lattice", "krylov-independence",
       [](const Case& c, SplitMix64& rng) {
         if (!detail::nilpotency(c.a)) return skip();
         std::vector<Vector<Q>> vs{random_vector<Q>(c.a.rows(), rng)};
         while (!is_zero_vector(vs.back())) vs.push_back(c.a * vs.back());
         vs.pop_back();
         if (rank(Matrix<Q>::from_columns(c.a.rows(), std::span<const Vector<Q>>(vs))) != vs.size())
           return fail("e, Ae, ..., A^k e dependent although A^k e != 0");
         return pass();
       }},
      {"spectral-lattice", "spectral-projections",
       [](const Case& c, SplitMix64& rng) {
         const auto spec = detail::try_spectrum(c.a);
         if (!spec) return skip("spectrum outside Q(i)");
         const auto d = primary_decomposition(c.a, *spec);
         std::vector<std::size_t> sigma;
         for (std::size_t j = 0; j < d.blocks.size(); ++j)
           if (rng.chance(1, 2)) sigma.push_back(j);
         const auto p = riesz_projection(d, sigma);
         if (!(p * p == p) || !(p * c.a == c.a * p)) return fail("Riesz projection not an idempotent commuting with A");
         const auto x = spectral_subspace(d, sigma);
         if (!(image(p) == x)) return fail("im P_σ != X_A(σ)");
         if (!is_ultrainvariant(c.a, x)) return fail("spectral subspace not ultrainvariant");
         const auto v = random_vector<Q>(c.a.rows(), rng);
         const auto ls = local_spectrum(d, v);
         const bool subset = std::all_of(ls.begin(), ls.end(), [&](auto j) {
           return std::find(sigma.begin(), sigma.end(), j) != sigma.end();
         });
         if (subset != x.contains_vector(v)) return fail("local spectrum test disagrees with X_A(F) membership");
         if (d.blocks.size() >= 2) {
           const auto x0 = spectral_subspace(d, {0});
           if (x0.is_zero() || x0.is_full() || !is_ultrainvariant(c.a, x0))
             return fail("no proper nontrivial ultrainvariant spectral subspace");
         }
         return pass();
       }},
      {"spectral-lattice", "nilpotent-lattice",
       [](const Case& c, SplitMix64& rng) {
         const auto n = detail::nilpotency(c.a);
         if (!n) return skip();
         const auto l = nilpotent_ultra_lattice(c.a);
         if (l.members.size() != *n + 1 || !l.closed_under_meet_join) return fail("kernel chain malformed");
         for (const auto& ic : l.image_checks)
           if (!ic.equals_kernel && (ic.image_ultrainvariant || !ic.closure_is_kernel))
             return fail("image of a power behaves unlike the proof identity");
         if (is_ultrainvariant(c.a, c.m) && find_member(l, c.m) < 0)
           return fail("ultrainvariant subspace outside the kernel chain");
         const auto j = static_cast<std::size_t>(rng.uniform(1, static_cast<long>(*n)));
         const auto ker = kernel(power(c.a, j));
         if (ker.is_zero()) return pass();
         const auto e = ker.basis()[rng.next() % ker.dim()];
         const LinearFunctional<Q> xi(random_vector<Q>(c.a.rows(), rng));
         if (!member(nilpotent_witness(c.a, e, xi, j), local_commutant(c.a, image(power(c.a, *n - j)))))
           return fail("nilpotent witness not in C(A; im A^{n-j})");
         return pass();
       }},
      {"spectral-lattice", "algebraic-lattice",
       [](const Case& c, SplitMix64&) {
         if (c.a.rows() > 4) return skip();
         const auto spec = detail::try_spectrum(c.a);
         if (!spec) return skip("spectrum outside Q(i)");
         const auto l = algebraic_ultra_lattice(c.a, *spec);
         std::size_t expect = 1;
         for (const auto& r : spec->roots) expect *= r.multiplicity + 1;
         if (l.members.size() != expect) return fail("lattice size differs from the product formula");
         if (!l.closed_under_meet_join) return fail("lattice not closed under meet/join");
         if (is_ultrainvariant(c.a, c.m) && find_member(l, c.m) < 0)
           return fail("ultrainvariant subspace outside the enumerated lattice");
         return pass();
       }},
      {"spectral-lattice", "diagonal-level-sets",
       [](const Case& c, SplitMix64&) {
         if (!detail::is_diagonal(c.a)) return skip();
         const std::size_t n = c.a.rows();
         std::vector<bool> seen(n, false);
         for (std::size_t i = 0; i < n; ++i) {
           if (seen[i]) continue;
           std::vector<std::size_t> level;
           for (std::size_t j = i; j < n; ++j)
             if (c.a(j, j) == c.a(i, i)) level.push_back(j), seen[j] = true;
           if (!is_ultrainvariant(c.a, coordinate_span<Q>(n, level))) return fail("level-set span not ultrainvariant");
         }
         return pass();
       }},
      {"spectral-lattice", "truncated-shift-chain",
       [](const Case& c, SplitMix64&) {
         if (!detail::is_backward_shift(c.a)) return skip();
         const std::size_t n = c.a.rows();
         for (std::size_t k = 0; k < n; ++k) {
           const auto mk = coordinate_range<Q>(n, 0, k + 1);
           if (!is_ultrainvariant(c.a, mk)) return fail("M_k not ultrainvariant");
           if (!(mk == kernel(power(c.a, k + 1)))) return fail("M_k != ker W^{k+1}");
         }
         return pass();
       }},
      // ---------------- cli-io
      {"cli-io", "json-round-trip",
       [](const Case& c, SplitMix64&) {
         const auto mj = io::matrix_to_json(c.a);
         const auto text = io::dump(mj);
         if (!(io::matrix_from_json<Q>(io::parse_text(text, "matrix")) == c.a)) return fail("matrix round trip");
         if (io::dump(io::matrix_to_json(io::matrix_from_json<Q>(mj))) != text) return fail("matrix serialization unstable");
         const auto sj = io::subspace_to_json(c.m);
         const auto parsed = io::subspace_from_json<Q>(io::parse_text(io::dump(sj), "subspace"));
         if (!(parsed.space == c.m) || !parsed.was_canonical) return fail("subspace round trip");
         return pass();
       }},
  };
  return laws;
}

/// Evaluates one law with its own deterministic stream; exceptions count as failures.
inline Outcome evaluate(const Law& law, const Case& c) {
  SplitMix64 rng(c.aux_seed ^ detail::name_hash(law.name));
  try {
    return law.check(c, rng);
  } catch (const Error& e) {
    return fail(std::string("exception: ") + e.what());
  }
}

inline const Law* find_law(std::string_view name) {
  for (const auto& l : registry())
    if (l.name == name) return &l;
  return nullptr;
}

}  // namespace lcomm::props
