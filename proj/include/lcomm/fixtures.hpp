#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "lcomm/spectral.hpp"

namespace lcomm {

/// SplitMix64. `split` derives an independent stream from the next output.
class SplitMix64 {
 public:
  static constexpr std::string_view name = "splitmix64";

  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  SplitMix64 split() { return SplitMix64(next()); }

  /// Uniform in [lo, hi].
  long uniform(long lo, long hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<long>(next() % span);
  }

  bool chance(unsigned num, unsigned den) { return next() % den < num; }

 private:
  std::uint64_t state_;
};

// ---------------------------------------------------------------------------
// Random scalars and matrices
// ---------------------------------------------------------------------------

/// Numerators in -3..3, denominators in 1..3; an imaginary part one time in four.
template <Field F>
F random_scalar(SplitMix64& rng) {
  auto part = [&]() -> mpq_class {
    mpq_class q(rng.uniform(-3, 3), rng.uniform(1, 3));
    q.canonicalize();
    return q;
  };
  if constexpr (is_exact_v<F>) {
    mpq_class re = part();
    mpq_class im = rng.chance(1, 4) ? part() : mpq_class(0);
    return GaussRational(std::move(re), std::move(im));
  } else {
    const double re = part().get_d();
    const double im = rng.chance(1, 4) ? part().get_d() : 0.0;
    return Complex(re, im);
  }
}

/// Entries zero with probability zero_num/zero_den, otherwise random_scalar.
template <Field F>
Matrix<F> random_matrix(std::size_t rows, std::size_t cols, SplitMix64& rng, unsigned zero_num = 1,
                        unsigned zero_den = 3) {
  Matrix<F> m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c)
      if (!rng.chance(zero_num, zero_den)) m(r, c) = random_scalar<F>(rng);
  return m;
}

template <Field F>
Vector<F> random_vector(std::size_t n, SplitMix64& rng) {
  Vector<F> v(n);
  for (auto& x : v)
    if (!rng.chance(1, 4)) x = random_scalar<F>(rng);
  return v;
}

/// Span of k random vectors: dimension at most k, since sparse draws may be dependent.
template <Field F>
Subspace<F> random_subspace(std::size_t n, std::size_t k, SplitMix64& rng) {
  std::vector<Vector<F>> vs;
  for (std::size_t i = 0; i < k; ++i) vs.push_back(random_vector<F>(n, rng));
  return canonicalize(vs, n);
}

/// Span{x, Ax, A²x, ...}: the smallest A-invariant subspace containing x.
template <Field F>
Subspace<F> krylov_span(const Matrix<F>& a, const Vector<F>& x) {
  std::vector<Vector<F>> vs{x};
  for (std::size_t i = 1; i < a.rows(); ++i) vs.push_back(a * vs.back());
  return canonicalize(vs, a.rows());
}

// ---------------------------------------------------------------------------
// Structured builders
// ---------------------------------------------------------------------------

/// Jordan blocks J_k(λ) on the diagonal, ones on the superdiagonal: ker J_k(0) = span{e1}.
template <Field F>
Matrix<F> build_jordan(const std::vector<std::size_t>& partition, const F& lambda) {
  std::size_t n = 0;
  for (auto k : partition) {
    require(k >= 1, ErrorKind::PreconditionViolated, "Jordan blocks must have size at least 1");
    n += k;
  }
  Matrix<F> a(n, n);
  std::size_t off = 0;
  for (auto k : partition) {
    for (std::size_t i = 0; i < k; ++i) {
      a(off + i, off + i) = lambda;
      if (i + 1 < k) a(off + i, off + i + 1) = from_int<F>(1);
    }
    off += k;
  }
  return a;
}

/// Partitions of n in non-increasing order.
inline std::vector<std::vector<std::size_t>> partitions(std::size_t n) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> cur;
  auto rec = [&](auto&& self, std::size_t rest, std::size_t cap) -> void {
    if (rest == 0) {
      out.push_back(cur);
      return;
    }
    for (std::size_t k = std::min(rest, cap); k >= 1; --k) {
      cur.push_back(k);
      self(self, rest - k, k);
      cur.pop_back();
    }
  };
  rec(rec, n, n);
  return out;
}

/// Entries of U in -2..2, resampled until U is invertible.
template <Field F>
Matrix<F> random_invertible(std::size_t n, SplitMix64& rng) {
  for (;;) {
    Matrix<F> u(n, n);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) u(r, c) = from_int<F>(rng.uniform(-2, 2));
    if (rank(u) == n) return u;
  }
}

template <Field F>
struct Similarity {
  Matrix<F> u;
  Matrix<F> u_inv;
  Matrix<F> conjugated;  // U A U^{-1}
};

template <Field F>
Similarity<F> random_similarity(const Matrix<F>& a, SplitMix64& rng) {
  require_square(a, "A");
  Matrix<F> u = random_invertible<F>(a.rows(), rng);
  Matrix<F> u_inv = inverse(u);
  Matrix<F> c = u * a * u_inv;
  return {std::move(u), std::move(u_inv), std::move(c)};
}

template <Field F>
struct Fixture {
  Matrix<F> a;
  Subspace<F> m;
};

/// A = diag(I_{d1}, I_{d2}, 0_{d3}) (projection onto the first two blocks along the third), M = blocks 1 and 3.
template <Field F>
Fixture<F> example_projection_3block(std::size_t d1, std::size_t d2, std::size_t d3) {
  require(d1 >= 1 && d2 >= 1 && d3 >= 1, ErrorKind::PreconditionViolated, "block sizes must be positive");
  const std::size_t n = d1 + d2 + d3;
  Matrix<F> a(n, n);
  for (std::size_t i = 0; i < d1 + d2; ++i) a(i, i) = from_int<F>(1);
  std::vector<std::size_t> axes;
  for (std::size_t i = 0; i < d1; ++i) axes.push_back(i);
  for (std::size_t i = 0; i < d3; ++i) axes.push_back(d1 + d2 + i);
  return {std::move(a), coordinate_span<F>(n, axes)};
}

/// Operator space of matrices whose (i,j) block (block sizes `dims`) is zero whenever zero_blocks[i][j].
template <Field F>
OperatorSpace<F> block_pattern_space(const std::vector<std::size_t>& dims, const std::vector<std::vector<bool>>& zero_blocks) {
  std::size_t n = 0;
  std::vector<std::size_t> off;
  for (auto d : dims) off.push_back(n), n += d;
  std::vector<Matrix<F>> gens;
  for (std::size_t bi = 0; bi < dims.size(); ++bi)
    for (std::size_t bj = 0; bj < dims.size(); ++bj) {
      if (zero_blocks[bi][bj]) continue;
      for (std::size_t r = 0; r < dims[bi]; ++r)
        for (std::size_t c = 0; c < dims[bj]; ++c) {
          Matrix<F> e(n, n);
          e(off[bi] + r, off[bj] + c) = from_int<F>(1);
          gens.push_back(std::move(e));
        }
    }
  return OperatorSpace<F>::span_of(n, n, gens);
}

/// Q = projection onto the first block; L = {x1 ⊕ U x1 ⊕ x3} with U = [I_{d2} | 0] : F^{d1} → F^{d2}.
template <Field F>
Fixture<F> example_graph_subspace(std::size_t d1, std::size_t d2, std::size_t d3) {
  require(d1 >= d2 && d2 >= 1 && d3 >= 1, ErrorKind::PreconditionViolated, "need d1 >= d2 >= 1 and d3 >= 1");
  const std::size_t n = d1 + d2 + d3;
  Matrix<F> q(n, n);
  for (std::size_t i = 0; i < d1; ++i) q(i, i) = from_int<F>(1);
  std::vector<Vector<F>> vs;
  for (std::size_t i = 0; i < d1; ++i) {
    Vector<F> v = unit_vector<F>(n, i);
    if (i < d2) v[d1 + i] = from_int<F>(1);
    vs.push_back(std::move(v));
  }
  for (std::size_t i = 0; i < d3; ++i) vs.push_back(unit_vector<F>(n, d1 + d2 + i));
  return {std::move(q), canonicalize(vs, n)};
}

/// (N+1)x(N+1) weighted backward shift: W e_0 = 0, W e_k = w_k e_{k-1} (weights = w_1..w_N).
template <Field F>
Matrix<F> build_truncated_shift(const std::vector<F>& weights, std::size_t big_n) {
  require(weights.size() == big_n, ErrorKind::DimensionMismatch, "need exactly N weights");
  for (const auto& w : weights) require(!is_zero(w), ErrorKind::ZeroWeight, "shift weights must be nonzero");
  Matrix<F> w(big_n + 1, big_n + 1);
  for (std::size_t k = 1; k <= big_n; ++k) w(k - 1, k) = weights[k - 1];
  return w;
}

/// A = [[A11, A12], [0, A22]] with σ(A11) ∩ σ(A22) = ∅ (coprime minimal polynomials); M = first block.
template <Field F>
Fixture<F> build_block_disjoint(const Matrix<F>& a11, const Matrix<F>& a22, const Matrix<F>& a12) {
  require_square(a11, "A11");
  require_square(a22, "A22");
  const std::size_t k = a11.rows(), l = a22.rows();
  require(a12.rows() == k && a12.cols() == l, ErrorKind::DimensionMismatch, "A12 shape differs from the blocks");
  require(poly_degree(poly_gcd(minimal_polynomial(a11), minimal_polynomial(a22))) == 0, ErrorKind::SpectraOverlap,
          "diagonal blocks share an eigenvalue");
  Matrix<F> a(k + l, k + l);
  set_block(a, 0, 0, a11);
  set_block(a, 0, k, a12);
  set_block(a, k, k, a22);
  return {std::move(a), coordinate_range<F>(k + l, 0, k)};
}

template <Field F>
Fixture<F> build_block_disjoint(const Matrix<F>& a11, const Matrix<F>& a22, SplitMix64& rng) {
  return build_block_disjoint(a11, a22, random_matrix<F>(a11.rows(), a22.rows(), rng));
}

/// Block-diagonal ⊕ J_{p}(λ_j) for several eigenvalues, with the matching spectrum.
template <Field F>
struct AlgebraicFixture {
  Matrix<F> a;
  SpectrumSpec<F> spec;
};

template <Field F>
AlgebraicFixture<F> build_algebraic(const std::vector<F>& lambdas, const std::vector<std::vector<std::size_t>>& parts) {
  require(lambdas.size() == parts.size(), ErrorKind::DimensionMismatch, "one partition per eigenvalue");
  std::vector<Matrix<F>> blocks;
  SpectrumSpec<F> spec;
  spec.source = SpectrumSource::user_provided;
  for (std::size_t j = 0; j < lambdas.size(); ++j) {
    blocks.push_back(build_jordan(parts[j], lambdas[j]));
    spec.roots.push_back({lambdas[j], *std::max_element(parts[j].begin(), parts[j].end())});
  }
  return {block_diag<F>(std::span<const Matrix<F>>(blocks)), std::move(spec)};
}

// ---------------------------------------------------------------------------
// Seeded instances
// ---------------------------------------------------------------------------

enum class InstanceKind {
  jordan,
  nilpotent_partition,
  block_disjoint_spectra,
  projection_3block,
  graph_subspace,
  truncated_shift,
  diagonal_normal,
  random_pair,
};

inline constexpr InstanceKind kAllKinds[] = {
    InstanceKind::jordan,           InstanceKind::nilpotent_partition, InstanceKind::block_disjoint_spectra,
    InstanceKind::projection_3block, InstanceKind::graph_subspace,     InstanceKind::truncated_shift,
    InstanceKind::diagonal_normal,  InstanceKind::random_pair,
};

constexpr std::string_view to_string(InstanceKind k) {
  switch (k) {
    case InstanceKind::jordan: return "jordan";
    case InstanceKind::nilpotent_partition: return "nilpotent-partition";
    case InstanceKind::block_disjoint_spectra: return "block-disjoint-spectra";
    case InstanceKind::projection_3block: return "projection-3block";
    case InstanceKind::graph_subspace: return "graph-subspace";
    case InstanceKind::truncated_shift: return "truncated-shift";
    case InstanceKind::diagonal_normal: return "diagonal-normal";
    case InstanceKind::random_pair: return "random-pair";
  }
  return "unknown";
}

struct InstanceSpec {
  std::uint64_t seed = 0;
  InstanceKind kind = InstanceKind::random_pair;
  std::size_t dim_min = 2;
  std::size_t dim_max = 5;
};

template <Field F>
struct Instance {
  Matrix<F> a;
  Subspace<F> m;
  std::string label;
};

/// A subspace related to A in one of several ways: invariant (Krylov, kernel of a
/// polynomial in A, image of a power), arbitrary, or trivial.
template <Field F>
Subspace<F> random_subspace_for(const Matrix<F>& a, SplitMix64& rng) {
  const std::size_t n = a.rows();
  switch (rng.uniform(0, 6)) {
    case 0: return krylov_span(a, random_vector<F>(n, rng));
    case 1: {
      Poly<F> p;
      for (long i = 0, d = rng.uniform(1, 2); i <= d; ++i) p.push_back(from_int<F>(rng.uniform(-2, 2)));
      return kernel(eval_poly(p, a));
    }
    case 2: return image(power(a, static_cast<std::size_t>(rng.uniform(1, 2))));
    case 3: return random_subspace<F>(n, static_cast<std::size_t>(rng.uniform(1, static_cast<long>(n))), rng);
    case 4: {
      std::vector<std::size_t> axes;
      for (std::size_t i = 0; i < n; ++i)
        if (rng.chance(1, 2)) axes.push_back(i);
      return coordinate_span<F>(n, axes);
    }
    case 5: return rng.chance(1, 2) ? Subspace<F>::zero(n) : Subspace<F>::full(n);
    default: return join(krylov_span(a, random_vector<F>(n, rng)), krylov_span(a, random_vector<F>(n, rng)));
  }
}

inline std::vector<std::size_t> random_partition(std::size_t n, SplitMix64& rng) {
  std::vector<std::size_t> out;
  while (n > 0) {
    const auto k = static_cast<std::size_t>(rng.uniform(1, static_cast<long>(n)));
    out.push_back(k);
    n -= k;
  }
  std::sort(out.rbegin(), out.rend());
  return out;
}

/// Deterministic in (seed, kind, dims).
template <Field F>
Instance<F> generate_instance(const InstanceSpec& spec) {
  SplitMix64 rng(spec.seed);
  const auto n = static_cast<std::size_t>(rng.uniform(static_cast<long>(spec.dim_min), static_cast<long>(spec.dim_max)));
  Instance<F> inst;
  inst.label = std::string(to_string(spec.kind)) + "/seed=" + std::to_string(spec.seed);
  switch (spec.kind) {
    case InstanceKind::jordan: {
      const F lambda = from_int<F>(rng.uniform(-2, 2));
      inst.a = build_jordan(random_partition(n, rng), lambda);
      if (rng.chance(1, 2)) inst.a = random_similarity(inst.a, rng).conjugated;
      break;
    }
    case InstanceKind::nilpotent_partition: {
      inst.a = random_similarity(build_jordan(random_partition(n, rng), F{}), rng).conjugated;
      break;
    }
    case InstanceKind::block_disjoint_spectra: {
      const auto k = static_cast<std::size_t>(rng.uniform(1, static_cast<long>(n) - 1));
      const F l1 = from_int<F>(rng.uniform(-2, 0)), l2 = from_int<F>(rng.uniform(1, 2));
      const Fixture<F> f = build_block_disjoint(build_jordan(random_partition(k, rng), l1),
                                                build_jordan(random_partition(n - k, rng), l2), rng);
      inst.a = f.a;
      inst.m = rng.chance(1, 2) ? f.m : random_subspace_for(inst.a, rng);
      return inst;
    }
    case InstanceKind::projection_3block: {
      const std::size_t d3 = std::max<std::size_t>(1, n / 3), d2 = std::max<std::size_t>(1, (n - d3) / 2);
      const std::size_t d1 = std::max<std::size_t>(1, n - d3 - d2);
      Fixture<F> f = example_projection_3block<F>(d1, d2, d3);
      inst.a = std::move(f.a);
      inst.m = rng.chance(1, 2) ? std::move(f.m) : random_subspace_for(inst.a, rng);
      return inst;
    }
    case InstanceKind::graph_subspace: {
      const std::size_t d3 = 1, d2 = std::max<std::size_t>(1, (n - 1) / 2), d1 = std::max(d2, n - 1 - d2);
      Fixture<F> f = example_graph_subspace<F>(d1, d2, d3);
      inst.a = std::move(f.a);
      inst.m = rng.chance(1, 2) ? std::move(f.m) : random_subspace_for(inst.a, rng);
      return inst;
    }
    case InstanceKind::truncated_shift: {
      std::vector<F> w;
      for (std::size_t i = 1; i < n; ++i) {
        F x;
        do x = random_scalar<F>(rng);
        while (is_zero(x));
        w.push_back(x);
      }
      inst.a = build_truncated_shift(w, n - 1);
      if (rng.chance(1, 2)) {
        inst.m = coordinate_range<F>(n, 0, static_cast<std::size_t>(rng.uniform(0, static_cast<long>(n))));
        return inst;
      }
      break;
    }
    case InstanceKind::diagonal_normal: {
      Matrix<F> a(n, n);
      const long distinct = rng.uniform(1, std::max<long>(1, static_cast<long>(n) - 1));
      for (std::size_t i = 0; i < n; ++i) a(i, i) = from_int<F>(rng.uniform(0, distinct - 1));
      inst.a = std::move(a);
      break;
    }
    case InstanceKind::random_pair: {
      inst.a = random_matrix<F>(n, n, rng, 1, 2);
      break;
    }
  }
  inst.m = random_subspace_for(inst.a, rng);
  return inst;
}

// ---------------------------------------------------------------------------
// Expected facts for the two worked examples
// ---------------------------------------------------------------------------

struct Fact {
  std::string name;
  bool ok = false;
};

template <Field F>
std::vector<Fact> projection_example_facts(std::size_t d1, std::size_t d2, std::size_t d3, bool corrupt = false) {
  Fixture<F> f = example_projection_3block<F>(d1, d2, d3);
  if (corrupt) f.a(0, f.a.cols() - 1) = from_int<F>(1);
  const std::size_t n = d1 + d2 + d3;
  std::vector<std::vector<bool>> zero(3, std::vector<bool>(3, false));
  zero[0][2] = zero[1][2] = zero[2][0] = true;
  const OperatorSpace<F> pattern = block_pattern_space<F>({d1, d2, d3}, zero);
  const OperatorSpace<F> c = local_commutant(f.a, f.m);
  const std::size_t expected_dim = n * n - d1 * d3 - d2 * d3 - d3 * d1;
  std::vector<Fact> facts;
  facts.push_back({"C(A;M) equals the zero-block pattern (1,3),(2,3),(3,1)", c == pattern});
  facts.push_back({"dim C(A;M) = " + std::to_string(expected_dim), c.dim() == expected_dim});
  facts.push_back({"girder of C(A;M) equals M", girder_of(f.a, f.a, c) == f.m});
  facts.push_back({"C(A;M) M is the whole space", apply_to_subspace(c, f.m).is_full()});
  facts.push_back({"M is invariant for A", is_invariant(f.a, f.m)});
  bool not_algebra = false;
  try {
    const AlgebraVerdict v = algebra_status(f.a, f.m);
    not_algebra = !v.is_algebra && !v.via_product_closure && !v.via_cm_subset_girder && !v.via_cm_equals_girder &&
                  !v.via_girder_invariant;
  } catch (const Error&) {
    not_algebra = false;
  }
  facts.push_back({"C(A;M) is not an algebra (all four conditions false)", not_algebra});
  facts.push_back({"M is not ultrainvariant", !is_ultrainvariant(f.a, f.m)});
  bool closure_full = false;
  try {
    closure_full = ultrainvariant_closure(f.a, f.m).is_full();
  } catch (const Error&) {
  }
  facts.push_back({"ultrainvariant closure of M is the whole space", closure_full});
  return facts;
}

template <Field F>
std::vector<Fact> graph_example_facts(std::size_t d1, std::size_t d2, std::size_t d3, bool corrupt = false) {
  Fixture<F> f = example_graph_subspace<F>(d1, d2, d3);
  if (corrupt) f.a(f.a.rows() - 1, 0) = from_int<F>(1);
  std::vector<std::vector<bool>> zero(3, std::vector<bool>(3, false));
  zero[0][1] = zero[0][2] = zero[1][0] = zero[2][0] = true;
  const OperatorSpace<F> pattern = block_pattern_space<F>({d1, d2, d3}, zero);
  const OperatorSpace<F> local = local_commutant(f.a, f.m);
  const OperatorSpace<F> comm = commutant(f.a);
  std::vector<Fact> facts;
  facts.push_back({"C(Q;L) equals (Q)'", local == comm});
  facts.push_back({"(Q)' equals the block pattern T12=T13=T21=T31=0", comm == pattern});
  facts.push_back({"L is not invariant for Q", !is_invariant(f.a, f.m)});
  return facts;
}

}  // namespace lcomm
