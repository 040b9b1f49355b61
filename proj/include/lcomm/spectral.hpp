#pragma once

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lcomm/invariance.hpp"
#include "lcomm/polynomial.hpp"

namespace lcomm {

/// Least-degree monic p with p(A) = 0, from the first dependence among vec(A^k).
template <Field F>
Poly<F> minimal_polynomial(const Matrix<F>& a) {
  require_square(a, "A");
  const std::size_t n = a.rows();
  if (n == 0) return {from_int<F>(1)};
  std::vector<Vector<F>> powers;
  Matrix<F> p = Matrix<F>::identity(n);
  if constexpr (is_exact_v<F>) {
    detail::RowEchelon<F> ech(n * n);
    for (std::size_t k = 0; k <= n; ++k) {
      powers.push_back(vec(p));
      if (!ech.insert(powers.back())) break;
      p = p * a;
    }
  } else {
    for (std::size_t k = 0; k <= n; ++k) {
      powers.push_back(vec(p));
      if (rank(Matrix<F>::from_columns(n * n, std::span<const Vector<F>>(powers))) < powers.size()) break;
      p = p * a;
    }
  }
  const Subspace<F> rel = kernel(Matrix<F>::from_columns(n * n, std::span<const Vector<F>>(powers)));
  require(rel.dim() == 1, ErrorKind::InternalInconsistency, "power sequence has no unique first dependence");
  return poly_monic(rel.basis()[0]);
}

template <Field F>
struct AscentDescent {
  std::size_t ascent = 0;
  std::size_t descent = 0;
  std::vector<Subspace<F>> kernels;  // ker((A-λ)^k), k = 0..ascent
  std::vector<Subspace<F>> images;   // im((A-λ)^k), k = 0..descent
};

/// Smallest k with ker(B^k) = ker(B^{k+1}) (resp. im), B = A - λI.
template <Field F>
AscentDescent<F> ascent_descent(const Matrix<F>& a, const F& lambda) {
  require_square(a, "A");
  const std::size_t n = a.rows();
  const Matrix<F> b = shift(a, lambda);
  AscentDescent<F> out;
  Matrix<F> p = Matrix<F>::identity(n);
  out.kernels.push_back(Subspace<F>::zero(n));
  out.images.push_back(Subspace<F>::full(n));
  bool ker_done = false, im_done = false;
  while (!ker_done || !im_done) {
    p = p * b;
    if (!ker_done) {
      Subspace<F> k = kernel(p);
      if (k == out.kernels.back()) ker_done = true;
      else out.kernels.push_back(std::move(k));
    }
    if (!im_done) {
      Subspace<F> i = image(p);
      if (i == out.images.back()) im_done = true;
      else out.images.push_back(std::move(i));
    }
  }
  out.ascent = out.kernels.size() - 1;
  out.descent = out.images.size() - 1;
  return out;
}

// ---------------------------------------------------------------------------
// Spectra
// ---------------------------------------------------------------------------

enum class SpectrumSource { user_provided, rational_root_search, float_eigensolver };

constexpr std::string_view to_string(SpectrumSource s) {
  switch (s) {
    case SpectrumSource::user_provided: return "user-provided";
    case SpectrumSource::rational_root_search: return "rational-root-search";
    case SpectrumSource::float_eigensolver: return "float-eigensolver";
  }
  return "unknown";
}

template <Field F>
struct SpectrumRoot {
  F value;
  std::size_t multiplicity = 1;  // exponent in the minimal polynomial
};

template <Field F>
struct SpectrumSpec {
  std::vector<SpectrumRoot<F>> roots;
  SpectrumSource source = SpectrumSource::user_provided;
};

template <Field F>
Poly<F> spectrum_polynomial(const SpectrumSpec<F>& spec) {
  Poly<F> p{from_int<F>(1)};
  for (const auto& r : spec.roots) p = poly_mul(p, linear_power(r.value, r.multiplicity));
  return p;
}

/// q_A divided by every declared factor that divides it; empty spectrum leaves q_A.
template <Field F>
Poly<F> unfactored_remainder(const Poly<F>& q, const SpectrumSpec<F>& spec) {
  Poly<F> rest = q;
  for (const auto& r : spec.roots)
    for (std::size_t i = 0; i < r.multiplicity; ++i) {
      auto d = poly_divmod(rest, Poly<F>{-r.value, from_int<F>(1)});
      if (!d.remainder.empty()) break;
      rest = std::move(d.quotient);
    }
  return rest;
}

/// Throws SpectrumIncomplete unless ∏(z-λ_j)^{m_j} = q_A with distinct λ_j.
template <Field F>
void verify_spectrum(const Matrix<F>& a, const SpectrumSpec<F>& spec) {
  for (std::size_t i = 0; i < spec.roots.size(); ++i) {
    require(spec.roots[i].multiplicity >= 1, ErrorKind::SpectrumIncomplete, "root multiplicity must be positive");
    for (std::size_t j = 0; j < i; ++j)
      require(!is_zero(spec.roots[i].value - spec.roots[j].value), ErrorKind::SpectrumIncomplete,
              "spectrum lists a root twice");
  }
  if constexpr (is_exact_v<F>) {
    const Poly<F> q = minimal_polynomial(a);
    if (!(poly_trim(spectrum_polynomial(spec)) == q))
      throw Error(ErrorKind::SpectrumIncomplete,
                  "declared spectrum does not factor the minimal polynomial; unfactored remainder: " +
                      poly_to_string(unfactored_remainder(q, spec)));
  } else {
    // Float: p(A) must vanish and no exponent may be lowered.
    const std::size_t n = a.rows();
    auto vanishes = [&](const Poly<F>& p) {
      const Matrix<F> v = eval_poly(p, a);
      double s = 0.0;
      for (const auto& x : v.entries()) s = std::max(s, std::abs(x));
      return s <= 1e-6 * std::max(1.0, static_cast<double>(n));
    };
    if (!vanishes(spectrum_polynomial(spec)))
      throw Error(ErrorKind::SpectrumIncomplete, "declared spectrum does not annihilate A");
    for (std::size_t i = 0; i < spec.roots.size(); ++i) {
      SpectrumSpec<F> lower = spec;
      --lower.roots[i].multiplicity;
      if (vanishes(spectrum_polynomial(lower)))
        throw Error(ErrorKind::SpectrumIncomplete, "declared multiplicity exceeds the minimal polynomial");
    }
  }
}

namespace detail {

inline mpz_class lcm_denominators(const Poly<GaussRational>& p) {
  mpz_class l = 1;
  for (const auto& c : p) {
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.real().get_den_mpz_t());
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.imag().get_den_mpz_t());
  }
  return l;
}

/// All divisors of a positive integer (trial division).
inline std::vector<mpz_class> divisors(const mpz_class& n) {
  std::vector<mpz_class> small, large;
  for (mpz_class d = 1; d * d <= n; ++d)
    if (n % d == 0) {
      small.push_back(d);
      if (d * d != n) large.push_back(n / d);
    }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

inline constexpr unsigned long kRootSearchNormCap = 1'000'000'000'000UL;

/// Floating-point roots of a monic polynomial (companion-matrix eigenvalues).
inline std::vector<Complex> approximate_roots(const Poly<GaussRational>& q) {
  const std::size_t d = poly_degree(q);
  if (d == 0) return {};
  Eigen::MatrixXcd c = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
  for (std::size_t i = 0; i < d; ++i) {
    const auto ii = static_cast<Eigen::Index>(i);
    if (i + 1 < d) c(ii + 1, ii) = 1.0;
    c(ii, static_cast<Eigen::Index>(d) - 1) = -(q[i] / q[d]).to_complex();
  }
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(c, false);
  return {es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size()};
}

inline mpz_class round_to_mpz(double x) {
  mpq_class r(std::floor(x + 0.5));
  return r.get_num();
}

}  // namespace detail

/// Roots of q_A in Q(i). With D the common denominator, w = D z turns q_A into a
/// monic Z[i] polynomial, whose Q(i) roots are Gaussian integers dividing the
/// constant term. Candidates come first from rounding D times the numerical
/// roots, then from enumerating divisors by norm (up to the norm cap); every
/// candidate is confirmed by exact division. Roots found are returned with
/// their exponent in q_A; anything not found stays in the remainder.
inline SpectrumSpec<GaussRational> find_gaussian_rational_roots(const Poly<GaussRational>& q,
                                                                Poly<GaussRational>* remainder = nullptr) {
  using Q = GaussRational;
  SpectrumSpec<Q> spec;
  spec.source = SpectrumSource::rational_root_search;
  const std::size_t d = poly_degree(q);
  const mpz_class den = detail::lcm_denominators(q);
  Poly<Q> p(q.size());
  mpz_class scale = 1;
  for (std::size_t i = d + 1; i-- > 0;) {
    p[i] = q[i] * Q(mpq_class(scale));
    scale *= den;
  }
  auto take_root = [&](const Q& w) {
    std::size_t mult = 0;
    for (;;) {
      auto div = poly_divmod(p, Poly<Q>{-w, Q(1)});
      if (!div.remainder.empty()) break;
      p = std::move(div.quotient);
      ++mult;
    }
    spec.roots.push_back({w / Q(mpq_class(den)), mult});
  };
  if (!p.empty() && p.size() > 1 && is_zero(p[0])) take_root(Q(0));
  const double dd = den.get_d();
  for (const Complex& z : detail::approximate_roots(q)) {
    if (poly_degree(p) < 1) break;
    const mpz_class re = detail::round_to_mpz(z.real() * dd), im = detail::round_to_mpz(z.imag() * dd);
    for (int dr = -1; dr <= 1; ++dr)
      for (int di = -1; di <= 1; ++di) {
        const Q w(mpq_class(re + dr), mpq_class(im + di));
        if (poly_degree(p) >= 1 && is_zero(poly_eval(p, w))) take_root(w);
      }
  }
  while (poly_degree(p) >= 1) {
    const mpq_class norm_q = p[0].norm();
    if (norm_q.get_den() != 1 || norm_q > mpq_class(mpz_class(std::to_string(detail::kRootSearchNormCap)))) break;
    bool found = false;
    for (const auto& t : detail::divisors(norm_q.get_num())) {
      for (mpz_class x = 0; x * x <= t && !found; ++x) {
        const mpz_class rest = t - x * x;
        mpz_class y = sqrt(rest);
        if (y * y != rest) continue;
        for (int sx : {1, -1})
          for (int sy : {1, -1}) {
            if (found || (sx < 0 && x == 0) || (sy < 0 && y == 0)) continue;
            const Q w(mpq_class(mpz_class(sx * x)), mpq_class(mpz_class(sy * y)));
            if (is_zero(poly_eval(p, w))) {
              take_root(w);
              found = true;
            }
          }
      }
      if (found) break;
    }
    if (!found) break;
  }
  std::sort(spec.roots.begin(), spec.roots.end(), [](const auto& a, const auto& b) {
    if (a.value.real() != b.value.real()) return a.value.real() < b.value.real();
    return a.value.imag() < b.value.imag();
  });
  if (remainder) *remainder = unfactored_remainder(q, spec);
  return spec;
}

/// Float spectrum: eigenvalues clustered with an absolute gap; multiplicity is the ascent at the cluster mean.
inline SpectrumSpec<Complex> float_spectrum(const Matrix<Complex>& a, double gap = 1e-6) {
  require_square(a, "A");
  SpectrumSpec<Complex> spec;
  spec.source = SpectrumSource::float_eigensolver;
  if (a.rows() == 0) return spec;
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(detail::to_eigen(a), false);
  std::vector<Complex> ev(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
  std::vector<std::vector<Complex>> clusters;
  for (const auto& z : ev) {
    auto it = std::find_if(clusters.begin(), clusters.end(), [&](const auto& c) {
      return std::any_of(c.begin(), c.end(), [&](const Complex& w) { return std::abs(w - z) < gap; });
    });
    if (it == clusters.end()) clusters.push_back({z});
    else it->push_back(z);
  }
  for (const auto& c : clusters) {
    Complex mean = 0.0;
    for (const auto& z : c) mean += z;
    mean /= static_cast<double>(c.size());
    spec.roots.push_back({mean, std::max<std::size_t>(1, ascent_descent(a, mean).ascent)});
  }
  return spec;
}

/// Exact path: Gaussian-rational root search on q_A. Throws SpectrumIncomplete with the remainder.
inline SpectrumSpec<GaussRational> exact_spectrum(const Matrix<GaussRational>& a) {
  Poly<GaussRational> rest;
  auto spec = find_gaussian_rational_roots(minimal_polynomial(a), &rest);
  if (poly_degree(rest) > 0)
    throw Error(ErrorKind::SpectrumIncomplete,
                "minimal polynomial has roots outside Q(i) or beyond the search bound; unfactored remainder: " +
                    poly_to_string(rest));
  return spec;
}

// ---------------------------------------------------------------------------
// Primary decomposition and spectral projections
// ---------------------------------------------------------------------------

template <Field F>
struct PrimaryBlock {
  F lambda;
  Subspace<F> space;       // ker((A-λ)^order)
  std::size_t order = 0;   // nilpotent order of A - λ on the block
  std::vector<Subspace<F>> kernel_chain;  // ker((A-λ)^m), m = 0..order
};

template <Field F>
struct PrimaryDecomposition {
  std::size_t n = 0;
  std::vector<PrimaryBlock<F>> blocks;
  Matrix<F> basis;      // columns: block bases in order
  Matrix<F> basis_inv;
  std::vector<std::size_t> offsets;  // first column of each block in `basis`
};

template <Field F>
PrimaryDecomposition<F> primary_decomposition(const Matrix<F>& a, const SpectrumSpec<F>& spec) {
  require_square(a, "A");
  verify_spectrum(a, spec);
  PrimaryDecomposition<F> d;
  d.n = a.rows();
  std::vector<Vector<F>> cols;
  std::size_t total = 0;
  for (const auto& r : spec.roots) {
    AscentDescent<F> ad = ascent_descent(a, r.value);
    if constexpr (is_exact_v<F>)
      require(ad.ascent == r.multiplicity, ErrorKind::InternalInconsistency, "ascent differs from root exponent");
    PrimaryBlock<F> b{r.value, ad.kernels.back(), ad.ascent, std::move(ad.kernels)};
    d.offsets.push_back(total);
    total += b.space.dim();
    cols.insert(cols.end(), b.space.basis().begin(), b.space.basis().end());
    d.blocks.push_back(std::move(b));
  }
  require(total == d.n, ErrorKind::InternalInconsistency, "generalized eigenspaces do not fill the space");
  d.basis = Matrix<F>::from_columns(d.n, std::span<const Vector<F>>(cols));
  auto inv = try_inverse(d.basis);
  require(inv.has_value(), ErrorKind::InternalInconsistency, "generalized eigenspaces are not independent");
  d.basis_inv = *std::move(inv);
  return d;
}

template <Field F>
void check_indices(const PrimaryDecomposition<F>& d, const std::vector<std::size_t>& sigma) {
  for (auto j : sigma) require(j < d.blocks.size(), ErrorKind::BadIndex, "eigenvalue index out of range");
}

/// P_σ = V D_σ V^{-1}: identity on the blocks in σ, zero on the others.
template <Field F>
Matrix<F> riesz_projection(const PrimaryDecomposition<F>& d, const std::vector<std::size_t>& sigma) {
  check_indices(d, sigma);
  Matrix<F> mask(d.n, d.n);
  for (auto j : sigma)
    for (std::size_t c = 0; c < d.blocks[j].space.dim(); ++c) mask(d.offsets[j] + c, d.offsets[j] + c) = from_int<F>(1);
  return d.basis * mask * d.basis_inv;
}

/// X_A(F): the join of the generalized eigenspaces indexed by `f`.
template <Field F>
Subspace<F> spectral_subspace(const PrimaryDecomposition<F>& d, const std::vector<std::size_t>& f) {
  check_indices(d, f);
  std::vector<Vector<F>> vs;
  for (auto j : f) vs.insert(vs.end(), d.blocks[j].space.basis().begin(), d.blocks[j].space.basis().end());
  return canonicalize(vs, d.n);
}

/// Indices of the blocks where x has a nonzero component.
template <Field F>
std::vector<std::size_t> local_spectrum(const PrimaryDecomposition<F>& d, const Vector<F>& x) {
  require(x.size() == d.n, ErrorKind::DimensionMismatch, "vector length differs from A");
  const Vector<F> c = d.basis_inv * x;
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < d.blocks.size(); ++j)
    for (std::size_t i = 0; i < d.blocks[j].space.dim(); ++i)
      if (!is_zero(c[d.offsets[j] + i])) {
        out.push_back(j);
        break;
      }
  return out;
}

// ---------------------------------------------------------------------------
// Ultrainvariant lattices
// ---------------------------------------------------------------------------

template <Field F>
struct LatticeMember {
  Subspace<F> space;
  std::vector<std::size_t> exponents;
  bool verified_ultrainvariant = false;
};

/// For nilpotent A: whether im(A^{n-j}) differs from ker(A^j), and if so the checks on it.
template <Field F>
struct ImageCheck {
  std::size_t j = 0;
  Subspace<F> image;
  bool equals_kernel = false;
  bool image_ultrainvariant = false;
  bool closure_is_kernel = false;
};

template <Field F>
struct UltraLattice {
  std::vector<LatticeMember<F>> members;
  std::vector<ImageCheck<F>> image_checks;
  std::vector<std::size_t> orders;  // n_j per block (one entry for the nilpotent path)
  bool closed_under_meet_join = false;
};

template <Field F>
std::ptrdiff_t find_member(const UltraLattice<F>& l, const Subspace<F>& s) {
  for (std::size_t i = 0; i < l.members.size(); ++i)
    if (l.members[i].space == s) return static_cast<std::ptrdiff_t>(i);
  return -1;
}

template <Field F>
bool check_meet_join_closure(const UltraLattice<F>& l) {
  for (std::size_t i = 0; i < l.members.size(); ++i)
    for (std::size_t j = i + 1; j < l.members.size(); ++j) {
      auto mj = meet_join(l.members[i].space, l.members[j].space);
      if (find_member(l, mj.meet) < 0 || find_member(l, mj.join) < 0) return false;
    }
  return true;
}

/// Nilpotent order n with q_A = z^n, or NotNilpotent.
template <Field F>
std::size_t nilpotent_order(const Matrix<F>& a) {
  const Poly<F> q = minimal_polynomial(a);
  const std::size_t n = poly_degree(q);
  bool ok = n >= 1 && is_zero(q[n] - from_int<F>(1));
  for (std::size_t i = 0; ok && i < n; ++i) ok = is_zero(q[i]);
  require(ok, ErrorKind::NotNilpotent, "minimal polynomial is not a power of z");
  return n;
}

/// The chain ker(A^j), j = 0..n, each member re-verified; images of powers checked against it.
template <Field F>
UltraLattice<F> nilpotent_ultra_lattice(const Matrix<F>& a) {
  require_square(a, "A");
  const std::size_t n = nilpotent_order(a);
  const std::size_t dim = a.rows();
  UltraLattice<F> l;
  l.orders = {n};
  std::vector<Matrix<F>> pw{Matrix<F>::identity(dim)};
  for (std::size_t j = 1; j <= n; ++j) pw.push_back(pw.back() * a);
  for (std::size_t j = 0; j <= n; ++j) {
    Subspace<F> k = kernel(pw[j]);
    const bool ok = is_ultrainvariant(a, k);
    require(ok, ErrorKind::InternalInconsistency, "kernel of a power failed the ultrainvariance check");
    l.members.push_back({std::move(k), {j}, ok});
  }
  for (std::size_t j = 0; j <= n; ++j) {
    ImageCheck<F> c;
    c.j = j;
    c.image = image(pw[n - j]);
    c.equals_kernel = c.image == l.members[j].space;
    c.image_ultrainvariant = c.equals_kernel || is_ultrainvariant(a, c.image);
    c.closure_is_kernel = ultrainvariant_closure(a, c.image) == l.members[j].space;
    l.image_checks.push_back(std::move(c));
  }
  l.closed_under_meet_join = check_meet_join_closure(l);
  return l;
}

/// All ⊕_j ker((A-λ_j)^{m_j}), 0 ≤ m_j ≤ n_j, each verified; meet/join closure checked.
template <Field F>
UltraLattice<F> algebraic_ultra_lattice(const Matrix<F>& a, const SpectrumSpec<F>& spec) {
  const PrimaryDecomposition<F> d = primary_decomposition(a, spec);
  UltraLattice<F> l;
  const std::size_t k = d.blocks.size();
  for (const auto& b : d.blocks) l.orders.push_back(b.order);
  std::vector<std::size_t> m(k, 0);
  for (;;) {
    std::vector<Vector<F>> vs;
    for (std::size_t j = 0; j < k; ++j) {
      const auto& part = d.blocks[j].kernel_chain[m[j]];
      vs.insert(vs.end(), part.basis().begin(), part.basis().end());
    }
    Subspace<F> s = canonicalize(vs, d.n);
    const bool ok = is_ultrainvariant(a, s);
    require(ok, ErrorKind::InternalInconsistency, "lattice member failed the ultrainvariance check");
    l.members.push_back({std::move(s), m, ok});
    std::size_t j = 0;
    while (j < k && m[j] == d.blocks[j].order) m[j++] = 0;
    if (j == k) break;
    ++m[j];
  }
  l.closed_under_meet_join = check_meet_join_closure(l);
  return l;
}

/// Σ_{i<j} A^i (e⊗ξ) A^{j-1-i}; lies in C(A; im(A^{n-j})) whenever A^j e = 0.
template <Field F>
Matrix<F> nilpotent_witness(const Matrix<F>& a, const Vector<F>& e, const LinearFunctional<F>& xi, std::size_t j) {
  require_square(a, "A");
  require(e.size() == a.rows() && xi.ambient_dim == a.rows(), ErrorKind::DimensionMismatch,
          "witness vectors differ from A");
  require(j >= 1, ErrorKind::BadIndex, "witness exponent must be at least 1");
  require(is_zero_vector(power(a, j) * e), ErrorKind::PreconditionViolated, "A^j e is not zero");
  const Matrix<F> r = outer_product(e, xi);
  std::vector<Matrix<F>> pw{Matrix<F>::identity(a.rows())};
  for (std::size_t i = 1; i < j; ++i) pw.push_back(pw.back() * a);
  Matrix<F> out(a.rows(), a.cols());
  for (std::size_t i = 0; i < j; ++i) out += pw[i] * r * pw[j - 1 - i];
  return out;
}

}  // namespace lcomm
