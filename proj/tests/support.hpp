#pragma once

#include <gtest/gtest.h>

#include <initializer_list>
#include <vector>

#include "lcomm/fixtures.hpp"
#include "oracle.hpp"

namespace t {

using namespace lcomm;
using Q = GaussRational;
using Mat = Matrix<Q>;
using Vec = Vector<Q>;
using Sub = Subspace<Q>;
using Ops = OperatorSpace<Q>;

inline Mat mat(std::initializer_list<std::initializer_list<long>> rows) {
  const std::size_t r = rows.size(), c = rows.begin()->size();
  Mat m(r, c);
  std::size_t i = 0;
  for (const auto& row : rows) {
    std::size_t j = 0;
    for (long x : row) m(i, j++) = Q(x);
    ++i;
  }
  return m;
}

inline Vec vec_of(std::initializer_list<long> xs) {
  Vec v;
  for (long x : xs) v.push_back(Q(x));
  return v;
}

inline Sub span(std::size_t n, std::initializer_list<std::initializer_list<long>> cols) {
  std::vector<Vec> vs;
  for (const auto& c : cols) vs.push_back(vec_of(c));
  return canonicalize(vs, n);
}

inline Sub axes(std::size_t n, std::initializer_list<std::size_t> idx) {
  std::vector<std::size_t> v(idx);
  return coordinate_span<Q>(n, v);
}

inline std::size_t pick(SplitMix64& rng, std::size_t lo, std::size_t hi) {
  return static_cast<std::size_t>(rng.uniform(static_cast<long>(lo), static_cast<long>(hi)));
}

inline Mat jordan(std::size_t n, long lambda = 0) { return build_jordan<Q>({n}, Q(lambda)); }

inline Mat e(std::size_t rows, std::size_t cols, std::size_t r, std::size_t c) {
  Mat m(rows, cols);
  m(r, c) = Q(1);
  return m;
}

inline Matrix<Complex> to_float(const Mat& m) {
  Matrix<Complex> out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = m(i, j).to_complex();
  return out;
}

inline Subspace<Complex> to_float(const Sub& s) {
  std::vector<Vector<Complex>> vs;
  for (const auto& b : s.basis()) {
    Vector<Complex> v;
    for (const auto& x : b) v.push_back(x.to_complex());
    vs.push_back(std::move(v));
  }
  return canonicalize(vs, s.ambient_dim());
}

/// Library OperatorSpace equals the span of oracle matrices.
inline bool same_space(const Ops& lib, const std::vector<Mat>& ref) {
  std::vector<Vec> a, b;
  for (const auto& s : lib.basis_matrices()) a.push_back(oracle::vec_cm(s));
  for (const auto& s : ref) b.push_back(oracle::vec_cm(s));
  const std::size_t n = lib.dom_dim() * lib.cod_dim();
  return lib.dim() == ref.size() && oracle::same_span(a, b, n);
}

inline bool same_subspace(const Sub& lib, const std::vector<Vec>& ref) {
  return lib.dim() == oracle::span_dim(ref, lib.ambient_dim()) && oracle::same_span(lib.basis(), ref, lib.ambient_dim());
}

/// Seeded instance stream used by several suites.
inline std::vector<Instance<Q>> instances(std::size_t per_kind, std::size_t dim_max, std::uint64_t seed) {
  std::vector<Instance<Q>> out;
  SplitMix64 rng(seed);
  for (auto kind : kAllKinds)
    for (std::size_t i = 0; i < per_kind; ++i) out.push_back(generate_instance<Q>({rng.next(), kind, 2, dim_max}));
  return out;
}

#define EXPECT_LCOMM_ERROR(stmt, k)                         \
  do {                                                      \
    try {                                                   \
      stmt;                                                 \
      ADD_FAILURE() << "no error thrown";                   \
    } catch (const ::lcomm::Error& err_) {                  \
      EXPECT_EQ(err_.kind(), k) << err_.what();             \
    }                                                       \
  } while (0)

}  // namespace t
