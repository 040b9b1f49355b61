#pragma once

#include <cstddef>
#include <sstream>
#include <string>
#include <vector>

#include "lcomm/matrix.hpp"

namespace lcomm {

/// Coefficients in ascending degree order; the zero polynomial is empty.
template <Field F>
using Poly = std::vector<F>;

template <Field F>
Poly<F> poly_trim(Poly<F> p) {
  while (!p.empty() && is_zero(p.back())) p.pop_back();
  return p;
}

template <Field F>
std::size_t poly_degree(const Poly<F>& p) {
  return p.empty() ? 0 : p.size() - 1;
}

template <Field F>
Poly<F> poly_mul(const Poly<F>& a, const Poly<F>& b) {
  if (a.empty() || b.empty()) return {};
  Poly<F> out(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (is_exact_zero(a[i])) continue;
    for (std::size_t j = 0; j < b.size(); ++j)
      if (!is_exact_zero(b[j])) out[i + j] += a[i] * b[j];
  }
  return out;
}

/// (z - λ)^k.
template <Field F>
Poly<F> linear_power(const F& lambda, std::size_t k) {
  Poly<F> out{from_int<F>(1)};
  const Poly<F> lin{-lambda, from_int<F>(1)};
  for (std::size_t i = 0; i < k; ++i) out = poly_mul(out, lin);
  return out;
}

template <Field F>
struct PolyDivision {
  Poly<F> quotient;
  Poly<F> remainder;
};

template <Field F>
PolyDivision<F> poly_divmod(Poly<F> a, const Poly<F>& b) {
  const Poly<F> d = poly_trim(b);
  if (d.empty()) throw std::domain_error("polynomial division by zero");
  a = poly_trim(std::move(a));
  if (a.size() < d.size()) return {{}, a};
  Poly<F> q(a.size() - d.size() + 1);
  const F lead_inv = from_int<F>(1) / d.back();
  for (std::size_t i = q.size(); i-- > 0;) {
    const F c = a[i + d.size() - 1] * lead_inv;
    q[i] = c;
    if (is_exact_zero(c)) continue;
    for (std::size_t j = 0; j < d.size(); ++j)
      if (!is_exact_zero(d[j])) a[i + j] -= c * d[j];
  }
  a.resize(d.size() - 1);
  return {poly_trim(std::move(q)), poly_trim(std::move(a))};
}

template <Field F>
Poly<F> poly_monic(Poly<F> p) {
  p = poly_trim(std::move(p));
  if (p.empty()) return p;
  const F inv = from_int<F>(1) / p.back();
  for (auto& c : p) c = inv * c;
  p.back() = from_int<F>(1);
  return p;
}

/// Monic gcd; gcd(0, 0) = 0.
template <Field F>
Poly<F> poly_gcd(Poly<F> a, Poly<F> b) {
  a = poly_trim(std::move(a));
  b = poly_trim(std::move(b));
  while (!b.empty()) {
    Poly<F> r = poly_divmod(a, b).remainder;
    a = std::move(b);
    b = std::move(r);
  }
  return poly_monic(std::move(a));
}

template <Field F>
F poly_eval(const Poly<F>& p, const F& z) {
  F acc{};
  for (std::size_t i = p.size(); i-- > 0;) acc = acc * z + p[i];
  return acc;
}

template <Field F>
std::string poly_to_string(const Poly<F>& p) {
  if (p.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = p.size(); i-- > 0;) {
    if (is_exact_zero(p[i])) continue;
    if (!first) os << " + ";
    first = false;
    os << "(" << p[i] << ")";
    if (i >= 1) os << "z";
    if (i >= 2) os << "^" << i;
  }
  return os.str();
}

}  // namespace lcomm
