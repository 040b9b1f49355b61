#pragma once

#include <gmpxx.h>

#include <cmath>
#include <complex>
#include <concepts>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>

#include "lcomm/errors.hpp"

namespace lcomm {

// ---------------------------------------------------------------------------
// Rational helpers
// ---------------------------------------------------------------------------

/// Canonical "p/q" rendering; q is always printed, even when it is 1.
inline std::string rational_to_string(const mpq_class& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

/// Accepts "p", "p/q", "-p/q" (optional leading '+'). Rejects zero denominators
/// and anything that is not a plain decimal integer pair.
inline mpq_class parse_rational(std::string_view text) {
  auto digits_ok = [](std::string_view s, bool allow_sign) {
    if (s.empty()) return false;
    std::size_t i = 0;
    if (allow_sign && (s[0] == '-' || s[0] == '+')) i = 1;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
      if (s[i] < '0' || s[i] > '9') return false;
    return true;
  };
  const auto slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
  if (!digits_ok(num, true) || !digits_ok(den, false))
    throw Error(ErrorKind::ParseError, "malformed rational '" + std::string(text) + "'");
  std::string n(num);
  if (!n.empty() && n[0] == '+') n.erase(0, 1);
  mpz_class zn(n, 10), zd(std::string(den), 10);
  if (zd == 0) throw Error(ErrorKind::ParseError, "zero denominator in '" + std::string(text) + "'");
  mpq_class q(zn, zd);
  q.canonicalize();
  return q;
}

// ---------------------------------------------------------------------------
// GaussRational: exact element of Q(i)
// ---------------------------------------------------------------------------

class GaussRational {
 public:
  GaussRational() = default;
  GaussRational(long v) : re_(v) {}  // NOLINT(google-explicit-constructor)
  GaussRational(int v) : re_(v) {}   // NOLINT(google-explicit-constructor)
  GaussRational(mpq_class re) : re_(std::move(re)) {}  // NOLINT(google-explicit-constructor)
  GaussRational(mpq_class re, mpq_class im) : re_(std::move(re)), im_(std::move(im)) {}

  /// num/den as a real Gaussian rational.
  static GaussRational frac(long num, long den) {
    mpq_class q(num, den);
    q.canonicalize();
    return GaussRational(std::move(q));
  }

  static GaussRational from_strings(std::string_view re, std::string_view im) {
    return {parse_rational(re), parse_rational(im)};
  }

  const mpq_class& real() const { return re_; }
  const mpq_class& imag() const { return im_; }

  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool is_real() const { return sgn(im_) == 0; }

  GaussRational conj() const { return {re_, -im_}; }
  /// |z|^2, exact.
  mpq_class norm() const { return re_ * re_ + im_ * im_; }

  GaussRational operator-() const { return {-re_, -im_}; }

  GaussRational& operator+=(const GaussRational& o) {
    re_ += o.re_;
    if (sgn(o.im_) != 0) im_ += o.im_;
    return *this;
  }
  GaussRational& operator-=(const GaussRational& o) {
    re_ -= o.re_;
    if (sgn(o.im_) != 0) im_ -= o.im_;
    return *this;
  }
  GaussRational& operator*=(const GaussRational& o) {
    *this = *this * o;
    return *this;
  }
  GaussRational& operator/=(const GaussRational& o) {
    *this = *this / o;
    return *this;
  }

  friend GaussRational operator+(GaussRational a, const GaussRational& b) { return a += b; }
  friend GaussRational operator-(GaussRational a, const GaussRational& b) { return a -= b; }

  friend GaussRational operator*(const GaussRational& a, const GaussRational& b) {
    const bool ar = a.is_real(), br = b.is_real();
    if (ar && br) return GaussRational(mpq_class(a.re_ * b.re_));
    if (ar) return {a.re_ * b.re_, a.re_ * b.im_};
    if (br) return {a.re_ * b.re_, a.im_ * b.re_};
    return {a.re_ * b.re_ - a.im_ * b.im_, a.re_ * b.im_ + a.im_ * b.re_};
  }

  friend GaussRational operator/(const GaussRational& a, const GaussRational& b) {
    if (b.is_zero()) throw std::domain_error("GaussRational: division by zero");
    if (b.is_real()) return {a.re_ / b.re_, a.im_ / b.re_};
    const mpq_class d = b.norm();
    return {(a.re_ * b.re_ + a.im_ * b.im_) / d, (a.im_ * b.re_ - a.re_ * b.im_) / d};
  }

  friend bool operator==(const GaussRational& a, const GaussRational& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }

  friend std::ostream& operator<<(std::ostream& os, const GaussRational& z) {
    os << z.re_.get_str();
    if (!z.is_real()) os << (sgn(z.im_) < 0 ? "-" : "+") << mpq_class(abs(z.im_)).get_str() << "i";
    return os;
  }

  std::complex<double> to_complex() const { return {re_.get_d(), im_.get_d()}; }

 private:
  mpq_class re_{0};
  mpq_class im_{0};
};

using Complex = std::complex<double>;

// ---------------------------------------------------------------------------
// Field traits
// ---------------------------------------------------------------------------

template <class F>
struct FieldTraits;

template <>
struct FieldTraits<GaussRational> {
  static constexpr bool exact = true;
  static constexpr std::string_view backend = "exact";
};

template <>
struct FieldTraits<Complex> {
  static constexpr bool exact = false;
  static constexpr std::string_view backend = "float";
  /// Relative singular-value cutoff used for every rank decision.
  static constexpr double rank_tol = 1e-9;
  /// Absolute tolerance for individual scalar decisions (e.g. "is A scalar").
  static constexpr double zero_tol = 1e-9;
};

template <class F>
concept Field = requires(const F& a, const F& b) {
  { FieldTraits<F>::exact } -> std::convertible_to<bool>;
  { a + b } -> std::convertible_to<F>;
  { a * b } -> std::convertible_to<F>;
  { a / b } -> std::convertible_to<F>;
};

template <class F>
inline constexpr bool is_exact_v = FieldTraits<F>::exact;

using ExactField = GaussRational;
using FloatField = Complex;

/// Structural zero: skips work on entries that are literally zero.
inline bool is_exact_zero(const GaussRational& x) { return x.is_zero(); }
inline bool is_exact_zero(const Complex& x) { return x.real() == 0.0 && x.imag() == 0.0; }

/// Decision-level zero test: exact in Q(i), tolerance-based for doubles.
inline bool is_zero(const GaussRational& x) { return x.is_zero(); }
inline bool is_zero(const Complex& x) { return std::abs(x) <= FieldTraits<Complex>::zero_tol; }

inline GaussRational conj(const GaussRational& x) { return x.conj(); }

inline double magnitude(const GaussRational& x) { return std::abs(x.to_complex()); }
inline double magnitude(const Complex& x) { return std::abs(x); }

inline Complex to_complex(const GaussRational& x) { return x.to_complex(); }
inline Complex to_complex(const Complex& x) { return x; }

template <Field F>
F from_int(long v) {
  if constexpr (is_exact_v<F>) return GaussRational(v);
  else return Complex(static_cast<double>(v), 0.0);
}

}  // namespace lcomm
