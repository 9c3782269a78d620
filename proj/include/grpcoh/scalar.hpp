#pragma once

// Coefficient types for formal sums: complex doubles for the analytic
// modules, exact Gaussian rationals for integration and cohomology.

#include <complex>
#include <string>

#include <gmpxx.h>

namespace grpcoh {

using Complex = std::complex<double>;
using Rational = mpq_class;

/// Exact element of Q(i).
struct GaussianRational {
  Rational re;
  Rational im;

  GaussianRational() = default;
  GaussianRational(long v) : re(v), im(0) {}  // NOLINT(implicit)
  GaussianRational(Rational r, Rational i = 0) : re(std::move(r)), im(std::move(i)) {
    re.canonicalize();
    im.canonicalize();
  }

  bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }

  GaussianRational& operator+=(const GaussianRational& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  GaussianRational& operator-=(const GaussianRational& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }

  friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
  friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
  friend GaussianRational operator-(const GaussianRational& a) {
    return GaussianRational(Rational(-a.re), Rational(-a.im));
  }
  friend GaussianRational operator*(const GaussianRational& a, const GaussianRational& b) {
    return GaussianRational(Rational(a.re * b.re - a.im * b.im), Rational(a.re * b.im + a.im * b.re));
  }
  friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
    return a.re == b.re && a.im == b.im;
  }
  friend bool operator!=(const GaussianRational& a, const GaussianRational& b) { return !(a == b); }

  Complex to_complex() const { return {re.get_d(), im.get_d()}; }
  std::string to_string() const;
};

/// Exact conversion: every finite double is a dyadic rational.
Rational rational_from_double(double v);
GaussianRational exact_from_complex(const Complex& z);

/// Traits consumed by BasicFormalSum.
template <class C>
struct CoeffTraits;

template <>
struct CoeffTraits<Complex> {
  static constexpr double prune_threshold = 1e-12;
  static bool negligible(const Complex& c) { return std::abs(c) < prune_threshold; }
  static double magnitude(const Complex& c) { return std::abs(c); }
  static Complex zero() { return {0.0, 0.0}; }
  static Complex one() { return {1.0, 0.0}; }
};

template <>
struct CoeffTraits<GaussianRational> {
  static bool negligible(const GaussianRational& c) { return c.is_zero(); }
  static double magnitude(const GaussianRational& c) { return std::abs(c.to_complex()); }
  static GaussianRational zero() { return {}; }
  static GaussianRational one() { return GaussianRational(1); }
};

}  // namespace grpcoh
