#pragma once

#include <complex>
#include <compare>
#include <stdexcept>
#include <string>

#include "cuspcalc/rational.hpp"

namespace cuspcalc {

/// Element of Q(i), stored as a pair of canonical rationals.
struct GaussRat {
  Rational re;
  Rational im;

  GaussRat() = default;
  GaussRat(long v) : re(v), im(0) {}  // NOLINT(google-explicit-constructor)
  GaussRat(Rational r) : re(std::move(r)), im(0) {}  // NOLINT
  GaussRat(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

  static GaussRat i() { return {Rational(0), Rational(1)}; }
  static GaussRat frac(long num, long den) {
    Rational r(num, den);
    r.canonicalize();
    return GaussRat(r);
  }

  bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
  bool is_real() const { return sgn(im) == 0; }
  bool is_one() const { return re == 1 && sgn(im) == 0; }

  GaussRat conj() const { return {re, -im}; }
  Rational norm() const { return re * re + im * im; }
  GaussRat inverse() const;

  GaussRat& operator+=(const GaussRat& o) { re += o.re; im += o.im; return *this; }
  GaussRat& operator-=(const GaussRat& o) { re -= o.re; im -= o.im; return *this; }
  GaussRat& operator*=(const GaussRat& o);
  GaussRat& operator/=(const GaussRat& o) { return *this *= o.inverse(); }

  std::complex<double> to_complex() const { return {re.get_d(), im.get_d()}; }
  std::string str() const;

  friend GaussRat operator+(GaussRat a, const GaussRat& b) { return a += b; }
  friend GaussRat operator-(GaussRat a, const GaussRat& b) { return a -= b; }
  friend GaussRat operator*(GaussRat a, const GaussRat& b) { return a *= b; }
  friend GaussRat operator/(GaussRat a, const GaussRat& b) { return a /= b; }
  friend GaussRat operator-(const GaussRat& a) { return {-a.re, -a.im}; }
  friend bool operator==(const GaussRat& a, const GaussRat& b) { return a.re == b.re && a.im == b.im; }
  friend bool operator<(const GaussRat& a, const GaussRat& b) {
    if (a.re != b.re) return a.re < b.re;
    return a.im < b.im;
  }
};

GaussRat pow(const GaussRat& base, long e);

/// Canonical n/d.
inline Rational rat(long n, long d) {
  Rational r(n, d);
  r.canonicalize();
  return r;
}

/// Parses "a/b", "(c)i", "a/b + (c/d)i", "(a/b+c/di)" style Gaussian rationals.
GaussRat parse_gauss(const std::string& text);

/// Nearest Gaussian rational with denominator bounded by max_den (continued fractions).
GaussRat rationalize(std::complex<double> z, long max_den);

}  // namespace cuspcalc
