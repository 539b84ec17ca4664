#include "cuspcalc/gaussian.hpp"

#include <cmath>

#include "cuspcalc/scalar.hpp"

namespace cuspcalc {

GaussRat GaussRat::inverse() const {
  if (is_zero()) throw std::domain_error("division by zero in Q(i)");
  Rational n = norm();
  return {re / n, -im / n};
}

GaussRat& GaussRat::operator*=(const GaussRat& o) {
  if (sgn(o.im) == 0) {
    re *= o.re;
    if (sgn(im) != 0) im *= o.re;
    return *this;
  }
  if (sgn(o.re) == 0) {
    Rational r = -im * o.im;
    im = re * o.im;
    re = std::move(r);
    return *this;
  }
  if (sgn(im) == 0) {
    im = re * o.im;
    re *= o.re;
    return *this;
  }
  Rational r = re * o.re - im * o.im;
  Rational s = re * o.im + im * o.re;
  re = std::move(r);
  im = std::move(s);
  return *this;
}

GaussRat pow(const GaussRat& base, long e) {
  if (e < 0) return pow(base.inverse(), -e);
  GaussRat result(1), b = base;
  while (e > 0) {
    if (e & 1) result *= b;
    b *= b;
    e >>= 1;
  }
  return result;
}

std::string GaussRat::str() const { return ExactScalar(*this).str(); }

GaussRat parse_gauss(const std::string& text) {
  ExactScalar s = ExactScalar::parse(text);
  if (!s.is_constant()) throw std::invalid_argument("expected a Gaussian rational: " + text);
  return s.constant_part();
}

namespace {

Rational rationalize_real(double v, long max_den) {
  // Best rational approximation by continued fractions.
  long h0 = 0, h1 = 1, k0 = 1, k1 = 0;
  double x = v;
  for (int iter = 0; iter < 64; ++iter) {
    double a = std::floor(x);
    long ai = static_cast<long>(a);
    long h2 = ai * h1 + h0, k2 = ai * k1 + k0;
    if (k2 > max_den) break;
    h0 = h1; h1 = h2; k0 = k1; k1 = k2;
    double frac = x - a;
    if (std::abs(frac) < 1e-12) break;
    x = 1.0 / frac;
  }
  if (k1 == 0) return Rational(0);
  Rational r(h1, k1);
  r.canonicalize();
  return r;
}

}  // namespace

GaussRat rationalize(std::complex<double> z, long max_den) {
  return {rationalize_real(z.real(), max_den), rationalize_real(z.imag(), max_den)};
}

}  // namespace cuspcalc
