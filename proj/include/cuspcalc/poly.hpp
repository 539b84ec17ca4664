#pragma once

#include <complex>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "cuspcalc/gaussian.hpp"

namespace cuspcalc {

/// Univariate polynomial over Q(i); coefficients lowest degree first, no trailing zeros.
class Poly {
 public:
  Poly() = default;
  Poly(GaussRat c);  // NOLINT(google-explicit-constructor)
  explicit Poly(std::vector<GaussRat> coeffs);

  static Poly monomial(int degree, GaussRat c = GaussRat(1));
  /// (v - root)
  static Poly linear(const GaussRat& root);

  int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
  bool is_zero() const { return c_.empty(); }
  const std::vector<GaussRat>& coeffs() const { return c_; }
  GaussRat coeff(int k) const;
  GaussRat leading() const { return c_.empty() ? GaussRat(0) : c_.back(); }

  GaussRat eval(const GaussRat& v) const;
  std::complex<double> eval(std::complex<double> v) const;
  Poly derivative() const;
  /// f(-v)
  Poly reflect() const;

  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const GaussRat& s);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator-(Poly a) { return a *= GaussRat(-1); }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(Poly a, const GaussRat& s) { return a *= s; }
  friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }

  /// Euclidean division; returns {quotient, remainder}.
  std::pair<Poly, Poly> divmod(const Poly& d) const;
  /// Divides by (v - root) assuming exactness; returns false if root is not a root.
  bool divide_root(const GaussRat& root);
  Poly monic() const;

  std::string str(const std::string& var = "v") const;

 private:
  void trim();
  std::vector<GaussRat> c_;
};

Poly gcd(Poly a, Poly b);

/// Floating-point roots of a nonconstant polynomial (Durand-Kerner).
std::vector<std::complex<double>> numeric_roots(const Poly& p);

/// Roots over Q(i) with multiplicities; throws UnsupportedPole when some root is not a Gaussian rational.
std::vector<std::pair<GaussRat, int>> gaussian_roots(const Poly& p);

struct Pole {
  GaussRat at;
  int mult;
  friend bool operator==(const Pole& a, const Pole& b) { return a.at == b.at && a.mult == b.mult; }
};

/// Partial fractions: poly part plus sum of coeff/(v - pole)^order.
struct PartialFractions {
  Poly poly;
  struct Term {
    GaussRat pole;
    int order;
    GaussRat coeff;
  };
  std::vector<Term> terms;
};

/// Scalar rational function num / prod (v - p)^m with the denominator kept factored.
/// Normal form: no pole is a root of num; poles sorted; zero has no poles.
class RatFunc {
 public:
  RatFunc() = default;
  RatFunc(GaussRat c);  // NOLINT(google-explicit-constructor)
  RatFunc(long c) : RatFunc(GaussRat(c)) {}  // NOLINT(google-explicit-constructor)
  RatFunc(Poly num);  // NOLINT(google-explicit-constructor)
  RatFunc(Poly num, std::vector<Pole> den);

  static RatFunc var() { return RatFunc(Poly::monomial(1)); }
  /// c / (v - p)^m
  static RatFunc pole_term(const GaussRat& p, int m, const GaussRat& c = GaussRat(1));

  const Poly& num() const { return num_; }
  const std::vector<Pole>& den() const { return den_; }
  Poly den_poly() const;
  int den_degree() const;
  /// Order at infinity: deg num - deg den (very negative for zero).
  int order_at_infinity() const;
  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.empty(); }
  bool is_constant() const { return den_.empty() && num_.degree() <= 0; }
  GaussRat constant_value() const { return num_.coeff(0); }

  GaussRat eval(const GaussRat& v) const;
  std::complex<double> eval(std::complex<double> v) const;
  bool has_pole_at(const GaussRat& v) const;
  /// True if some pole lies on the real interval [lo, hi] (bounds may be infinite).
  bool has_real_pole_in(double lo, double hi) const;

  RatFunc derivative() const;
  RatFunc reflect() const;  // f(-v)
  RatFunc inverse() const;

  RatFunc& operator+=(const RatFunc& o);
  RatFunc& operator-=(const RatFunc& o);
  RatFunc& operator*=(const RatFunc& o);
  RatFunc& operator*=(const GaussRat& c);
  friend RatFunc operator+(RatFunc a, const RatFunc& b) { return a += b; }
  friend RatFunc operator-(RatFunc a, const RatFunc& b) { return a -= b; }
  friend RatFunc operator*(RatFunc a, const RatFunc& b) { return a *= b; }
  friend RatFunc operator-(const RatFunc& a);
  friend RatFunc operator/(const RatFunc& a, const RatFunc& b) { return a * b.inverse(); }
  friend bool operator==(const RatFunc& a, const RatFunc& b) { return a.num_ == b.num_ && a.den_ == b.den_; }

  /// Coefficients of v^n at v -> infinity for n from order_at_infinity() down to lowest.
  std::map<int, GaussRat> expand_at_infinity(int lowest) const;
  /// Taylor coefficients at v = 0 for n in [0, highest]; requires no pole at 0.
  std::vector<GaussRat> taylor_at_zero(int highest) const;
  PartialFractions partial_fractions() const;
  static RatFunc from_partial_fractions(const PartialFractions& pf);

  std::string str(const std::string& var = "v") const;

 private:
  void reduce();
  Poly num_;
  std::vector<Pole> den_;
};

}  // namespace cuspcalc
