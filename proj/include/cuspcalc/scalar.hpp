#pragma once

#include <complex>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "cuspcalc/gaussian.hpp"

namespace cuspcalc {

/// Transcendental generator: log(p) for a rational prime p, or arg(g_p) where
/// g_p = a + b i (a > b > 0) is the canonical Gaussian prime above p = 1 mod 4.
struct Atom {
  enum class Kind { Log, Arg };
  Kind kind;
  Integer prime;

  friend bool operator==(const Atom& a, const Atom& b) { return a.kind == b.kind && a.prime == b.prime; }
  friend bool operator<(const Atom& a, const Atom& b) {
    if (a.kind != b.kind) return a.kind < b.kind;
    return a.prime < b.prime;
  }
  double value() const;
  std::string str() const;
};

/// pi^pi_exp times a product of atom powers.
struct Monomial {
  int pi_exp = 0;
  std::vector<std::pair<Atom, int>> atoms;  // sorted, exponents > 0

  bool is_one() const { return pi_exp == 0 && atoms.empty(); }
  Monomial operator*(const Monomial& o) const;
  friend bool operator==(const Monomial& a, const Monomial& b) {
    return a.pi_exp == b.pi_exp && a.atoms == b.atoms;
  }
  friend bool operator<(const Monomial& a, const Monomial& b);
  std::string str() const;
  double value() const;
};

/// Element of Q(i)[pi, pi^-1, log p_k, arg g_k] in normal form. Zero is the
/// empty map; two values are equal iff their normal forms agree.
class ExactScalar {
 public:
  ExactScalar() = default;
  ExactScalar(long v) : ExactScalar(GaussRat(v)) {}  // NOLINT(google-explicit-constructor)
  ExactScalar(const GaussRat& c);                    // NOLINT(google-explicit-constructor)
  ExactScalar(const GaussRat& c, Monomial m);

  static ExactScalar pi(int exponent = 1);
  static ExactScalar i() { return ExactScalar(GaussRat::i()); }
  /// Natural log of a positive rational, expanded over the prime basis.
  static ExactScalar log_rational(const Rational& r);
  /// Principal complex logarithm of a nonzero Gaussian rational.
  static ExactScalar log_gauss(const GaussRat& w);
  /// Principal argument in (-pi, pi].
  static ExactScalar arg_gauss(const GaussRat& w);

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  /// Value of the monomial-1 coefficient (the purely algebraic part).
  GaussRat constant_part() const;
  GaussRat coefficient(const Monomial& m) const;
  const std::map<Monomial, GaussRat>& terms() const { return terms_; }

  ExactScalar& operator+=(const ExactScalar& o);
  ExactScalar& operator-=(const ExactScalar& o);
  ExactScalar& operator*=(const ExactScalar& o);

  friend ExactScalar operator+(ExactScalar a, const ExactScalar& b) { return a += b; }
  friend ExactScalar operator-(ExactScalar a, const ExactScalar& b) { return a -= b; }
  friend ExactScalar operator*(const ExactScalar& a, const ExactScalar& b);
  friend ExactScalar operator-(const ExactScalar& a);
  friend bool operator==(const ExactScalar& a, const ExactScalar& b) { return a.terms_ == b.terms_; }

  /// Divides by a Gaussian rational or a pure pi power; other divisors are rejected.
  ExactScalar divided_by(const ExactScalar& d) const;

  std::complex<double> to_complex() const;
  std::string str() const;
  static ExactScalar parse(const std::string& text);

 private:
  void add_term(const Monomial& m, const GaussRat& c);
  std::map<Monomial, GaussRat> terms_;
};

/// Prime factorization of a positive integer (trial division + Pollard rho).
std::vector<std::pair<Integer, int>> factor_integer(const Integer& n);

}  // namespace cuspcalc
