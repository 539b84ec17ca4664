#pragma once

#include <complex>
#include <map>
#include <vector>

#include "cuspcalc/matrix.hpp"
#include "cuspcalc/scalar.hpp"
#include "cuspcalc/sfunc.hpp"

namespace cuspcalc {

using SMat = Mat<SFunc>;
using GMat = Mat<GaussRat>;

/// Matrix family in xi with entries r0(xi) + r1(xi) (1 + xi^2)^(-1/2). Smooth on the line;
/// the square-root part lets the expansions at xi -> +inf and xi -> -inf differ.
class SuspendedFamily {
 public:
  SuspendedFamily() = default;
  explicit SuspendedFamily(int n) : m_(n) {}
  explicit SuspendedFamily(SMat m) : m_(std::move(m)) {}

  static SuspendedFamily scalar(const SFunc& f, int n = 1) { return SuspendedFamily(SMat::identity(n, f)); }
  static SuspendedFamily constant(const GMat& c);
  static SuspendedFamily identity(int n) { return scalar(SFunc(1), n); }
  /// Smooth step: 0 at xi -> -inf, 1 at xi -> +inf.
  static SFunc step();

  int dim() const { return m_.dim(); }
  const SMat& matrix() const { return m_; }
  const SFunc& operator()(int r, int c) const { return m_(r, c); }
  bool is_zero() const { return m_.is_zero(); }

  SuspendedFamily& operator+=(const SuspendedFamily& o) { m_ += o.m_; return *this; }
  SuspendedFamily& operator-=(const SuspendedFamily& o) { m_ -= o.m_; return *this; }
  SuspendedFamily& operator*=(const SFunc& s) { m_ *= s; return *this; }
  friend SuspendedFamily operator+(SuspendedFamily a, const SuspendedFamily& b) { return a += b; }
  friend SuspendedFamily operator-(SuspendedFamily a, const SuspendedFamily& b) { return a -= b; }
  friend SuspendedFamily operator-(const SuspendedFamily& a) { return SuspendedFamily(-a.m_); }
  friend SuspendedFamily operator*(SuspendedFamily a, const SFunc& s) { return a *= s; }
  friend SuspendedFamily operator*(const SuspendedFamily& a, const SuspendedFamily& b) {
    return SuspendedFamily(a.m_ * b.m_);
  }
  friend bool operator==(const SuspendedFamily& a, const SuspendedFamily& b) { return a.m_ == b.m_; }

  SuspendedFamily derivative() const;
  /// xi -> -xi
  SuspendedFamily reflect() const;
  /// Pointwise inverse; NotInvertible with a witness when singular somewhere on the closed line.
  SuspendedFamily inverse() const;

  int top_degree() const;
  /// Coefficient of abs(xi)^j on branch sigma, j >= lowest.
  std::map<int, GMat> homogeneous(int sigma, int lowest) const;

  RegularizedIntegral trace_integral() const { return line_integral(m_.trace()); }
  std::vector<std::complex<double>> eval(double xi) const;

 private:
  SMat m_;
};

SuspendedFamily sus_mul(const SuspendedFamily& a, const SuspendedFamily& b);
SuspendedFamily sus_inverse(const SuspendedFamily& a);

/// Sign conventions for [t, .] and for eta; only their product is observable.
struct SuspendedConventions {
  int t_sign = 1;     // [t, B] = t_sign * i * dB/dxi
  int eta_sign = -1;  // eta(A) = -eta_sign * bTr(A^-1 [t,A] + [t,A] A^-1)
};

SuspendedFamily t_commutator(const SuspendedFamily& b, const SuspendedConventions& c = {});
/// (2 pi)^-1 times the constant term of the regularized integral of the trace.
ExactScalar bTr(const SuspendedFamily& b);
ExactScalar tTr(const SuspendedFamily& b, const SuspendedConventions& c = {});
ExactScalar eta_suspended(const SuspendedFamily& a, const SuspendedConventions& c = {});

}  // namespace cuspcalc
