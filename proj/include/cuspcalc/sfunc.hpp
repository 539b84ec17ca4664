#pragma once

#include <complex>
#include <map>
#include <string>

#include "cuspcalc/poly.hpp"
#include "cuspcalc/regint.hpp"

namespace cuspcalc {

/// End of the compactified line: +1 for z -> +inf (x = 1/z), -1 for z -> -inf (x = -1/z).
enum class End : int { Plus = 1, Minus = -1 };
inline int end_sign(End e) { return static_cast<int>(e); }
inline int end_index(End e) { return e == End::Plus ? 0 : 1; }
inline End end_from_index(int k) { return k == 0 ? End::Plus : End::Minus; }

/// r0(v) + r1(v) * s(v) with s = (1 + v^2)^(-1/2); used for interior coefficients in z and
/// for suspended families in xi.
/// s is even and equals x(1 + x^2)^(-1/2) at either end (x = 1/abs(v)), so it separates the ends.
class SFunc {
 public:
  SFunc() = default;
  SFunc(long c) : r0_(c) {}  // NOLINT(google-explicit-constructor)
  SFunc(GaussRat c) : r0_(std::move(c)) {}  // NOLINT(google-explicit-constructor)
  SFunc(RatFunc r0) : r0_(std::move(r0)) {}  // NOLINT(google-explicit-constructor)
  SFunc(RatFunc r0, RatFunc r1) : r0_(std::move(r0)), r1_(std::move(r1)) {}

  static SFunc var() { return SFunc(RatFunc::var()); }
  static SFunc s() { return SFunc(RatFunc(), RatFunc(1)); }
  /// (1 + z^2)^e for integer e.
  static RatFunc one_plus_z2(int e);

  const RatFunc& r0() const { return r0_; }
  const RatFunc& r1() const { return r1_; }
  bool is_zero() const { return r0_.is_zero() && r1_.is_zero(); }
  bool is_rational() const { return r1_.is_zero(); }

  SFunc& operator+=(const SFunc& o);
  SFunc& operator-=(const SFunc& o);
  SFunc& operator*=(const SFunc& o);
  friend SFunc operator+(SFunc a, const SFunc& b) { return a += b; }
  friend SFunc operator-(SFunc a, const SFunc& b) { return a -= b; }
  friend SFunc operator*(SFunc a, const SFunc& b) { return a *= b; }
  friend SFunc operator-(const SFunc& a) { return SFunc(-a.r0_, -a.r1_); }
  friend bool operator==(const SFunc& a, const SFunc& b) { return a.r0_ == b.r0_ && a.r1_ == b.r1_; }

  SFunc derivative() const;
  /// v -> -v
  SFunc reflect() const { return SFunc(r0_.reflect(), r1_.reflect()); }
  /// D_z = -i d/dz
  SFunc D() const;
  SFunc inverse() const;
  std::complex<double> eval(double z) const;

  /// Laurent coefficients in x_e at the given end, for orders up to highest.
  std::map<int, GaussRat> expand_at_end(End e, int highest) const;
  /// Lowest x-order with nonzero coefficient at the end (large if zero).
  int order_at_end(End e) const;
  /// Coefficients of abs(v)^j on branch sign(v) = sigma as v -> sigma*inf, j >= lowest.
  std::map<int, GaussRat> homogeneous(int sigma, int lowest) const;
  /// Largest homogeneous degree over both branches (very negative for zero).
  int top_degree() const;

  std::string str() const;

 private:
  RatFunc r0_, r1_;
};

/// Regularized integral over [-T, T] of an interior coefficient.
RegularizedIntegral line_integral(const SFunc& f);

}  // namespace cuspcalc
