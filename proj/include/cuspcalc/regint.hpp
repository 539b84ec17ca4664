#pragma once

#include <map>
#include <optional>
#include <vector>

#include "cuspcalc/poly.hpp"
#include "cuspcalc/scalar.hpp"

namespace cuspcalc {

/// Divergent part contributed by one end of the window.
struct EndExpansion {
  std::map<int, ExactScalar> power;  // T^j, j > 0
  ExactScalar log_coeff;

  bool is_zero() const { return power.empty() && log_coeff.is_zero(); }
};

/// Asymptotic expansion of an integral over a growing window:
/// sum_j p_j T^j + L log T + constant + o(1), kept separately per end.
struct RegularizedIntegral {
  ExactScalar constant;
  EndExpansion upper;  // window edge at +T
  EndExpansion lower;  // window edge at -T
  std::map<int, ExactScalar> higher_log;  // log^k T, k >= 2; always empty for rational data

  ExactScalar logT_coeff() const { return upper.log_coeff + lower.log_coeff; }
  std::map<int, ExactScalar> power_part() const;
  /// True when no divergent part is present.
  bool strict() const { return upper.is_zero() && lower.is_zero() && higher_log.empty(); }

  RegularizedIntegral& operator+=(const RegularizedIntegral& o);
  RegularizedIntegral& operator*=(const ExactScalar& s);
  friend RegularizedIntegral operator+(RegularizedIntegral a, const RegularizedIntegral& b) { return a += b; }
  friend bool operator==(const RegularizedIntegral& a, const RegularizedIntegral& b);

  /// Re-expresses the expansion for window edges T_e = T * w_e(1/T), with w_e given by
  /// its Taylor coefficients (w_e(0) = 1).
  RegularizedIntegral rewindowed(const std::vector<GaussRat>& w_upper, const std::vector<GaussRat>& w_lower) const;
};

/// A piece of the real line; unset bounds are infinite.
struct Piece {
  RatFunc f;
  std::optional<Rational> lo;
  std::optional<Rational> hi;
};

/// Regularized integral of a piecewise rational function over [-T, T].
RegularizedIntegral reg_integral(const std::vector<Piece>& pieces);
/// Regularized integral over the whole line.
RegularizedIntegral reg_integral(const RatFunc& f);

/// Taylor coefficients of w(u)^j up to u^len-1.
std::vector<GaussRat> series_power(const std::vector<GaussRat>& w, int j, std::size_t len);
std::vector<GaussRat> series_mul(const std::vector<GaussRat>& a, const std::vector<GaussRat>& b, std::size_t len);
/// (1 + c u)^(a), a rational, truncated.
std::vector<GaussRat> binomial_series(const GaussRat& c, const Rational& a, std::size_t len);

}  // namespace cuspcalc
