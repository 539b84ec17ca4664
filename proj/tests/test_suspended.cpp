#include <cmath>
#include <numbers>

#include "cuspcalc/errors.hpp"
#include "cuspcalc/random.hpp"
#include "cuspcalc/suspended.hpp"
#include "doctest.h"

using namespace cuspcalc;

namespace {

const GaussRat I = GaussRat::i();

SFunc xi() { return SFunc::var(); }
SFunc inv_quadratic() { return SFunc(SFunc::one_plus_z2(-1)); }
SFunc mobius() { return SFunc((RatFunc::var() - RatFunc(I)) * RatFunc(Poly(1), {Pole{-I, 1}})); }
ExactScalar pi_inv() { return ExactScalar::pi(-1); }

}  // namespace

TEST_CASE("sus_mul examples") {
  Rng g(1);
  SuspendedFamily a = random_family(g, 2, 1, -2);
  CHECK(sus_mul(a, SuspendedFamily::identity(2)) == a);
  SuspendedFamily p = SuspendedFamily::scalar(xi() - SFunc(I)), q = SuspendedFamily::scalar(xi() + SFunc(I));
  CHECK(sus_mul(p, q) == SuspendedFamily::scalar(xi() * xi() + SFunc(1)));
  GMat m(2), n(2);
  m(0, 1) = GaussRat(1);
  n(1, 0) = GaussRat(1);
  CHECK(sus_mul(SuspendedFamily::constant(m), SuspendedFamily::constant(n)) == SuspendedFamily::constant(m * n));
  CHECK(!(sus_mul(SuspendedFamily::constant(n), SuspendedFamily::constant(m)) == SuspendedFamily::constant(m * n)));
}

TEST_CASE("sus_inverse examples") {
  CHECK(sus_inverse(SuspendedFamily::identity(2)) == SuspendedFamily::identity(2));
  SFunc inv_mob((RatFunc::var() + RatFunc(I)) * RatFunc(Poly(1), {Pole{I, 1}}));
  CHECK(sus_inverse(SuspendedFamily::scalar(mobius())) == SuspendedFamily::scalar(inv_mob));
  try {
    sus_inverse(SuspendedFamily::scalar(xi() * inv_quadratic()));
    CHECK(false);
  } catch (const NotInvertible& e) {
    CHECK(e.witness == "0");
  }
  Rng g(2);
  for (int k = 0; k < 30; ++k) {
    auto [a, ainv] = random_invertible_family(g, 1 + k % 2);
    CHECK(sus_inverse(a) == ainv);
    CHECK(a * ainv == SuspendedFamily::identity(a.dim()));
  }
}

TEST_CASE("t_commutator examples") {
  SuspendedConventions conv;
  CHECK(t_commutator(SuspendedFamily::identity(2), conv).is_zero());
  CHECK(t_commutator(SuspendedFamily::scalar(xi(), 2), conv) == SuspendedFamily::scalar(SFunc(I), 2));
  Rng g(3);
  for (int k = 0; k < 20; ++k) {
    SuspendedFamily a = random_family(g, 2, 1, -3), b = random_family(g, 2, 1, -3);
    CHECK(t_commutator(a * b, conv) == t_commutator(a, conv) * b + a * t_commutator(b, conv));
  }
}

TEST_CASE("bTr examples") {
  CHECK(bTr(SuspendedFamily::scalar(inv_quadratic())) == ExactScalar(GaussRat(rat(1, 2))));
  CHECK(bTr(SuspendedFamily::scalar(xi() * inv_quadratic() * inv_quadratic())).is_zero());
  // the square-root ring: integral of s is 2 log 2 after removing 2 log T
  CHECK(bTr(SuspendedFamily::scalar(SFunc::s())) == ExactScalar::log_rational(2) * pi_inv());
}

TEST_CASE("bTr agrees with quadrature on decaying families") {
  Rng g(4);
  for (int k = 0; k < 10; ++k) {
    SuspendedFamily a = random_family(g, 2, -2, -4);
    std::complex<double> exact = bTr(a).to_complex() * 2.0 * std::numbers::pi;
    double tmax = std::asinh(1e4);
    int steps = 100000;
    double h = 2 * tmax / steps;
    std::complex<double> acc = 0;
    for (int s = 0; s <= steps; ++s) {
      double t = -tmax + s * h, x = std::sinh(t);
      auto v = a.eval(x);
      double w = (s == 0 || s == steps) ? 1 : (s % 2 ? 4 : 2);
      acc += w * (v[0] + v[3]) * std::cosh(t);
    }
    acc *= h / 3;
    CHECK(std::abs(acc - exact) < 1e-3);
  }
}

TEST_CASE("tTr examples") {
  CHECK(tTr(SuspendedFamily::scalar(inv_quadratic())).is_zero());
  ExactScalar expect = ExactScalar(GaussRat(Rational(0), rat(1, 2))) * pi_inv();
  CHECK(tTr(SuspendedFamily::scalar(SuspendedFamily::step())) == expect);
}

TEST_CASE("trace properties on random pairs") {
  Rng g(5);
  for (int k = 0; k < 100; ++k) {
    int n = 1 + k % 2;
    bool convergent = k % 2 == 0;
    SuspendedFamily a = convergent ? random_family(g, n, -1, -3) : random_family(g, n, 1, -2);
    SuspendedFamily b = convergent ? random_family(g, n, -1, -3) : random_family(g, n, 1, -2);
    SuspendedFamily c = a * b - b * a;
    CHECK(bTr(c).is_zero());
    CHECK(tTr(c).is_zero());
  }
}

TEST_CASE("eta examples") {
  CHECK(eta_suspended(SuspendedFamily::constant(GMat::identity(2, GaussRat(3)))).is_zero());
  // contour oracle: the integral of A'/A for the Mobius factor is 2 pi i
  std::complex<double> integral = 0;
  double tmax = std::asinh(1e5);
  int steps = 200000;
  double h = 2 * tmax / steps;
  for (int s = 0; s <= steps; ++s) {
    double t = -tmax + s * h, x = std::sinh(t);
    std::complex<double> z(x, 0);
    std::complex<double> dlog = 1.0 / (z - std::complex<double>(0, 1)) - 1.0 / (z + std::complex<double>(0, 1));
    double w = (s == 0 || s == steps) ? 1 : (s % 2 ? 4 : 2);
    integral += w * dlog * std::cosh(t);
  }
  integral *= h / 3;
  CHECK(std::abs(integral - std::complex<double>(0, 2 * std::numbers::pi)) < 1e-3);
  SuspendedConventions conv;
  ExactScalar eta = eta_suspended(SuspendedFamily::scalar(mobius()), conv);
  // eta = 2 i t_sign (-eta_sign) (2 pi)^-1 * 2 pi i
  CHECK(eta == ExactScalar(-2 * conv.t_sign * -conv.eta_sign));
  SuspendedConventions flipped{conv.t_sign, -conv.eta_sign};
  CHECK(eta_suspended(SuspendedFamily::scalar(mobius()), flipped) == -eta);
}

TEST_CASE("eta invariance properties") {
  Rng g(6);
  for (int k = 0; k < 50; ++k) {
    int n = 1 + k % 2;
    auto [a, ainv] = random_invertible_family(g, n);
    ExactScalar e = eta_suspended(a);
    CHECK(eta_suspended(ainv) == -e);
    auto [U, Uinv] = random_invertible_gmat(g, n);
    CHECK(eta_suspended(SuspendedFamily::constant(U) * a * SuspendedFamily::constant(Uinv)) == e);
  }
  for (int k = 0; k < 30; ++k) {
    auto [a, ai] = random_ring_unit(g);
    auto [b, bi] = random_ring_unit(g);
    SuspendedFamily A = SuspendedFamily::scalar(a), B = SuspendedFamily::scalar(b);
    CHECK(eta_suspended(A * B) == eta_suspended(A) + eta_suspended(B));
  }
}
