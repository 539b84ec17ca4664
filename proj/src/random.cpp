#include "cuspcalc/random.hpp"

#include <algorithm>

namespace cuspcalc {

namespace {

int uniform_int(Rng& g, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(g); }

// v^a (1 + v^2)^(-n), optionally times s.
SFunc basis_term(int a, int n, bool with_s) {
  RatFunc r = RatFunc(Poly::monomial(a)) * SFunc::one_plus_z2(-n);
  return with_s ? SFunc(RatFunc(), r) : SFunc(r);
}

}  // namespace

GaussRat random_gauss(Rng& g, int span, int max_den) {
  return {rat(uniform_int(g, -span, span), uniform_int(g, 1, max_den)),
          rat(uniform_int(g, -span, span), uniform_int(g, 1, max_den))};
}

GaussRat random_unit_coeff(Rng& g) {
  for (;;) {
    GaussRat c = random_gauss(g);
    if (!c.is_zero()) return c;
  }
}

SFunc random_sfunc(Rng& g, int top, int bottom) {
  SFunc f;
  int terms = uniform_int(g, 1, 3);
  for (int t = 0; t < terms; ++t) {
    int d = uniform_int(g, bottom, top);
    bool with_s = uniform_int(g, 0, 1) == 1;
    int n = uniform_int(g, 0, 2);
    int a = d + 2 * n + (with_s ? 1 : 0);
    while (a < 0) {
      ++n;
      a += 2;
    }
    f += basis_term(a, n, with_s) * SFunc(random_gauss(g));
  }
  return f;
}

std::pair<SFunc, SFunc> random_ring_unit(Rng& g) {
  const GaussRat i = GaussRat::i();
  RatFunc vp = RatFunc::var() + RatFunc(i), vm = RatFunc::var() - RatFunc(i);
  SFunc R(vm * RatFunc(Poly(1), {Pole{-i, 1}})), Rinv(vp * RatFunc(Poly(1), {Pole{i, 1}}));
  SFunc Wp(RatFunc(), vp), Wm(RatFunc(), vm);
  GaussRat c = random_unit_coeff(g);
  SFunc u(c), uinv(c.inverse());
  int blocks = uniform_int(g, 0, 2);
  for (int b = 0; b < blocks; ++b) {
    switch (uniform_int(g, 0, 3)) {
      case 0: u *= R; uinv *= Rinv; break;
      case 1: u *= Rinv; uinv *= R; break;
      case 2: u *= Wp; uinv *= Wm; break;
      default: u *= Wm; uinv *= Wp; break;
    }
  }
  return {u, uinv};
}

GMat random_gmat(Rng& g, int n) {
  GMat m(n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) m(r, c) = random_gauss(g);
  return m;
}

std::pair<GMat, GMat> random_invertible_gmat(Rng& g, int n) {
  GMat L = GMat::identity(n), U = GMat::identity(n), D(n);
  for (int r = 0; r < n; ++r) {
    D(r, r) = random_unit_coeff(g);
    for (int c = 0; c < r; ++c) L(r, c) = random_gauss(g);
    for (int c = r + 1; c < n; ++c) U(r, c) = random_gauss(g);
  }
  GMat m = L * D * U;
  return {m, m.inverse([](const GaussRat& x) { return x.inverse(); })};
}

SuspendedFamily random_family(Rng& g, int n, int top, int bottom) {
  SMat m(n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) m(r, c) = random_sfunc(g, top, bottom);
  return SuspendedFamily(m);
}

std::pair<SuspendedFamily, SuspendedFamily> random_invertible_family(Rng& g, int n) {
  SMat T(n);
  SFunc det_inv(1);
  for (int r = 0; r < n; ++r) {
    auto [u, uinv] = random_ring_unit(g);
    T(r, r) = u;
    det_inv *= uinv;
    for (int c = r + 1; c < n; ++c) T(r, c) = random_sfunc(g, 0, -2);
  }
  SMat Tinv = T.adjugate() * det_inv;
  auto [U, Uinv] = random_invertible_gmat(g, n);
  auto lift = [](const GMat& m) { return m.map([](const GaussRat& v) { return SFunc(v); }); };
  return {SuspendedFamily(lift(U) * T * lift(Uinv)), SuspendedFamily(lift(U) * Tinv * lift(Uinv))};
}

}  // namespace cuspcalc

namespace cuspcalc {

SMat random_smat(Rng& g, int n, int top, int bottom) {
  SMat m(n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) m(r, c) = random_sfunc(g, top, bottom);
  return m;
}

CuspElement random_element(Rng& g, int n, Trunc t, int top, int bottom, int ztop, int zbottom, int terms) {
  CuspElement a = CuspElement::zero(n, t);
  const int count = std::uniform_int_distribution<int>(1, terms)(g);
  for (int i = 0; i < count; ++i) {
    a += CuspElement::separable(random_smat(g, n, ztop, zbottom), random_family(g, n, top, bottom), t);
  }
  return a;
}

CuspElement random_ends_element(Rng& g, int n, Trunc t, int kmin, int kmax) {
  CuspElement a = CuspElement::zero(n, t);
  for (End e : {End::Plus, End::Minus})
    for (int k = kmin; k <= std::min(kmax, t.K); ++k)
      if (std::bernoulli_distribution(0.7)(g)) a.set_end(e, k, random_family(g, n, -1, -3));
  return a;
}

CuspElement random_elliptic_element(Rng& g, int n, Trunc t) {
  CuspElement a = CuspElement::family(random_invertible_family(g, n).first, t);
  return a + star(CuspElement::x_power(1, n, t), random_element(g, n, t, -1, -2, 0, -1, 1));
}

namespace {

int random_slope(Rng& g) {
  const int a = std::uniform_int_distribution<int>(1, 3)(g);
  return std::bernoulli_distribution(0.5)(g) ? a : -a;
}

SMat lift(const GMat& m) {
  return m.map([](const GaussRat& v) { return SFunc(v); });
}

}  // namespace

std::pair<CuspElement, long> random_wall_element(Rng& g, int n, Trunc t) {
  const SFunc phi = SFunc::var() * SFunc::s();
  SMat d(n);
  long index = 0;
  for (int k = 0; k < n; ++k) {
    const int a = random_slope(g);
    index += a > 0 ? 1 : -1;
    const GaussRat b(std::uniform_int_distribution<int>(-2, 2)(g));
    d(k, k) = SFunc(b) + phi * SFunc(GaussRat(Rational(0), Rational(-a)));
  }
  auto [U, Uinv] = random_invertible_gmat(g, n);
  return {CuspElement::zeta(n, t) + CuspElement::function_of_z(lift(U) * d * lift(Uinv), t), index};
}

CuspElement random_ti_elliptic(Rng& g, int n, Trunc t) {
  SMat d(n);
  for (int k = 0; k < n; ++k) d(k, k) = SFunc::var() + SFunc(GaussRat(Rational(0), Rational(-random_slope(g))));
  auto [U, Uinv] = random_invertible_gmat(g, n);
  auto [V, Vinv] = random_invertible_gmat(g, n);
  return CuspElement::family(SuspendedFamily(lift(U) * d * lift(V)), t);
}

}  // namespace cuspcalc
