#include <doctest.h>

#include "cuspcalc/errors.hpp"
#include "cuspcalc/hochschild.hpp"
#include "cuspcalc/indexcore.hpp"
#include "cuspcalc/random.hpp"

using namespace cuspcalc;

namespace {

const Trunc kT{-6, 6};

CuspElement wall(int n = 1) {
  const SFunc phi = SFunc::var() * SFunc::s();
  return CuspElement::zeta(n, kT) - CuspElement::scalar_z(phi, n, kT) * GaussRat::i();
}

CuspElement interior_only(Rng& g, int n) {
  // x-order >= 7 at both ends: below the end truncation, so the end layer is empty
  CuspElement a(n, kT);
  const SFunc decay(SFunc::one_plus_z2(-4));
  for (int j = -2; j <= 1; ++j) {
    BranchPair c{SMat(n), SMat(n)};
    for (int r = 0; r < n; ++r)
      for (int k = 0; k < n; ++k) {
        c.plus(r, k) = decay * SFunc(random_gauss(g));
        c.minus(r, k) = decay * SFunc(random_gauss(g));
      }
    a.set_sigma(j, c);
  }
  return a;
}

ExactScalar integer(long v) { return ExactScalar(GaussRat(v)); }

}  // namespace

TEST_CASE("If examples") {
  const CuspElement one = CuspElement::identity(1, kT);
  CHECK(If(one, one).is_zero());
  const SuspendedFamily f = SuspendedFamily::scalar(SFunc::var() - SFunc(GaussRat(Rational(0), Rational(2))));
  CHECK(If(CuspElement::family(f, kT), CuspElement::family(f.inverse(), kT)).is_zero());
  const CuspElement a = wall();
  CHECK(If(a, parametrix(a, {3, 3})) == integer(1));
  const CuspElement a2 = star(a, a);
  CHECK(If(a2, parametrix(a2, {3, 4})) == integer(2));
  const CuspElement adj = CuspElement::zeta(1, kT) + CuspElement::scalar_z(SFunc::var() * SFunc::s(), 1, kT) * GaussRat::i();
  CHECK(If(adj, parametrix(adj, {3, 3})) == integer(-1));
}

TEST_CASE("If needs the x^1 and degree -1 coefficients") {
  const Trunc t{-1, 0};
  const CuspElement a = CuspElement::zeta(1, t) - CuspElement::scalar_z(SFunc::var() * SFunc::s(), 1, t) * GaussRat::i();
  CHECK_THROWS_AS(If(a, parametrix(a, {1, 1})), TruncationLoss);
}

TEST_CASE("Bif vanishes on the model ideals") {
  Rng g(61);
  int ok2 = 0, ok4 = 0;
  for (int i = 0; i < 50; ++i) {
    const int n = i % 5 == 4 ? 2 : 1;
    const CuspElement b = random_element(g, n, kT, 1, -2, 1, -2, 1);
    const CuspElement m2 = interior_only(g, n);
    if (Bif(m2, b).is_zero() && Bif(b, m2).is_zero()) ++ok2;
    const CuspElement m4 = random_ends_element(g, n, kT, -1, 2);
    if (Bif(m4, b).is_zero() && Bif(b, m4).is_zero()) ++ok4;
  }
  CHECK(ok2 == 50);
  CHECK(ok4 == 50);
}

TEST_CASE("Bif through the commutator") {
  Rng g(62);
  for (int i = 0; i < 20; ++i) {
    const int n = i % 4 == 3 ? 2 : 1;
    const CuspElement a = random_element(g, n, kT, 1, -2, 1, -2, 1), b = random_element(g, n, kT, 1, -2, 1, -2, 1);
    CHECK(Bif(a, b) == Bif_commutator(a, b));
    CHECK(Bif_commutator(a, b) == -Bif_commutator(b, a));
  }
  CHECK(Bif(CuspElement::x_power(-1, 1, kT), CuspElement::x_power(1, 1, kT)).is_zero());
}

TEST_CASE("boundary index") {
  CHECK(boundary_index(CuspElement::identity(1, kT)).is_zero());
  CHECK(boundary_index(CuspElement::x_power(-1, 1, kT)).is_zero());
  Rng g(63);
  const CuspElement a = random_elliptic_element(g, 1, kT);
  const ExactScalar base = boundary_index(a);
  // q' = q r^step with r = (xi^2 + 2 xi + 2) / (1 + xi^2)
  const RatFunc r = RatFunc(Poly({GaussRat(2), GaussRat(2), GaussRat(1)})) * SFunc::one_plus_z2(-1);
  SFunc rs(1), rinv(1);
  for (int step = 0; step < 5; ++step) {
    CHECK(boundary_index(a, RegularizerQ::standard().scaled(rs, rinv)) == base);
    rs *= SFunc(r);
    rinv *= SFunc(r.inverse());
  }
  // a path of boundary-invertible elements zeta - i phi + t
  const CuspElement w = wall();
  const ExactScalar w0 = boundary_index(w);
  for (int step = 1; step < 5; ++step)
    CHECK(boundary_index(w + CuspElement::identity(1, kT) * GaussRat(rat(step, 2))) == w0);
}

TEST_CASE("If is a Hochschild 1-cocycle") {
  Rng g(64);
  Cochain phi = [](const std::vector<CuspElement>& a) { return If(a[0], a[1]); };
  int ok = 0;
  for (int i = 0; i < 50; ++i) {
    const int n = i % 5 == 4 ? 2 : 1;
    std::vector<CuspElement> args;
    for (int k = 0; k < 3; ++k) args.push_back(random_element(g, n, kT, 1, -2, 1, -2, 1));
    if (coboundary(phi, CuspModel{n, kT}, args).is_zero()) ++ok;
  }
  CHECK(ok == 50);
}

TEST_CASE("If is stable beyond the stability radius") {
  Rng g(65);
  std::vector<CuspElement> examples = {wall(), star(wall(), wall()), random_wall_element(g, 2, kT).first};
  for (const auto& a : examples) {
    const StabilityRadius r = stability_radius(a);
    const CuspElement b = parametrix(a, {r.P, r.M});
    const ExactScalar base = If(a, b);
    int ok = 0;
    for (int i = 0; i < 20; ++i) {
      const CuspElement e = random_element(g, a.dim(), kT, -r.M, -r.M - 2, -r.P, -r.P - 2, 2);
      if (If(a, b + e) == base) ++ok;
    }
    CHECK(ok == 20);
  }
}

TEST_CASE("eta component and the indicial eta invariant") {
  Rng g(66);
  int ok = 0, sf = 0, strict = 0;
  for (int i = 0; i < 50; ++i) {
    const int n = i % 3 == 2 ? 2 : 1;
    const CuspElement a = random_ti_elliptic(g, n, kT);
    const IndexReport rep = assemble_index(a, RegularizerQ::standard(), IndexMode::TranslationInvariant);
    ExactScalar eta;
    for (End e : {End::Plus, End::Minus}) eta += eta_suspended(indicial_family(a, e));
    if (rep.etab == eta) ++ok;
    const CuspElement b = parametrix(a, {rep.radius.P, rep.radius.M});
    if (invariant_functional(a, b, Functional::SF).value.is_zero()) ++sf;
    if (rep.asb_strict) ++strict;
  }
  CHECK(ok == 50);
  CHECK(sf == 50);
  CHECK(strict == 50);
}

TEST_CASE("assembled index") {
  Rng g(67);
  const IndexReport w = assemble_index(wall());
  CHECK(w.assembled == integer(1));
  CHECK(w.integer);
  CHECK(w.corner_elliptic);
  CHECK(w.bif.is_zero());
  CHECK(assemble_index(CuspElement::x_power(-1, 1, kT)).assembled.is_zero());
  CHECK_THROWS_AS(assemble_index(wall(), RegularizerQ::standard(), IndexMode::TranslationInvariant),
                  HypothesisViolation);
  for (int i = 0; i < 10; ++i) {
    auto [a, index] = random_wall_element(g, 1 + i % 2, kT);
    const IndexReport rep = assemble_index(a);
    CHECK(rep.assembled == integer(index));
    CHECK(rep.assembled == rep.if_value);
  }
  const CuspElement z = CuspElement::scalar_z(SFunc::var(), 1, kT);
  const CuspElement osc = CuspElement::zeta(1, kT) - z * GaussRat::i();
  CHECK_FALSE(corner_elliptic(osc));
}
