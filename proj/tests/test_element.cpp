#include <doctest.h>

#include "cuspcalc/element.hpp"
#include "cuspcalc/errors.hpp"
#include "cuspcalc/random.hpp"

using namespace cuspcalc;

namespace {

const Trunc kT{-4, 4};
const GaussRat I = GaussRat::i();

SFunc zvar() { return SFunc::var(); }

CuspElement zeta_minus_iz(Trunc t = kT) {
  return CuspElement::zeta(1, t) - CuspElement::scalar_z(zvar() * SFunc(I), 1, t);
}

CuspElement constant(const GaussRat& c, Trunc t = kT) {
  return CuspElement::identity(1, t) * c;
}

}  // namespace

TEST_CASE("star: identity and the basic correction term") {
  Rng g(11);
  CuspElement a = random_element(g, 2, kT);
  CHECK(equal_mod_trunc(star(CuspElement::identity(2, kT), a), a));
  CHECK(equal_mod_trunc(star(a, CuspElement::identity(2, kT)), a));

  CuspElement zeta = CuspElement::zeta(1, kT);
  CuspElement z = CuspElement::scalar_z(zvar(), 1, kT);
  CuspElement expected = CuspElement::separable(SMat::identity(1, zvar()), SuspendedFamily::scalar(zvar()), kT) -
                         constant(I);
  CHECK(equal_mod_trunc(star(zeta, z), expected));
  // operator model: -i d/dz (z u) = z (-i u') - i u
  CHECK(equal_mod_trunc(commutator(zeta, z), constant(-I)));
}

TEST_CASE("star: functions of x multiply pointwise") {
  CuspElement x = CuspElement::x_power(1, 1, kT);
  CHECK(equal_mod_trunc(star(x, x), CuspElement::x_power(2, 1, kT)));
  CuspElement xi = CuspElement::x_power(-1, 1, kT);
  CHECK(equal_mod_trunc(star(x, xi), CuspElement::identity(1, kT)));
}

TEST_CASE("commutator examples") {
  Rng g(12);
  CuspElement a = random_element(g, 2, kT);
  CHECK(commutator(a, a).is_zero_mod_trunc());
  CuspElement c = commutator(CuspElement::zeta(1, kT), CuspElement::x_power(-1, 1, kT));
  // [zeta, (1+z^2)^(1/2)] = -i z (1+z^2)^(-1/2), leading -i at the + end and +i at the - end
  CHECK(equal_mod_trunc(c, CuspElement::scalar_z(zvar() * SFunc::s() * SFunc(-I), 1, kT)));
  CHECK(c.ends(End::Plus).begin()->first == 0);
  CHECK(c.ends(End::Plus).begin()->second == SuspendedFamily::scalar(SFunc(-I)));
  CHECK(c.ends(End::Minus).begin()->second == SuspendedFamily::scalar(SFunc(I)));
}

TEST_CASE("associativity within truncation") {
  Rng g(13);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = trial % 4 == 0 ? 2 : 1;
    CuspElement a = random_element(g, n, kT), b = random_element(g, n, kT), c = random_element(g, n, kT);
    CuspElement lhs = star(star(a, b), c), rhs = star(a, star(b, c));
    REQUIRE(equal_mod_trunc(lhs, rhs));
  }
}

TEST_CASE("compatibility is preserved") {
  Rng g(14);
  CHECK_FALSE(find_incompatibility(zeta_minus_iz()).has_value());
  for (int trial = 0; trial < 20; ++trial) {
    CuspElement a = random_element(g, 1, kT), b = random_element(g, 1, kT);
    CHECK_FALSE(find_incompatibility(a).has_value());
    CHECK_FALSE(find_incompatibility(star(a, b)).has_value());
    CHECK_FALSE(find_incompatibility(commutator(a, b)).has_value());
    CHECK_FALSE(find_incompatibility(log_derivation(a, LogKind::LogX)).has_value());
    CHECK_FALSE(find_incompatibility(log_derivation(a, LogKind::LogQ)).has_value());
  }
  CuspElement broken = zeta_minus_iz();
  broken.set_end(End::Plus, 2, SuspendedFamily::identity(1));
  CHECK_THROWS_AS(check_compatibility(broken), CompatibilityError);
}

TEST_CASE("deformation laws") {
  Rng g(15);
  for (int trial = 0; trial < 100; ++trial) {
    CuspElement a = random_element(g, 1, kT), b = random_element(g, 1, kT);
    REQUIRE(equal_mod_trunc(star_term(a, b, 0), pointwise_product(a, b)));
    CuspElement p1 = star_term(a, b, 1) - star_term(b, a, 1);
    REQUIRE(equal_mod_trunc(p1, poisson_bracket(a, b) * (-I)));
  }
}

TEST_CASE("log derivations") {
  for (int k : {-2, -1, 1, 3}) {
    CHECK(log_derivation(CuspElement::x_power(k, 1, kT), LogKind::LogX).is_zero_mod_trunc());
  }
  CuspElement d = log_derivation(CuspElement::zeta(1, kT), LogKind::LogX);
  // [log x, -i d/dz] with x = (1+z^2)^(-1/2)
  CuspElement expected = CuspElement::scalar_z(zvar() * SFunc(SFunc::one_plus_z2(-1)) * SFunc(-I), 1, kT);
  CHECK(equal_mod_trunc(d, expected));
  CHECK(d.ends(End::Plus).at(1) == SuspendedFamily::scalar(SFunc(-I)));
  CHECK(d.ends(End::Minus).at(1) == SuspendedFamily::scalar(SFunc(I)));

  Rng g(16);
  CuspElement ti = CuspElement::family(random_family(g, 2, 1, -2), kT);
  CHECK(log_derivation(ti, LogKind::LogQ).is_zero_mod_trunc());

  CHECK(tilde_derivation(CuspElement::identity(1, kT)).is_zero_mod_trunc());
  CuspElement t = tilde_derivation(CuspElement::x_power(-1, 1, kT));
  const SuspendedFamily dlogq = SuspendedFamily::scalar(RegularizerQ::standard().dlogq);
  CHECK(t.ends(End::Plus).begin()->first == 0);
  CHECK(t.ends(End::Plus).begin()->second == dlogq * SFunc(-I));
  CHECK(t.ends(End::Minus).begin()->second == dlogq * SFunc(I));
}

TEST_CASE("log derivations are derivations") {
  Rng g(17);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = trial % 3 == 0 ? 2 : 1;
    CuspElement a = random_element(g, n, kT), b = random_element(g, n, kT);
    for (LogKind kind : {LogKind::LogX, LogKind::LogQ}) {
      CuspElement lhs = log_derivation(star(a, b), kind);
      CuspElement rhs = star(log_derivation(a, kind), b) + star(a, log_derivation(b, kind));
      REQUIRE(equal_mod_trunc(lhs, rhs));
    }
  }
}

TEST_CASE("indicial expansion") {
  auto m = indicial_expand(zeta_minus_iz(), End::Plus);
  REQUIRE(m.size() == 2);
  CHECK(m.at(-1) == SuspendedFamily::scalar(SFunc(-I)));
  CHECK(m.at(0) == SuspendedFamily::scalar(zvar()));
  auto mm = indicial_expand(zeta_minus_iz(), End::Minus);
  CHECK(mm.at(-1) == SuspendedFamily::scalar(SFunc(I)));

  auto x = indicial_expand(CuspElement::x_power(1, 1, kT), End::Plus);
  CHECK(x.begin()->first == 1);
  CHECK(x.begin()->second == SuspendedFamily::identity(1));

  CuspElement interior_only(1, kT);
  interior_only.set_sigma(-1, BranchPair{SMat::identity(1, SFunc(1)), SMat::identity(1, SFunc(-1))});
  CHECK(indicial_expand(interior_only, End::Plus).empty());
}

TEST_CASE("full ellipticity") {
  CHECK(is_fully_elliptic(CuspElement::identity(2, kT)).elliptic);
  CHECK(is_fully_elliptic(zeta_minus_iz()).elliptic);
  EllipticityReport r = is_fully_elliptic(CuspElement::zeta(1, kT));
  CHECK_FALSE(r.elliptic);
  REQUIRE(r.witnesses.size() == 2);
  CHECK(r.witnesses[0].find("xi = 0") != std::string::npos);
  CHECK_THROWS_AS(parametrix(CuspElement::zeta(1, kT), {}), NotFullyElliptic);
}

TEST_CASE("parametrix") {
  const CuspElement one = CuspElement::identity(1, kT);
  CHECK(equal_mod_trunc(parametrix(one, {}), one));
  CHECK(equal_mod_trunc(parametrix(CuspElement::x_power(-1, 1, kT), {}), CuspElement::x_power(1, 1, kT)));

  const ParametrixOrders ord{3, 3};
  CuspElement a = zeta_minus_iz();
  CuspElement b = parametrix(a, ord);
  CHECK(b.sigma().rbegin()->first == -1);
  CHECK(b.sigma().rbegin()->second.plus == SMat::identity(1, SFunc(1)));
  CHECK(b.sigma().rbegin()->second.minus == SMat::identity(1, SFunc(-1)));
  for (const CuspElement& res : {star(a, b) - one, star(b, a) - one}) {
    CHECK(res.top() <= -ord.M);
    CHECK(res.bottom() >= ord.P);
  }

  Rng g(18);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = trial % 2 == 0 ? 2 : 1;
    CuspElement e = random_elliptic_element(g, n, kT);
    REQUIRE(is_fully_elliptic(e).elliptic);
    CuspElement p = parametrix(e, ord);
    CHECK_FALSE(find_incompatibility(p).has_value());
    const CuspElement id = CuspElement::identity(n, kT);
    for (const CuspElement& res : {star(e, p) - id, star(p, e) - id}) {
      CHECK(res.top() <= -ord.M);
      CHECK(res.bottom() >= ord.P);
    }
  }
}
