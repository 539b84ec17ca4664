#include <doctest.h>

#include "cuspcalc/hochschild.hpp"
#include "cuspcalc/random.hpp"

using namespace cuspcalc;

namespace {

const Trunc kT{-4, 4};

CuspElement letter(Rng& g, int n) { return random_element(g, n, kT, 1, -2, 1, -2, 1); }

Chain<CuspModel> random_chain(Rng& g, const CuspModel& m, int degree, int words = 2) {
  Chain<CuspModel> c(degree);
  const int count = std::uniform_int_distribution<int>(1, words)(g);
  for (int w = 0; w < count; ++w) {
    std::vector<CuspElement> l;
    for (int k = 0; k <= degree; ++k) l.push_back(letter(g, m.n));
    c.add(random_gauss(g), std::move(l));
  }
  return c;
}

Laurent random_laurent(Rng& g) {
  Laurent l;
  for (int k = -2; k <= 2; ++k)
    if (std::bernoulli_distribution(0.6)(g)) l.set(k, random_gauss(g));
  return l;
}

Chain<LaurentModel> random_laurent_chain(Rng& g, int degree) {
  Chain<LaurentModel> c(degree);
  for (int w = 0; w < 2; ++w) {
    std::vector<Laurent> l;
    for (int k = 0; k <= degree; ++k) l.push_back(random_laurent(g));
    c.add(random_gauss(g), std::move(l));
  }
  return c;
}

}  // namespace

TEST_CASE("b and b' on small words") {
  Rng g(41);
  CuspModel m{1, kT};
  CuspElement a = letter(g, 1), b = letter(g, 1);
  auto bc = hoch_b(m, Chain<CuspModel>::word({a, b}));
  CHECK(bc.degree() == 0);
  CHECK(chain_is_zero(bc - Chain<CuspModel>::word({commutator(a, b)})));
  auto bp = hoch_bprime(m, Chain<CuspModel>::word({a, b}));
  CHECK(chain_is_zero(bp - Chain<CuspModel>::word({star(a, b)})));
  CHECK(hoch_b(m, Chain<CuspModel>::word({a})).words().empty());
}

TEST_CASE("normalize uses multilinearity") {
  Rng g(42);
  CuspModel m{1, kT};
  CuspElement a = letter(g, 1), b = letter(g, 1);
  Chain<CuspModel> c(1);
  c.add(GaussRat(2), {a, b});
  c.add(GaussRat(-1), {a * GaussRat(2), b});
  CHECK(chain_is_zero(c));
  Chain<CuspModel> d(1);
  d.add(GaussRat(1), {a, b});
  d.add(GaussRat(1), {b, a});
  CHECK_FALSE(chain_is_zero(d));
}

TEST_CASE("Hochschild identities on random cusp chains") {
  Rng g(43);
  int b2 = 0, bp2 = 0, bb = 0, bbB = 0, braw = 0, bbraw = 0;
  const int count = 40;
  for (int i = 0; i < count; ++i) {
    CuspModel m{i % 5 == 4 ? 2 : 1, kT};
    const int deg = i % 4;
    auto c = random_chain(g, m, deg);
    if (chain_is_zero(hoch_b(m, hoch_b(m, c)))) ++b2;
    if (chain_is_zero(hoch_bprime(m, hoch_bprime(m, c)))) ++bp2;
    if (deg <= 2) {
      auto B = cyclic_B(m, c);
      if (drop_degenerate(m, cyclic_B(m, B)).words().empty()) ++bb;
      if (drop_degenerate(m, hoch_b(m, B) + cyclic_B(m, hoch_b(m, c))).words().empty()) ++bbB;
      auto R = cyclic_B_raw(m, c);
      if (chain_is_zero(cyclic_B_raw(m, R))) ++braw;
      if (chain_is_zero(hoch_b(m, R) + cyclic_B_raw(m, hoch_b(m, c)))) ++bbraw;
    } else {
      ++bb, ++bbB, ++braw, ++bbraw;
    }
  }
  CHECK(b2 == count);
  CHECK(bp2 == count);
  CHECK(bb == count);
  CHECK(bbB == count);
  CHECK(braw == count);
  CHECK(bbraw == count);
}

TEST_CASE("B on degree 0") {
  CuspModel m{1, kT};
  Rng g(44);
  CuspElement a = letter(g, 1);
  auto B = cyclic_B(m, Chain<CuspModel>::word({a}));
  CHECK(chain_is_zero(B - Chain<CuspModel>::word({m.unit(), a})));
  // the literal B is not nilpotent on raw chains
  CHECK_FALSE(chain_is_zero(cyclic_B(m, B)));
}

TEST_CASE("contraction anticommutes with b") {
  Rng g(45);
  int ok = 0;
  const int count = 100;
  const DerivationKind kinds[] = {DerivationKind::LogX, DerivationKind::LogQ, DerivationKind::Tilde};
  for (int i = 0; i < count; ++i) {
    CuspModel m{i % 5 == 4 ? 2 : 1, kT};
    auto d = derivation(kinds[i % 3]);
    auto c = random_chain(g, m, 1 + i % 3);
    auto lhs = hoch_b(m, contract_iD(m, c, d)) + contract_iD(m, hoch_b(m, c), d);
    if (chain_is_zero(lhs)) ++ok;
  }
  CHECK(ok == count);
  CuspModel m{1, kT};
  CuspElement a = letter(g, 1), b = letter(g, 1);
  CHECK(contract_iD(m, Chain<CuspModel>::word({a}), derivation(DerivationKind::LogX)).words().empty());
  auto one = contract_iD(m, Chain<CuspModel>::word({a, b}), derivation(DerivationKind::LogX));
  CHECK(chain_is_zero(one - Chain<CuspModel>::word({star(a, log_derivation(b, LogKind::LogX))})));
}

TEST_CASE("suspended model identities") {
  Rng g(46);
  SuspendedModel m{2};
  for (int i = 0; i < 20; ++i) {
    Chain<SuspendedModel> c(2);
    c.add(GaussRat(1), {random_family(g, 2, 0, -2), random_family(g, 2, 0, -2), random_family(g, 2, 0, -2)});
    CHECK(chain_is_zero(hoch_b(m, hoch_b(m, c))));
    CHECK(chain_is_zero(cyclic_B_raw(m, cyclic_B_raw(m, c))));
  }
}

TEST_CASE("HKR map") {
  Rng g(47);
  LaurentModel m;
  Laurent f = random_laurent(g), h = random_laurent(g);
  CHECK(hkr_chi(Chain<LaurentModel>::word({f})).f == f);
  LaurentForm w = hkr_chi(Chain<LaurentModel>::word({f, h}));
  CHECK(w.f.is_zero());
  CHECK(w.g == f * h.derivative());
  int ok = 0;
  for (int i = 0; i < 100; ++i) {
    auto c = random_laurent_chain(g, 1 + i % 3);
    if (hkr_chi(hoch_b(m, c)).is_zero()) ++ok;
  }
  CHECK(ok == 100);
}

TEST_CASE("trace functionals are 0-cocycles") {
  Rng g(48);
  CuspModel m{1, kT};
  for (int i = 0; i < 10; ++i) {
    CuspElement a = letter(g, 1), b = letter(g, 1);
    CHECK(rTr(commutator(a, b)).is_zero());
    CuspElement p = random_ends_element(g, 1, kT), q = random_ends_element(g, 1, kT);
    CHECK(iTr(commutator(p, q)).is_zero());
  }
}

TEST_CASE("tau cocycle") {
  Rng g(49);
  CuspModel m{1, kT};
  const SFunc decay = SFunc::var() * SFunc(SFunc::one_plus_z2(-1));
  CuspElement f1 = CuspElement::scalar_z(decay, 1, kT);
  CuspElement g0 = letter(g, 1);
  // p = 0
  auto tau0 = make_tau_cocycle(Chain<CuspModel>::word({f1}));
  CHECK(tau0({g0}) == hdTr(star(f1, g0)));
  // linearity in a slot
  auto tau1 = make_tau_cocycle(Chain<CuspModel>::word({m.unit(), f1}));
  CuspElement g1 = letter(g, 1), h1 = letter(g, 1);
  CHECK(tau1({g0, g1 + h1 * GaussRat(3)}) == tau1({g0, g1}) + ExactScalar(3) * tau1({g0, h1}));
  // antisymmetrized tensor of commuting functions of z, arguments of nonnegative x-order
  auto anti = make_tau_cocycle(antisymmetrize(Chain<CuspModel>::word({m.unit(), f1})));
  for (int i = 0; i < 20; ++i) {
    std::vector<CuspElement> args;
    for (int k = 0; k < 3; ++k) args.push_back(random_element(g, 1, kT, 1, -2, 0, -2, 2));
    CHECK(coboundary(anti, m, args).is_zero());
  }
}

TEST_CASE("beta cocycle") {
  Rng g(50);
  CuspModel m{1, kT};
  CuspElement b = random_ends_element(g, 1, kT);
  CuspElement one = CuspElement::zero(1, kT);
  for (End e : {End::Plus, End::Minus}) one.set_end(e, 0, SuspendedFamily::identity(1));
  CHECK(beta_cocycle(b, one).is_zero());
  CHECK(beta_direct(b, one).is_zero());
  for (int i = 0; i < 20; ++i) {
    const int n = i % 4 == 3 ? 2 : 1;
    CuspElement p = random_ends_element(g, n, kT, -1, 2), q = random_ends_element(g, n, kT, -1, 2),
                r = random_ends_element(g, n, kT, -1, 2);
    CHECK(beta_cocycle(p, q) == beta_direct(p, q));
    Cochain beta = [](const std::vector<CuspElement>& a) { return beta_cocycle(a[0], a[1]); };
    CHECK(coboundary(beta, CuspModel{n, kT}, {p, q, r}).is_zero());
  }
}
