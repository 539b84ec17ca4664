#include <doctest.h>

#include "cuspcalc/errors.hpp"
#include "cuspcalc/random.hpp"
#include "cuspcalc/traces.hpp"

using namespace cuspcalc;

namespace {

const Trunc kT{-5, 5};
const CalibrationConstants K = CalibrationConstants::defaults();

CuspElement rich(Rng& g, int n = 1) {
  return random_element(g, n, kT, 2, -2, 2, -2, 3);
}

SFunc z() { return SFunc::var(); }
SFunc step(const SFunc& v) { return (SFunc(1) + v * SFunc::s()) * SFunc(GaussRat(rat(1, 2))); }

// (xi^2 + 2 xi + 2)/(xi^2 + 1) and its inverse
std::pair<SFunc, SFunc> ratio() {
  Poly num({GaussRat(2), GaussRat(2), GaussRat(1)});
  RatFunc r = RatFunc(num) * SFunc::one_plus_z2(-1);
  return {SFunc(r), SFunc(r.inverse())};
}

}  // namespace

TEST_CASE("rTr readout examples") {
  CHECK(rTr(CuspElement::identity(2, kT)).is_zero());
  // + end: x^1 coefficient 1; zeta tail 1/abs(zeta) on the + branch only
  const SFunc f = step(z()) * z() * SFunc(SFunc::one_plus_z2(-1));
  const SFunc g = step(z()) * z() * SFunc(SFunc::one_plus_z2(-1));
  CuspElement a = CuspElement::separable(SMat::identity(1, f), SuspendedFamily::scalar(g), kT);
  CHECK(rTr(a) == K.kappa_r);
  CHECK(rTr(a, K, Readout::Ends) == K.kappa_r);
}

TEST_CASE("rTr is a trace and vanishes on derivations") {
  Rng g(21);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = trial % 4 == 0 ? 2 : 1;
    CuspElement a = rich(g, n), b = rich(g, n);
    REQUIRE(rTr(commutator(a, b)).is_zero());
    if (trial % 5 == 0) REQUIRE(rTr(tilde_derivation(b)).is_zero());
  }
}

TEST_CASE("hdTr examples") {
  const SFunc c = SFunc(SFunc::one_plus_z2(-1));
  CuspElement a = CuspElement::separable(SMat::identity(1, c), SuspendedFamily::scalar(SFunc::s()), kT);
  HadamardResult r = hdTr_full(a);
  CHECK(r.value == ExactScalar(1));
  CHECK(r.strict);
  CuspElement d = CuspElement::family(SuspendedFamily::scalar(SFunc::s()), kT);
  HadamardResult rd = hdTr_full(d);
  CHECK_FALSE(rd.strict);
  CHECK(rd.integral.power_part().at(1) == ExactScalar(4));
}

TEST_CASE("hdTr under a change of boundary defining function") {
  Rng g(22);
  for (int trial = 0; trial < 20; ++trial) {
    const GaussRat c = random_unit_coeff(g);
    const SFunc alpha = SFunc(1) + SFunc(c) * SFunc::s();
    BoundaryFunction xprime{SFunc::s() * alpha};
    CuspElement a = rich(g);
    std::array<std::map<int, GaussRat>, 2> log_alpha;
    for (End e : {End::Plus, End::Minus}) {
      std::vector<GaussRat> h(8, GaussRat(0));
      for (const auto& [k, v] : alpha.expand_at_end(e, 7)) {
        if (k > 0) h[static_cast<std::size_t>(k)] = v;
      }
      const auto l = series_log_one_plus(h, 8);
      for (std::size_t k = 1; k < l.size(); ++k) log_alpha[static_cast<std::size_t>(end_index(e))][static_cast<int>(k)] = l[k];
    }
    REQUIRE(hdTr(a, xprime) - hdTr(a) == rTr_times(a, log_alpha));
  }
}

TEST_CASE("iTr and hiTr examples") {
  CuspElement a(1, kT);
  a.set_end(End::Plus, 1, SuspendedFamily::scalar(SFunc(SFunc::one_plus_z2(-1))));
  CHECK(iTr(a) == K.kappa_i * ExactScalar(GaussRat(rat(1, 2))));

  Rng g(23);
  CuspElement b = star(CuspElement::x_power(4, 1, kT), rich(g));
  REQUIRE(b.bottom() >= 2);
  CHECK(hiTr(b).is_zero());
}

TEST_CASE("change of regularizer") {
  const RegularizerQ q = RegularizerQ::standard();
  const auto [r, rinv] = ratio();
  const RegularizerQ q1 = q.scaled(r, rinv);
  const RegularizerQ q2 = q1.scaled(r * r, rinv * rinv);
  CHECK(log_ratio(q, q, 1, kT).is_zero_mod_trunc());
  CHECK(equal_mod_trunc(log_ratio(q2, q1, 1, kT) + log_ratio(q1, q, 1, kT), log_ratio(q2, q, 1, kT)));
  CHECK(equal_mod_trunc(log_one_plus(CuspElement::family(SuspendedFamily::scalar(r - SFunc(1)), kT)),
                        log_ratio(q1, q, 1, kT)));
  const RegularizerQ order_two{SFunc(RatFunc::var() * SFunc::one_plus_z2(-1)) * SFunc(2)};
  CHECK_THROWS_AS(log_ratio(order_two, q, 1, kT), SharedPrincipalRequired);

  Rng g(24);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = trial % 3 == 0 ? 2 : 1;
    CuspElement a = rich(g, n);
    const ExactScalar lhs = hiTr(a, q1) - hiTr(a, q);
    REQUIRE(lhs == -rTr(star(a, log_ratio(q1, q, n, kT))));
  }
}

TEST_CASE("commutation relations of the regularized traces") {
  Rng g(25);
  int nontrivial = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const int n = trial % 4 == 0 ? 2 : 1;
    CuspElement a = rich(g, n), b = rich(g, n);
    const CuspElement c = commutator(a, b);
    const ExactScalar hi = hiTr(c);
    REQUIRE(hi == rTr(star(a, log_derivation(b, LogKind::LogQ))));
    REQUIRE(hdTr(c) == -rTr(star(a, log_derivation(b, LogKind::LogX))));
    if (!hi.is_zero()) ++nontrivial;
  }
  CHECK(nontrivial > 50);
}

TEST_CASE("residue readouts agree") {
  Rng g(26);
  for (int trial = 0; trial < 100; ++trial) {
    CuspElement a = rich(g, trial % 4 == 0 ? 2 : 1);
    const HadamardResult h = hdTr_full(a);
    REQUIRE(rTr(a) == ExactScalar(K.readout_sign) * K.kappa_d * h.integral.logT_coeff());
    REQUIRE(rTr(a) == rTr(a, K, Readout::Ends));
  }
}
