#include <cmath>
#include <numbers>
#include <random>

#include "cuspcalc/errors.hpp"
#include "cuspcalc/regint.hpp"
#include "cuspcalc/scalar.hpp"
#include "cuspcalc/sfunc.hpp"
#include "doctest.h"

using namespace cuspcalc;

namespace {

GaussRat rand_gauss(std::mt19937& g, int span = 5) {
  std::uniform_int_distribution<int> d(-span, span), den(1, 4);
  return {rat(d(g), den(g)), rat(d(g), den(g))};
}

ExactScalar rand_scalar(std::mt19937& g) {
  std::uniform_int_distribution<int> pick(0, 5);
  ExactScalar s(rand_gauss(g));
  s += ExactScalar(rand_gauss(g)) * ExactScalar::pi(pick(g) - 2);
  s += ExactScalar(rand_gauss(g)) * ExactScalar::log_rational(rat(pick(g) + 2, pick(g) + 1));
  s += ExactScalar(rand_gauss(g)) * ExactScalar::log_gauss(rand_gauss(g) + GaussRat(7));
  return s;
}

// Expansion value at finite window size T.
std::complex<double> evaluate_expansion(const RegularizedIntegral& r, double T) {
  std::complex<double> v = r.constant.to_complex() + r.logT_coeff().to_complex() * std::log(T);
  for (const auto& [k, p] : r.power_part()) v += p.to_complex() * std::pow(T, k);
  return v;
}

template <class F>
std::complex<double> simpson(F&& f, double a, double b, int n) {
  double h = (b - a) / n;
  std::complex<double> acc = f(a) + f(b);
  for (int k = 1; k < n; ++k) acc += (k % 2 ? 4.0 : 2.0) * f(a + k * h);
  return acc * h / 3.0;
}

// Integral over [-T, T] after the substitution z = sinh(t), which tames the tails.
template <class F>
std::complex<double> line_quadrature(F&& f, double T) {
  double tmax = std::asinh(T);
  return simpson([&](double t) { return f(std::sinh(t)) * std::cosh(t); }, -tmax, tmax, 200000);
}

}  // namespace

TEST_CASE("scalar arithmetic examples") {
  CHECK(ExactScalar::pi() * ExactScalar::pi(-1) == ExactScalar(1));
  CHECK(ExactScalar::log_rational(6) - ExactScalar::log_rational(2) == ExactScalar::log_rational(3));
  CHECK(ExactScalar(GaussRat(rat(1, 2), rat(1, 2))) + ExactScalar(GaussRat(rat(1, 2), rat(-1, 2))) == ExactScalar(1));
}

TEST_CASE("scalar normal form soundness") {
  std::mt19937 g(7);
  for (int k = 0; k < 1000; ++k) {
    ExactScalar a = rand_scalar(g);
    CHECK((a - a).is_zero());
  }
}

TEST_CASE("scalar string round trip") {
  std::mt19937 g(11);
  ExactScalar fixed = ExactScalar::parse("3/4 + (1/2)i + (-2)*pi + (1/3)*pi^-1*log(3)");
  CHECK(fixed.str() == "3/4 + (1/2)i + (-2)*pi + (1/3)*pi^-1*log(3)");
  CHECK(ExactScalar::parse("-i") == ExactScalar(-GaussRat::i()));
  CHECK(ExactScalar::parse("2 + i") == ExactScalar(GaussRat(Rational(2), Rational(1))));
  for (int k = 0; k < 200; ++k) {
    ExactScalar a = rand_scalar(g) * rand_scalar(g);
    CHECK(ExactScalar::parse(a.str()) == a);
  }
}

TEST_CASE("principal logarithm matches floating point") {
  std::mt19937 g(3);
  for (int k = 0; k < 300; ++k) {
    GaussRat w = rand_gauss(g, 9);
    if (w.is_zero()) continue;
    std::complex<double> expect = std::log(w.to_complex());
    std::complex<double> got = ExactScalar::log_gauss(w).to_complex();
    CHECK(std::abs(got - expect) < 1e-9);
  }
}

TEST_CASE("partial fraction examples") {
  RatFunc f = RatFunc(Poly(1)) * RatFunc(Poly(1), {Pole{GaussRat::i(), 1}, Pole{-GaussRat::i(), 1}});
  PartialFractions pf = f.partial_fractions();
  REQUIRE(pf.terms.size() == 2);
  GaussRat c = GaussRat(1) / (GaussRat(2) * GaussRat::i());
  for (const auto& t : pf.terms) CHECK(t.coeff == (t.pole == GaussRat::i() ? c : -c));
  CHECK(pf.poly.is_zero());

  PartialFractions lin = RatFunc::var().partial_fractions();
  CHECK(lin.poly == Poly::monomial(1));
  CHECK(lin.terms.empty());

  RatFunc q = RatFunc::var() * RatFunc::var() * f;
  CHECK(q == RatFunc(1) - f);
  // polynomial division oracle: num = quotient * den + remainder
  auto [quot, rem] = q.num().divmod(q.den_poly());
  CHECK(quot == q.partial_fractions().poly);
  CHECK(quot * q.den_poly() + rem == q.num());
}

TEST_CASE("partial fractions reconstruct random functions") {
  std::mt19937 g(5);
  for (int k = 0; k < 100; ++k) {
    std::vector<GaussRat> num;
    for (int d = 0; d < 4; ++d) num.push_back(rand_gauss(g));
    std::vector<Pole> den{{rand_gauss(g), 1 + k % 3}, {rand_gauss(g) + GaussRat(11), 2}};
    RatFunc f(Poly(num), den);
    CHECK(RatFunc::from_partial_fractions(f.partial_fractions()) == f);
  }
}

TEST_CASE("regularized integral examples") {
  RatFunc f(Poly(1), {Pole{GaussRat::i(), 1}, Pole{-GaussRat::i(), 1}});
  RegularizedIntegral r = reg_integral(f);
  CHECK(r.constant == ExactScalar::pi());
  CHECK(r.strict());

  RegularizedIntegral odd = reg_integral(RatFunc::var());
  CHECK(odd.constant.is_zero());
  CHECK(odd.logT_coeff().is_zero());
  CHECK(odd.upper.power.at(2) == ExactScalar(GaussRat(rat(1, 2))));

  RegularizedIntegral half = reg_integral({Piece{RatFunc::pole_term(GaussRat(-2), 1), Rational(1), std::nullopt}});
  CHECK(half.logT_coeff() == ExactScalar(1));
  CHECK(half.constant == -ExactScalar::log_rational(3));
}

TEST_CASE("regularized integral linearity and telescope") {
  std::mt19937 g(9);
  auto rand_rf = [&g]() {
    std::vector<GaussRat> num;
    for (int d = 0; d < 4; ++d) num.push_back(rand_gauss(g));
    GaussRat p = rand_gauss(g);
    if (p.is_real()) p += GaussRat::i();
    return RatFunc(Poly(num), {Pole{p, 2}});
  };
  for (int k = 0; k < 100; ++k) {
    RatFunc a = rand_rf(), b = rand_rf();
    GaussRat al = rand_gauss(g), be = rand_gauss(g);
    RegularizedIntegral lhs = reg_integral(a * RatFunc(al) + b * RatFunc(be));
    RegularizedIntegral rhs = reg_integral(a);
    rhs *= ExactScalar(al);
    RegularizedIntegral rb = reg_integral(b);
    rb *= ExactScalar(be);
    rhs += rb;
    CHECK(lhs.constant == rhs.constant);
    CHECK(lhs.logT_coeff() == rhs.logT_coeff());
    CHECK(lhs.power_part() == rhs.power_part());
  }
  for (int k = 0; k < 50; ++k) {
    // F of order <= 0: numerator degree 2 over a double pole
    std::vector<GaussRat> num{rand_gauss(g), rand_gauss(g), rand_gauss(g)};
    GaussRat p = rand_gauss(g);
    if (p.is_real()) p += GaussRat::i();
    RatFunc F(Poly(num), {Pole{p, 2}});
    auto lim = F.expand_at_infinity(0);
    GaussRat l = lim.count(0) ? lim.at(0) : GaussRat(0);
    RegularizedIntegral r = reg_integral(F.derivative());
    CHECK(r.constant == ExactScalar(l - l));
  }
}

TEST_CASE("piecewise telescope with different end limits") {
  // continuous: 0 on (-inf,-1], (v+1)/2 on [-1,1], 1 on [1,inf) smoothed by rational tails
  RatFunc mid = (RatFunc::var() + RatFunc(1)) * RatFunc(GaussRat(rat(1, 2)));
  std::vector<Piece> pieces{{RatFunc(), std::nullopt, Rational(-1)}, {mid.derivative(), Rational(-1), Rational(1)},
                            {RatFunc(), Rational(1), std::nullopt}};
  CHECK(reg_integral(pieces).constant == ExactScalar(1));
}

TEST_CASE("line integrals of s-coefficients match quadrature") {
  std::vector<SFunc> samples{SFunc::s(), SFunc::var() * SFunc::s(), SFunc::s() * SFunc::s() * SFunc::s(),
                             SFunc::var() * SFunc::var() * SFunc::s(), SFunc(RatFunc(), SFunc::one_plus_z2(-2)),
                             SFunc(RatFunc::var() * RatFunc::var(), SFunc::one_plus_z2(1)),
                             SFunc(RatFunc::var(), RatFunc::var() * RatFunc(GaussRat::i()) + RatFunc(3))};
  for (const auto& f : samples) {
    RegularizedIntegral r = line_integral(f);
    for (double T : {200.0, 400.0}) {
      std::complex<double> q = line_quadrature([&](double z) { return f.eval(z); }, T);
      std::complex<double> e = evaluate_expansion(r, T);
      CHECK(std::abs(q - e) < 0.05 / T + 1e-9 * std::abs(q));
    }
  }
}

TEST_CASE("rewindowing shifts only the constant by power terms") {
  RegularizedIntegral r = line_integral(SFunc::var() * SFunc::var());
  // window edge T sqrt(1 - 1/T^2): T^3/3 -> T^3/3 - T/2 + 0
  std::vector<GaussRat> w = binomial_series(GaussRat(-1), rat(1, 2), 6);
  std::vector<GaussRat> w2;
  for (std::size_t k = 0; k < 3; ++k) {
    w2.push_back(w[k]);
    w2.push_back(GaussRat(0));
  }
  RegularizedIntegral rw = r.rewindowed(w2, w2);
  CHECK(rw.constant.is_zero());
  CHECK(rw.upper.power.at(1) == ExactScalar(GaussRat(rat(-1, 2))));
}
