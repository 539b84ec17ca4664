#include <doctest.h>

#include <cmath>

#include "cuspcalc/errors.hpp"
#include "cuspcalc/oracle.hpp"
#include "cuspcalc/random.hpp"

using namespace cuspcalc;

namespace {

const Trunc kT{-6, 6};

DiscretizationSpec small() {
  DiscretizationSpec s;
  s.grid = 256;
  s.recheck = false;
  return s;
}

CuspElement oscillator() {
  return CuspElement::zeta(1, kT) - CuspElement::scalar_z(SFunc::var(), 1, kT) * GaussRat::i();
}

CuspElement wall(int slope) {
  const SFunc phi = SFunc::var() * SFunc::s();
  return CuspElement::zeta(1, kT) - CuspElement::scalar_z(phi, 1, kT) * GaussRat(Rational(0), Rational(slope));
}

}  // namespace

TEST_CASE("svd index of simple operators") {
  const SvdIndex one = svd_index(CuspElement::identity(1, kT), small());
  CHECK(one.index == 0);
  CHECK(one.runs[0].gap == doctest::Approx(1.0));
  CHECK(svd_index(CuspElement::x_power(-1, 1, kT), small()).index == 0);
  CHECK(svd_index(wall(4), small()).index == 1);
  CHECK(svd_index(wall(-4), small()).index == -1);
}

TEST_CASE("svd index recovers the oscillator kernel") {
  DiscretizationSpec spec;
  spec.recheck = false;
  const SvdIndex r = svd_index(oscillator(), spec);
  CHECK(r.index == 1);
  const SvdRun& run = r.runs[0];
  REQUIRE(run.kernel_vectors.size() == 1);
  CHECK(run.max_kernel_residual < 1e-8);
  // compare with the normalized Gaussian, up to phase
  std::vector<double> gauss;
  double norm = 0;
  for (double z : run.grid_points) {
    gauss.push_back(std::exp(-z * z / 2));
    norm += gauss.back() * gauss.back();
  }
  std::complex<double> overlap = 0;
  for (std::size_t k = 0; k < gauss.size(); ++k) overlap += run.kernel_vectors[0][k] * gauss[k] / std::sqrt(norm);
  double dist = 0;
  for (std::size_t k = 0; k < gauss.size(); ++k)
    dist += std::norm(run.kernel_vectors[0][k] - overlap / std::abs(overlap) * gauss[k] / std::sqrt(norm));
  CHECK(std::sqrt(dist) < 1e-8);
}

TEST_CASE("svd index stability and withheld verdicts") {
  DiscretizationSpec spec = small();
  spec.recheck = true;
  const SvdIndex r = svd_index(wall(4), spec);
  CHECK(r.index == 1);
  CHECK(r.runs.size() == 3);
  // the kernel e^-sqrt(1+z^2) is still of size 1e-3 at the window edge
  CHECK_THROWS_AS(svd_index(wall(1), spec), GapTooSmall);
}

TEST_CASE("svd index does not depend on the cutoff profile") {
  const SuspendedFamily tail = SuspendedFamily::scalar(SFunc::s() * SFunc(GaussRat(rat(1, 2))));
  const CuspElement a = wall(4) + CuspElement::family(tail, kT);
  DiscretizationSpec other = small();
  other.cutoff_inner = 1.0;
  other.cutoff_outer = 24.0;
  CHECK(svd_index(a, small()).index == 1);
  CHECK(svd_index(a, other).index == 1);
}

TEST_CASE("winding index") {
  CHECK(winding_index(CuspElement::identity(1, kT)).index == 0);
  CHECK(winding_index(oscillator()).index == 1);
  CHECK(winding_index(star(oscillator(), oscillator())).index == 2);
  CHECK(winding_index(CuspElement::x_power(-1, 1, kT)).index == 0);
  CHECK_THROWS_AS(winding_index(CuspElement::zeta(1, kT)), HypothesisViolation);
  Rng g(71);
  for (int i = 0; i < 5; ++i) {
    auto [a, ia] = random_wall_element(g, 1, kT);
    auto [b, ib] = random_wall_element(g, 1, kT);
    const long wa = winding_index(a).index, wb = winding_index(b).index;
    CHECK(wa == ia);
    CHECK(winding_index(star(a, b)).index == wa + wb);
  }
}

TEST_CASE("calibration") {
  const Calibration c1 = calibrate(calibration_anchor(), small());
  const Calibration c2 = calibrate(calibration_anchor(), small());
  CHECK(c1.report == c2.report);
  const CalibrationConstants d = CalibrationConstants::defaults();
  CHECK(c1.constants.kappa_r == d.kappa_r);
  CHECK(c1.constants.kappa_d == d.kappa_d);
  CHECK(c1.constants.kappa_i == d.kappa_i);
  CHECK(c1.constants.index_sign == 1);
  CHECK(c1.conventions.eta_sign == -1);
  CHECK(c1.alternatives.size() >= 2);

  Rng g(72);
  for (int i = 0; i < 20; ++i) {
    const CuspElement a = random_element(g, 1, {-4, 4}, 1, -2, 1, -2, 1), b = random_element(g, 1, {-4, 4}, 1, -2, 1, -2, 1);
    const CuspElement c = commutator(a, b);
    CHECK(hiTr(c, RegularizerQ::standard(), c1.constants) ==
          rTr(star(a, log_derivation(b, LogKind::LogQ)), c1.constants));
    CHECK(hdTr(c, {}, c1.constants) == -rTr(star(a, log_derivation(b, LogKind::LogX)), c1.constants));
  }

  // flipping the eta convention moves the assembled index by the eta invariant of the anchor
  const CuspElement anchor = calibration_anchor();
  const IndexReport rep = assemble_index(anchor, RegularizerQ::standard(), IndexMode::General, c1.constants);
  SuspendedConventions flipped = c1.conventions;
  flipped.eta_sign = -flipped.eta_sign;
  ExactScalar eta, eta_flipped;
  for (End e : {End::Plus, End::Minus}) {
    eta += eta_suspended(indicial_family(anchor, e), c1.conventions);
    eta_flipped += eta_suspended(indicial_family(anchor, e), flipped);
  }
  const ExactScalar half(GaussRat(rat(1, 2)));
  const ExactScalar good = rep.asb - half * eta + rep.i_f + rep.s_f;
  const ExactScalar bad = rep.asb - half * eta_flipped + rep.i_f + rep.s_f;
  CHECK(good == ExactScalar(1));
  CHECK(bad - good == eta);

  CHECK_THROWS_AS(calibrate(oscillator(), small()), CalibrationInconsistent);
}
