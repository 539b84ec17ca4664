#include "cuspcalc/suspended.hpp"

#include <cmath>

namespace cuspcalc {

namespace {

// Real points where the determinant vanishes, located through the norm r0^2 - r1^2 s^2.
std::vector<double> real_zeros(const SFunc& det) {
  RatFunc norm = det.r0() * det.r0() - det.r1() * det.r1() * SFunc::one_plus_z2(-1);
  std::vector<double> out;
  for (const auto& r : numeric_roots(norm.num())) {
    if (std::abs(r.imag()) > 1e-9 * std::max(1.0, std::abs(r))) continue;
    if (std::abs(det.eval(r.real())) < 1e-8) out.push_back(r.real());
  }
  return out;
}

}  // namespace

SuspendedFamily SuspendedFamily::constant(const GMat& c) {
  return SuspendedFamily(c.map([](const GaussRat& v) { return SFunc(v); }));
}

SFunc SuspendedFamily::step() {
  return SFunc(RatFunc(GaussRat(rat(1, 2))), RatFunc::var() * RatFunc(GaussRat(rat(1, 2))));
}

SuspendedFamily SuspendedFamily::derivative() const {
  return SuspendedFamily(m_.map([](const SFunc& f) { return f.derivative(); }));
}

SuspendedFamily SuspendedFamily::reflect() const {
  return SuspendedFamily(m_.map([](const SFunc& f) { return f.reflect(); }));
}

int SuspendedFamily::top_degree() const {
  int t = -(1 << 20);
  for (const auto& f : m_.entries()) t = std::max(t, f.top_degree());
  return t;
}

std::map<int, GMat> SuspendedFamily::homogeneous(int sigma, int lowest) const {
  int n = dim();
  std::map<int, GMat> out;
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c)
      for (const auto& [deg, coeff] : m_(r, c).homogeneous(sigma, lowest)) {
        auto [it, inserted] = out.try_emplace(deg, GMat(n));
        it->second(r, c) = coeff;
      }
  return out;
}

SuspendedFamily SuspendedFamily::inverse() const {
  SFunc det = m_.det();
  if (det.is_zero()) throw NotInvertible("determinant vanishes identically");
  for (int sigma : {1, -1}) {
    auto h = homogeneous(sigma, top_degree() - 2 * dim());
    if (h.empty() || h.rbegin()->second.det().is_zero())
      throw NotInvertible("leading coefficient singular at xi -> " + std::string(sigma > 0 ? "+inf" : "-inf"),
                          sigma > 0 ? "+inf" : "-inf");
  }
  auto zeros = real_zeros(det);
  if (!zeros.empty()) {
    std::string w = rationalize(std::complex<double>(zeros.front(), 0.0), 1000000).str();
    throw NotInvertible("family is singular at xi = " + w, w);
  }
  return SuspendedFamily(m_.inverse([](const SFunc& f) { return f.inverse(); }));
}

std::vector<std::complex<double>> SuspendedFamily::eval(double xi) const {
  std::vector<std::complex<double>> out;
  for (const auto& f : m_.entries()) out.push_back(f.eval(xi));
  return out;
}

SuspendedFamily sus_mul(const SuspendedFamily& a, const SuspendedFamily& b) {
  if (a.dim() != b.dim()) throw DimensionMismatch("sus_mul: dimension mismatch");
  return a * b;
}

SuspendedFamily sus_inverse(const SuspendedFamily& a) { return a.inverse(); }

SuspendedFamily t_commutator(const SuspendedFamily& b, const SuspendedConventions& c) {
  return b.derivative() * SFunc(GaussRat(Rational(0), Rational(c.t_sign)));
}

ExactScalar bTr(const SuspendedFamily& b) {
  return b.trace_integral().constant * ExactScalar(GaussRat(rat(1, 2))) * ExactScalar::pi(-1);
}

ExactScalar tTr(const SuspendedFamily& b, const SuspendedConventions& c) { return bTr(t_commutator(b, c)); }

ExactScalar eta_suspended(const SuspendedFamily& a, const SuspendedConventions& c) {
  SuspendedFamily inv = a.inverse();
  SuspendedFamily ta = t_commutator(a, c);
  return ExactScalar(-c.eta_sign) * bTr(inv * ta + ta * inv);
}

}  // namespace cuspcalc
