#include "cuspcalc/traces.hpp"

#include <algorithm>

#include "cuspcalc/errors.hpp"

namespace cuspcalc {

namespace {

ExactScalar inv_two_pi() { return ExactScalar(GaussRat(rat(1, 2))) * ExactScalar::pi(-1); }

GaussRat gmat_trace(const GMat& m) {
  GaussRat t(0);
  for (int r = 0; r < m.dim(); ++r) t += m(r, r);
  return t;
}

GaussRat coeff(const std::map<int, GaussRat>& m, int k) {
  auto it = m.find(k);
  return it == m.end() ? GaussRat(0) : it->second;
}

void need_interior(const CuspElement& a, int j, const char* who) {
  if (a.jlo() > j) throw TruncationLoss(std::string(who) + ": interior degree " + std::to_string(j) + " truncated");
}

void need_ends(const CuspElement& a, int k, const char* who) {
  if (a.khi() < k) throw TruncationLoss(std::string(who) + ": end order " + std::to_string(k) + " truncated");
}

SFunc branch_trace(const CuspElement& a, int j, int sigma) {
  auto it = a.sigma().find(j);
  if (it == a.sigma().end()) return SFunc(0);
  return it->second[sigma].trace();
}

}  // namespace

CalibrationConstants CalibrationConstants::defaults() {
  CalibrationConstants k;
  k.kappa_r = inv_two_pi();
  k.kappa_d = inv_two_pi();
  k.kappa_i = ExactScalar(1);
  k.readout_sign = 1;
  k.index_sign = 1;
  k.provenance = "built-in calibration";
  return k;
}

ExactScalar rtr_raw(const CuspElement& a, Readout from) {
  GaussRat total(0);
  if (from == Readout::Interior) {
    need_interior(a, -1, "rTr");
    for (int sigma : {1, -1}) {
      const SFunc c = branch_trace(a, -1, sigma);
      for (End e : {End::Plus, End::Minus}) total += coeff(c.expand_at_end(e, 1), 1);
    }
  } else {
    need_ends(a, 1, "rTr");
    need_interior(a, -1, "rTr");
    for (End e : {End::Plus, End::Minus}) {
      auto it = a.ends(e).find(1);
      if (it == a.ends(e).end()) continue;
      for (int sigma : {1, -1}) {
        auto h = it->second.homogeneous(sigma, -1);
        auto hj = h.find(-1);
        if (hj != h.end()) total += gmat_trace(hj->second);
      }
    }
  }
  return ExactScalar(total);
}

ExactScalar rTr(const CuspElement& a, const CalibrationConstants& k, Readout from) {
  return k.kappa_r * rtr_raw(a, from);
}

ExactScalar rTr_times(const CuspElement& a, const std::array<std::map<int, GaussRat>, 2>& f,
                      const CalibrationConstants& k) {
  need_interior(a, -1, "rTr");
  GaussRat total(0);
  for (int sigma : {1, -1}) {
    const SFunc c = branch_trace(a, -1, sigma);
    for (End e : {End::Plus, End::Minus}) {
      const auto ce = c.expand_at_end(e, 1);
      for (const auto& [m, v] : f[static_cast<std::size_t>(end_index(e))]) total += coeff(ce, 1 - m) * v;
    }
  }
  return k.kappa_r * ExactScalar(total);
}

std::vector<GaussRat> series_inverse(const std::vector<GaussRat>& a, std::size_t len) {
  if (a.empty() || a[0].is_zero()) throw std::domain_error("series_inverse: zero constant term");
  std::vector<GaussRat> b(len, GaussRat(0));
  const GaussRat a0inv = a[0].inverse();
  for (std::size_t n = 0; n < len; ++n) {
    GaussRat s = n == 0 ? GaussRat(1) : GaussRat(0);
    for (std::size_t k = 1; k <= n && k < a.size(); ++k) s -= a[k] * b[n - k];
    b[n] = s * a0inv;
  }
  return b;
}

std::vector<GaussRat> series_log_one_plus(const std::vector<GaussRat>& h, std::size_t len) {
  std::vector<GaussRat> out(len, GaussRat(0));
  std::vector<GaussRat> p{GaussRat(1)};
  for (std::size_t n = 1; n < len; ++n) {
    p = series_mul(p, h, len);
    const GaussRat c(rat(n % 2 == 1 ? 1 : -1, static_cast<long>(n)));
    for (std::size_t i = 0; i < p.size() && i < len; ++i) out[i] += p[i] * c;
  }
  return out;
}

std::array<std::vector<GaussRat>, 2> cutoff_window(const BoundaryFunction& bdf, std::size_t len) {
  std::array<std::vector<GaussRat>, 2> out;
  for (End e : {End::Plus, End::Minus}) {
    const auto ex = bdf.x.expand_at_end(e, static_cast<int>(len) + 1);
    if (ex.empty() || ex.begin()->first != 1 || !(ex.begin()->second == GaussRat(1))) {
      throw HypothesisViolation("boundary defining function must be x_e (1 + O(x_e)) at both ends");
    }
    // x' = x b(x); solve x b(x) = u for x = u phi(u), then T_e = 1/x = T / phi
    std::vector<GaussRat> b(len, GaussRat(0));
    for (const auto& [k, v] : ex) {
      if (k >= 1 && static_cast<std::size_t>(k - 1) < len) b[static_cast<std::size_t>(k - 1)] = v;
    }
    std::vector<GaussRat> phi{GaussRat(1)};
    for (std::size_t it = 0; it < len; ++it) {
      std::vector<GaussRat> comp(len, GaussRat(0));
      for (std::size_t k = 0; k < len; ++k) {
        if (b[k].is_zero()) continue;
        const auto pk = series_power(phi, static_cast<int>(k), len);
        for (std::size_t i = 0; i + k < len && i < pk.size(); ++i) comp[i + k] += b[k] * pk[i];
      }
      phi = series_inverse(comp, len);
    }
    out[static_cast<std::size_t>(end_index(e))] = series_inverse(phi, len);
  }
  return out;
}

HadamardResult hdTr_full(const CuspElement& a, const BoundaryFunction& bdf, const CalibrationConstants& k) {
  need_interior(a, -1, "hdTr");
  const SFunc density = branch_trace(a, -1, 1) + branch_trace(a, -1, -1);
  HadamardResult r;
  r.integral = line_integral(density);
  r.strict = r.integral.strict();
  std::size_t len = 2;
  for (const auto& [j, p] : r.integral.power_part()) len = std::max(len, static_cast<std::size_t>(j) + 2);
  const auto w = cutoff_window(bdf, len);
  r.integral = r.integral.rewindowed(w[0], w[1]);
  r.value = k.kappa_d * r.integral.constant;
  return r;
}

ExactScalar hdTr(const CuspElement& a, const BoundaryFunction& bdf, const CalibrationConstants& k) {
  return hdTr_full(a, bdf, k).value;
}

ExactScalar itr_raw(const CuspElement& a) {
  need_ends(a, 1, "iTr");
  ExactScalar total;
  for (End e : {End::Plus, End::Minus}) {
    auto it = a.ends(e).find(1);
    if (it != a.ends(e).end()) total += bTr(it->second);
  }
  return total;
}

ExactScalar iTr(const CuspElement& a, const CalibrationConstants& k) {
  return k.kappa_i * itr_raw(a);
}

ExactScalar hitr_raw(const CuspElement& a, const RegularizerQ& q) {
  ExactScalar total = itr_raw(a);
  GaussRat correction(0);
  for (End e : {End::Plus, End::Minus}) {
    auto it = a.ends(e).find(1);
    if (it == a.ends(e).end()) continue;
    const int top = it->second.top_degree();
    if (top < 0) continue;
    for (int sigma : {1, -1}) {
      const auto h = it->second.homogeneous(sigma, 0);
      const auto L = q.log_ratio_jet(sigma, -1 - top);
      for (const auto& [j, m] : h) {
        auto lj = L.find(-1 - j);
        if (lj != L.end()) correction += gmat_trace(m) * lj->second;
      }
    }
  }
  return total - inv_two_pi() * ExactScalar(correction);
}

ExactScalar hiTr(const CuspElement& a, const RegularizerQ& q, const CalibrationConstants& k) {
  return k.kappa_i * hitr_raw(a, q);
}

namespace {

constexpr int kNoEnds = -(1 << 20);

}  // namespace

CuspElement log_ratio(const RegularizerQ& qprime, const RegularizerQ& q, int n, Trunc t) {
  CuspElement out(n, t);
  out.set_validity(t.jmin, kNoEnds);
  std::map<int, BranchPair> jets;
  for (int sigma : {1, -1}) {
    std::map<int, GaussRat> lp, l;
    try {
      lp = qprime.log_ratio_jet(sigma, t.jmin);
      l = q.log_ratio_jet(sigma, t.jmin);
    } catch (const HypothesisViolation&) {
      throw SharedPrincipalRequired("log_ratio: regularizers must share the principal symbol abs(xi)");
    }
    for (const auto& [j, c] : l) lp[j] -= c;
    for (const auto& [j, c] : lp) {
      if (c.is_zero()) continue;
      auto it = jets.try_emplace(j, BranchPair{SMat(n), SMat(n)}).first;
      it->second[sigma] = SMat::identity(n, SFunc(c));
    }
  }
  for (auto& [j, c] : jets) out.set_sigma(j, c);
  return out;
}

CuspElement log_one_plus(const CuspElement& s) {
  if (s.top() >= 0) throw SharedPrincipalRequired("log_one_plus: argument must have negative order");
  CuspElement base(s.dim(), s.trunc());
  for (const auto& [j, c] : s.sigma()) base.set_sigma(j, c);
  base.set_validity(s.jlo(), kNoEnds);
  CuspElement out(s.dim(), s.trunc());
  out.set_validity(s.jlo(), kNoEnds);
  CuspElement power = base;
  for (long n = 1; !power.is_zero_mod_trunc(); ++n) {
    out += power * GaussRat(rat(n % 2 == 1 ? 1 : -1, n));
    power = pointwise_product(power, base);
  }
  return out;
}

}  // namespace cuspcalc
