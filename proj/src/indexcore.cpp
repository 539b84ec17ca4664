#include "cuspcalc/indexcore.hpp"

#include <algorithm>

#include "cuspcalc/errors.hpp"

namespace cuspcalc {

CuspElement dtilde(const CuspElement& a, const RegularizerQ& q) {
  return -tilde_derivation(a, q);
}

ExactScalar Bif(const CuspElement& a, const CuspElement& b, const RegularizerQ& q, const CalibrationConstants& k) {
  return rTr(star(b, dtilde(a, q)), k);
}

ExactScalar Bif_commutator(const CuspElement& a, const CuspElement& b, const RegularizerQ& q,
                           const CalibrationConstants& k) {
  const CuspElement c = commutator(a, b);
  return hiTr(c, q, k) + hdTr(c, {}, k);
}

CuspElement boundary_inverse(const CuspElement& a, int steps) {
  if (a.interior_empty()) throw NotInvertible("interior symbol vanishes to the truncation order");
  const int n = a.dim();
  auto inv = [](const SMat& m, const std::string& where) {
    SFunc det = m.det();
    if (det.is_zero()) throw NotInvertible("leading coefficient is singular", where);
    return m.inverse([](const SFunc& f) { return f.inverse(); });
  };
  CuspElement b0(n, a.trunc());
  const auto& [m, c] = *a.sigma().rbegin();
  b0.set_sigma(-m, BranchPair{inv(c.plus, "sigma = +1"), inv(c.minus, "sigma = -1")});
  for (End e : {End::Plus, End::Minus}) {
    if (a.ends(e).empty()) throw NotInvertible("end layer vanishes to the truncation order");
    const auto& [p, f] = *a.ends(e).begin();
    b0.set_end(e, -p, f.inverse());
  }
  const CuspElement r = CuspElement::identity(n, a.trunc()) - star(a, b0);
  CuspElement b = b0, term = b0;
  for (int i = 0; i < steps && !term.is_zero_mod_trunc(); ++i) {
    term = star(term, r);
    b += term;
  }
  return b;
}

ExactScalar boundary_index(const CuspElement& a, const RegularizerQ& q, const CalibrationConstants& k) {
  return Bif(a, boundary_inverse(a), q, k);
}

ExactScalar If(const CuspElement& a, const CuspElement& b, const RegularizerQ& q, const CalibrationConstants& k) {
  const CuspElement d = dtilde(a, q);
  const CuspElement x = star(b, d) + star(d, b);
  if (x.jlo() > -1 || x.khi() < 1) {
    throw TruncationLoss("If needs the abs(zeta)^-1 and x^1 coefficients; data valid for degrees >= " +
                         std::to_string(x.jlo()) + " and x-orders <= " + std::to_string(x.khi()));
  }
  ExactScalar v = hiTr(x, q, k) + hdTr(x, {}, k);
  return ExactScalar(GaussRat(rat(k.index_sign, 2))) * v;
}

StabilityRadius stability_radius(const CuspElement& a, const RegularizerQ& q) {
  const CuspElement d = dtilde(a, q);
  constexpr int kBaseDim = 1;
  return {std::max(1, 2 - ends_order(d)), std::max(1, 1 + interior_order(d) + kBaseDim)};
}

FunctionalValue invariant_functional(const CuspElement& a, const CuspElement& ainv, Functional kind,
                                     const RegularizerQ& q, const CalibrationConstants& k) {
  const bool use_x = kind == Functional::Etab || kind == Functional::SF;
  const CuspElement d = log_derivation(a, use_x ? LogKind::LogX : LogKind::LogQ, q);
  const CuspElement x = star(ainv, d) + star(d, ainv);
  const ExactScalar half(GaussRat(rat(1, 2)));
  FunctionalValue out;
  switch (kind) {
    case Functional::Etab:
      out.value = -hiTr(x, q, k);
      break;
    case Functional::IF:
      out.value = half * hiTr(x, q, k);
      break;
    case Functional::ASb:
    case Functional::SF: {
      HadamardResult h = hdTr_full(x, {}, k);
      out.value = half * h.value;
      out.strict = h.strict;
      break;
    }
  }
  return out;
}

bool corner_elliptic(const CuspElement& a) {
  if (a.interior_empty()) return false;
  const auto& top = a.sigma().rbegin()->second;
  for (End e : {End::Plus, End::Minus}) {
    const int p = a.bottom_at(e);
    if (p > a.khi()) return false;
    for (int sigma : {1, -1}) {
      const SFunc det = top[sigma].det();
      if (det.is_zero() || det.order_at_end(e) != a.dim() * p) return false;
    }
  }
  return true;
}

bool translation_invariant_near_ends(const CuspElement& a) {
  for (End e : {End::Plus, End::Minus})
    for (const auto& [kx, f] : a.ends(e))
      if (kx != a.ends(e).begin()->first) return false;
  return true;
}

IndexReport assemble_index(const CuspElement& a, const RegularizerQ& q, IndexMode mode, const CalibrationConstants& k) {
  IndexReport rep;
  rep.mode = mode;
  rep.translation_invariant = translation_invariant_near_ends(a);
  rep.corner_elliptic = corner_elliptic(a);
  if (mode != IndexMode::General && !rep.translation_invariant) {
    throw HypothesisViolation("translation_invariant: the end layer has more than one x-order");
  }
  rep.radius = stability_radius(a, q);
  const CuspElement b = parametrix(a, {rep.radius.P, rep.radius.M});
  rep.if_value = If(a, b, q, k);
  rep.bif = Bif(a, b, q, k);
  const FunctionalValue asb = invariant_functional(a, b, Functional::ASb, q, k);
  rep.asb = asb.value;
  rep.asb_strict = asb.strict;
  rep.etab = invariant_functional(a, b, Functional::Etab, q, k).value;
  rep.i_f = invariant_functional(a, b, Functional::IF, q, k).value;
  rep.s_f = mode == IndexMode::General ? invariant_functional(a, b, Functional::SF, q, k).value : ExactScalar();
  if (mode == IndexMode::Reduced) rep.i_f = ExactScalar();
  const ExactScalar s(k.index_sign);
  const ExactScalar half(GaussRat(rat(1, 2)));
  rep.assembled = s * (rep.asb - half * rep.etab + rep.i_f + rep.s_f);
  rep.integer = rep.assembled.is_constant() && rep.assembled.constant_part().im.sign() == 0 &&
                rep.assembled.constant_part().re.get_den() == 1;
  return rep;
}

}  // namespace cuspcalc
