#include "cuspcalc/hochschild.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace cuspcalc {

Laurent Laurent::monomial(int k, GaussRat c) {
  Laurent l;
  l.set(k, std::move(c));
  return l;
}

GaussRat Laurent::coeff(int k) const {
  auto it = c_.find(k);
  return it == c_.end() ? GaussRat(0) : it->second;
}

void Laurent::set(int k, GaussRat c) {
  if (c.is_zero()) {
    c_.erase(k);
  } else {
    c_[k] = std::move(c);
  }
}

Laurent Laurent::derivative() const {
  Laurent d;
  for (const auto& [k, c] : c_)
    if (k != 0) d.set(k - 1, c * GaussRat(k));
  return d;
}

Laurent& Laurent::operator+=(const Laurent& o) {
  for (const auto& [k, c] : o.c_) set(k, coeff(k) + c);
  return *this;
}

Laurent& Laurent::operator-=(const Laurent& o) {
  for (const auto& [k, c] : o.c_) set(k, coeff(k) - c);
  return *this;
}

Laurent& Laurent::operator*=(const GaussRat& s) {
  if (s.is_zero()) {
    c_.clear();
    return *this;
  }
  for (auto& [k, c] : c_) c *= s;
  return *this;
}

Laurent operator*(const Laurent& a, const Laurent& b) {
  Laurent r;
  for (const auto& [ka, ca] : a.c_)
    for (const auto& [kb, cb] : b.c_) r.set(ka + kb, r.coeff(ka + kb) + ca * cb);
  return r;
}

std::string Laurent::str() const {
  if (c_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, c] : c_) {
    if (!first) os << " + ";
    first = false;
    os << '(' << c.str() << ")x^" << k;
  }
  return os.str();
}

std::function<CuspElement(const CuspElement&)> derivation(DerivationKind kind, const RegularizerQ& q) {
  switch (kind) {
    case DerivationKind::LogX:
      return [](const CuspElement& a) { return log_derivation(a, LogKind::LogX); };
    case DerivationKind::LogQ:
      return [q](const CuspElement& a) { return log_derivation(a, LogKind::LogQ, q); };
    case DerivationKind::Tilde:
      break;
  }
  return [q](const CuspElement& a) { return tilde_derivation(a, q); };
}

LaurentForm hkr_chi(const Chain<LaurentModel>& c) {
  LaurentForm out;
  if (c.degree() >= 2) return out;
  for (const auto& w : c.words()) {
    if (c.degree() == 0) {
      out.f += w.letters[0] * w.coeff;
    } else {
      out.g += (w.letters[0] * w.letters[1].derivative()) * w.coeff;
    }
  }
  return out;
}

Cochain make_tau_cocycle(const Chain<CuspModel>& tensor, const BoundaryFunction& bdf, const CalibrationConstants& k) {
  const int p = tensor.degree();
  return [tensor, p, bdf, k](const std::vector<CuspElement>& g) {
    if (static_cast<int>(g.size()) != p + 1) throw ModelMismatch("tau expects p + 1 arguments");
    ExactScalar total;
    for (const auto& w : tensor.words()) {
      CuspElement prod = star(w.letters[0], g[0]);
      for (int i = 1; i <= p; ++i) {
        const auto u = static_cast<std::size_t>(i);
        prod = star(prod, commutator(w.letters[u], g[u]));
      }
      total += ExactScalar(w.coeff) * hdTr(prod, bdf, k);
    }
    return total;
  };
}

Chain<CuspModel> antisymmetrize(const Chain<CuspModel>& c) {
  const int n = c.degree();
  Chain<CuspModel> out(n);
  std::vector<int> perm(static_cast<std::size_t>(n + 1));
  std::iota(perm.begin(), perm.end(), 0);
  do {
    int inversions = 0;
    for (std::size_t a = 0; a < perm.size(); ++a)
      for (std::size_t b = a + 1; b < perm.size(); ++b)
        if (perm[a] > perm[b]) ++inversions;
    for (const auto& w : c.words()) {
      std::vector<CuspElement> l;
      for (int idx : perm) l.push_back(w.letters[static_cast<std::size_t>(idx)]);
      out.add(w.coeff * detail::alt(inversions), std::move(l));
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

ExactScalar coboundary(const Cochain& phi, const CuspModel& model, const std::vector<CuspElement>& args) {
  const int p1 = static_cast<int>(args.size()) - 1;  // p + 1
  ExactScalar total;
  for (int i = 0; i < p1; ++i) {
    std::vector<CuspElement> a;
    for (int k = 0; k <= p1; ++k) {
      const auto u = static_cast<std::size_t>(k);
      if (k == i) {
        a.push_back(model.mul(args[u], args[u + 1]));
        ++k;
      } else {
        a.push_back(args[u]);
      }
    }
    ExactScalar v = phi(a);
    total += i % 2 == 0 ? v : -v;
  }
  std::vector<CuspElement> a;
  a.push_back(model.mul(args.back(), args.front()));
  for (int k = 1; k < p1; ++k) a.push_back(args[static_cast<std::size_t>(k)]);
  ExactScalar v = phi(a);
  total += p1 % 2 == 0 ? v : -v;
  return total;
}

namespace {

void require_ends_only(const CuspElement& a) {
  if (!a.interior_empty()) throw HypothesisViolation("beta is defined on elements with empty interior layer");
}

Rational binomial(int n, int k) {
  Rational r = 1;
  for (int i = 1; i <= k; ++i) r = r * Rational(n - k + i) / Rational(i);
  return r;
}

// Coefficient of x_e^m in D_z^r log x, from
// d_z^r log x = -(1/2) (-1)^(r-1) (r-1)! ((z - i)^-r + (z + i)^-r) and z = s_e / x_e.
std::map<int, GaussRat> dlogx_end(int r, End e, int top) {
  const int se = end_sign(e);
  Rational fact = 1;
  for (int i = 2; i < r; ++i) fact *= i;
  GaussRat pre = GaussRat(Rational(r % 2 == 1 ? -1 : 1) * fact / Rational(2));
  pre *= pow(GaussRat(Rational(0), Rational(-1)), r);  // D_z = -i d_z
  std::map<int, GaussRat> out;
  for (int m = 0; r + m <= top; ++m) {
    GaussRat sum = pow(GaussRat::i(), m) + pow(GaussRat(Rational(0), Rational(-1)), m);
    if (sum.is_zero()) continue;
    const int p = r + m;
    GaussRat c = pre * sum * GaussRat(binomial(r + m - 1, m)) * GaussRat(p % 2 == 0 ? 1 : se);
    out[p] = c;
  }
  return out;
}

}  // namespace

ExactScalar beta_cocycle(const CuspElement& b, const CuspElement& c, const CalibrationConstants& k) {
  require_ends_only(b);
  require_ends_only(c);
  return iTr(star(b, log_derivation(c, LogKind::LogX)), k);
}

ExactScalar beta_direct(const CuspElement& b, const CuspElement& c, const CalibrationConstants& k) {
  require_ends_only(b);
  require_ends_only(c);
  ExactScalar total;
  for (End e : {End::Plus, End::Minus}) {
    const int se = end_sign(e);
    // x^1 coefficient of B . [log x, C] = sum_r -(1/r!) B . d_xi^r C . D_z^r log x
    std::map<int, SuspendedFamily> dc;  // x-order -> [log x, C] coefficient
    for (const auto& [kc, fc] : c.ends(e)) {
      SuspendedFamily d = fc;
      Rational fact = 1;
      for (int r = 1; kc + r <= 1 - b.bottom_at(e); ++r) {
        d = d.derivative();
        fact *= r;
        if (d.is_zero()) break;
        for (const auto& [m, v] : dlogx_end(r, e, 1 - b.bottom_at(e) - kc)) {
          auto it = dc.try_emplace(kc + m, SuspendedFamily(c.dim())).first;
          it->second += d * SFunc(-v / GaussRat(fact));
        }
      }
    }
    // (B * D)_1 = sum_{kb + kd + r = 1} (s_e i)^r rising(kd, r) / r! d_xi^r B_kb . D_kd
    for (const auto& [kb, fb] : b.ends(e)) {
      SuspendedFamily d = fb;
      Rational fact = 1;
      for (int r = 0; r <= 1 - kb - c.bottom_at(e); ++r) {
        if (r > 0) {
          d = d.derivative();
          fact *= r;
          if (d.is_zero()) break;
        }
        auto it = dc.find(1 - kb - r);
        if (it == dc.end()) continue;
        Rational rising = 1;
        for (int i = 0; i < r; ++i) rising *= it->first + i;
        const GaussRat coef = pow(GaussRat(Rational(0), Rational(se)), r) * GaussRat(rising / fact);
        if (coef.is_zero()) continue;
        total += ExactScalar(coef) * bTr(sus_mul(d, it->second));
      }
    }
  }
  return k.kappa_i * total;
}

}  // namespace cuspcalc
