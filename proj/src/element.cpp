#include "cuspcalc/element.hpp"

#include <algorithm>
#include <sstream>

#include "cuspcalc/errors.hpp"

namespace cuspcalc {

namespace {

SMat lift(const GMat& g) {
  return g.map([](const GaussRat& c) { return SFunc(c); });
}

SMat dz(const SMat& m) {
  return m.map([](const SFunc& f) { return f.D(); });
}

SMat ddz(const SMat& m) {
  return m.map([](const SFunc& f) { return f.derivative(); });
}

template <class M>
void add_to(std::map<int, M>& target, int key, const M& value) {
  auto it = target.find(key);
  if (it == target.end()) {
    target.emplace(key, value);
  } else {
    it->second += value;
  }
}

void add_to(std::map<int, BranchPair>& target, int key, const BranchPair& value) {
  auto it = target.find(key);
  if (it == target.end()) {
    target.emplace(key, value);
  } else {
    it->second.plus += value.plus;
    it->second.minus += value.minus;
  }
}

struct Validity {
  int jlo;
  int khi;
};

// Error in a (degrees < jlo_a) times b contributes degrees <= jlo_a - 1 + top_b.
Validity product_validity(const CuspElement& a, const CuspElement& b) {
  const Trunc t = a.trunc();
  const int jlo = std::max({t.jmin, a.jlo() + b.top(), b.jlo() + a.top()});
  const int khi = std::min({t.K, a.khi() + b.bottom(), b.khi() + a.bottom()});
  return {jlo, khi};
}

void check_same(const CuspElement& a, const CuspElement& b) {
  if (a.dim() != b.dim()) throw DimensionMismatch("element dimensions differ");
  if (!(a.trunc() == b.trunc())) throw DimensionMismatch("element truncations differ");
}

GaussRat falling_over_factorial(int j, int r) {
  Rational c = 1;
  for (int i = 0; i < r; ++i) c *= Rational(j - i);
  for (int i = 2; i <= r; ++i) c /= Rational(i);
  return GaussRat(c);
}

GaussRat rising_over_factorial(int k, int r) {
  Rational c = 1;
  for (int i = 0; i < r; ++i) c *= Rational(k + i);
  for (int i = 2; i <= r; ++i) c /= Rational(i);
  return GaussRat(c);
}

GaussRat ipow(int sign, int r) {
  return pow(GaussRat(0, sign), r);
}

}  // namespace

CuspElement CuspElement::identity(int n, Trunc t) {
  return family(SuspendedFamily::identity(n), t);
}

CuspElement CuspElement::separable(const SMat& f, const SuspendedFamily& g, Trunc t) {
  if (f.dim() != g.dim()) throw DimensionMismatch("separable: dimensions differ");
  CuspElement a(f.dim(), t);
  for (int sigma : {1, -1}) {
    for (const auto& [j, gj] : g.homogeneous(sigma, t.jmin)) {
      auto it = a.sigma_.try_emplace(j, BranchPair{SMat(f.dim()), SMat(f.dim())}).first;
      it->second[sigma] = f * lift(gj);
    }
  }
  for (int ei = 0; ei < 2; ++ei) {
    const End e = end_from_index(ei);
    std::map<int, GMat> fk;
    for (int r = 0; r < f.dim(); ++r) {
      for (int c = 0; c < f.dim(); ++c) {
        for (const auto& [k, v] : f(r, c).expand_at_end(e, t.K)) {
          auto it = fk.try_emplace(k, GMat(f.dim())).first;
          it->second(r, c) = v;
        }
      }
    }
    for (const auto& [k, m] : fk) a.ends_[ei].emplace(k, SuspendedFamily(lift(m) * g.matrix()));
  }
  a.prune();
  return a;
}

CuspElement CuspElement::function_of_z(const SMat& f, Trunc t) {
  return separable(f, SuspendedFamily::identity(f.dim()), t);
}

CuspElement CuspElement::family(const SuspendedFamily& g, Trunc t) {
  return separable(SMat::identity(g.dim()), g, t);
}

CuspElement CuspElement::zeta(int n, Trunc t) {
  return family(SuspendedFamily::scalar(SFunc::var(), n), t);
}

CuspElement CuspElement::x_power(int k, int n, Trunc t) {
  SFunc x = SFunc::s();
  SFunc f(1);
  const SFunc base = k >= 0 ? x : x.inverse();
  for (int i = 0; i < std::abs(k); ++i) f *= base;
  return scalar_z(f, n, t);
}

void CuspElement::set_sigma(int j, BranchPair c) {
  sigma_[j] = std::move(c);
  prune();
}

void CuspElement::set_end(End e, int k, SuspendedFamily f) {
  ends_[end_index(e)][k] = std::move(f);
  prune();
}

void CuspElement::set_validity(int jlo, int khi) {
  jlo_ = std::max(jlo, trunc_.jmin);
  khi_ = std::min(khi, trunc_.K);
  prune();
}

int CuspElement::top() const {
  int t = jlo_ - 1;
  if (!sigma_.empty()) t = std::max(t, sigma_.rbegin()->first);
  return t;
}

int CuspElement::bottom() const {
  int b = khi_ + 1;
  for (const auto& m : ends_) {
    if (!m.empty()) b = std::min(b, m.begin()->first);
  }
  return b;
}

int CuspElement::bottom_at(End e) const {
  const auto& m = ends_[end_index(e)];
  return m.empty() ? khi_ + 1 : m.begin()->first;
}

void CuspElement::prune() {
  for (auto it = sigma_.begin(); it != sigma_.end();) {
    if (it->first < jlo_ || it->second.is_zero()) {
      it = sigma_.erase(it);
    } else {
      ++it;
    }
  }
  for (auto& m : ends_) {
    for (auto it = m.begin(); it != m.end();) {
      if (it->first > khi_ || it->second.is_zero()) {
        it = m.erase(it);
      } else {
        ++it;
      }
    }
  }
}

CuspElement& CuspElement::operator+=(const CuspElement& o) {
  check_same(*this, o);
  jlo_ = std::max(jlo_, o.jlo_);
  khi_ = std::min(khi_, o.khi_);
  for (const auto& [j, c] : o.sigma_) add_to(sigma_, j, c);
  for (int ei = 0; ei < 2; ++ei) {
    for (const auto& [k, f] : o.ends_[ei]) add_to(ends_[ei], k, f);
  }
  prune();
  return *this;
}

CuspElement& CuspElement::operator-=(const CuspElement& o) {
  return *this += -o;
}

CuspElement& CuspElement::operator*=(const GaussRat& c) {
  const SFunc s(c);
  for (auto& [j, p] : sigma_) {
    p.plus *= s;
    p.minus *= s;
  }
  for (auto& m : ends_) {
    for (auto& [k, f] : m) f *= s;
  }
  prune();
  return *this;
}

CuspElement CuspElement::retruncated() const {
  CuspElement a = *this;
  a.prune();
  return a;
}

bool equal_mod_trunc(const CuspElement& a, const CuspElement& b) {
  CuspElement d = a - b;
  return d.is_zero_mod_trunc();
}

bool CuspElement::is_zero_mod_trunc() const {
  return sigma_.empty() && ends_[0].empty() && ends_[1].empty();
}

std::string CuspElement::summary() const {
  std::ostringstream os;
  os << "dim " << n_ << ", interior degrees";
  for (const auto& [j, c] : sigma_) os << ' ' << j;
  os << " (exact >= " << jlo_ << "), end orders";
  for (int ei = 0; ei < 2; ++ei) {
    os << (ei == 0 ? " +:" : " -:");
    for (const auto& [k, f] : ends_[ei]) os << ' ' << k;
  }
  os << " (exact <= " << khi_ << ")";
  return os.str();
}

namespace {

// Sum over r in [rmin, rmax] of the composition terms.
CuspElement star_range(const CuspElement& a, const CuspElement& b, int rmin, int rmax) {
  check_same(a, b);
  const Validity v = product_validity(a, b);
  const int n = a.dim();
  CuspElement out(n, a.trunc());
  out.set_validity(v.jlo, v.khi);

  std::map<int, BranchPair> inner;
  // D_z^r of each interior coefficient of b, computed once.
  std::map<int, std::vector<BranchPair>> dzb;
  for (const auto& [jb, cb] : b.sigma()) {
    auto& list = dzb[jb];
    list.push_back(cb);
    const int rcap = std::min(rmax, jb - v.jlo + a.top());
    for (int r = 1; r <= rcap; ++r) {
      BranchPair d{dz(list.back().plus), dz(list.back().minus)};
      if (d.is_zero()) break;
      list.push_back(std::move(d));
    }
  }
  for (const auto& [ja, ca] : a.sigma()) {
    for (int deg = v.jlo; deg <= ja + b.top(); ++deg) {
      BranchPair sum{SMat(n), SMat(n)};
      bool any = false;
      for (const auto& [jb, list] : dzb) {
        const int r = ja + jb - deg;
        if (r < rmin || r > rmax || r < 0 || r >= static_cast<int>(list.size())) continue;
        const GaussRat c = falling_over_factorial(ja, r);
        if (c.is_zero()) continue;
        any = true;
        for (int sigma : {1, -1}) {
          const GaussRat cs = (r % 2 == 1 && sigma < 0) ? -c : c;
          sum[sigma] += list[static_cast<std::size_t>(r)][sigma] * SFunc(cs);
        }
      }
      if (!any) continue;
      add_to(inner, deg, BranchPair{ca.plus * sum.plus, ca.minus * sum.minus});
    }
  }
  for (auto& [j, c] : inner) out.set_sigma(j, c);

  for (int ei = 0; ei < 2; ++ei) {
    const End e = end_from_index(ei);
    // d/dxi^r of each end family of a, computed once.
    std::map<int, std::vector<SuspendedFamily>> da;
    for (const auto& [ka, fa] : a.ends(e)) {
      auto& list = da[ka];
      list.push_back(fa);
      const int rcap = std::min(rmax, v.khi - ka - b.bottom());
      for (int r = 1; r <= rcap; ++r) {
        SuspendedFamily d = list.back().derivative();
        if (d.is_zero()) break;
        list.push_back(std::move(d));
      }
    }
    std::map<int, SuspendedFamily> acc;
    for (const auto& [kb, fb] : b.ends(e)) {
      for (int ord = kb + a.bottom(); ord <= v.khi; ++ord) {
        SuspendedFamily sum(n);
        bool any = false;
        for (const auto& [ka, list] : da) {
          const int r = ord - ka - kb;
          if (r < rmin || r > rmax || r < 0 || r >= static_cast<int>(list.size())) continue;
          const GaussRat c = rising_over_factorial(kb, r) * ipow(end_sign(e), r);
          if (c.is_zero()) continue;
          any = true;
          sum += list[static_cast<std::size_t>(r)] * SFunc(c);
        }
        if (any) add_to(acc, ord, sum * fb);
      }
    }
    for (auto& [k, f] : acc) out.set_end(e, k, f);
  }
  return out;
}

}  // namespace

CuspElement star(const CuspElement& a, const CuspElement& b) {
  return star_range(a, b, 0, 1 << 20);
}

CuspElement star_term(const CuspElement& a, const CuspElement& b, int r) {
  return star_range(a, b, r, r);
}

CuspElement commutator(const CuspElement& a, const CuspElement& b) {
  return star(a, b) - star(b, a);
}

CuspElement pointwise_product(const CuspElement& a, const CuspElement& b) {
  check_same(a, b);
  const Validity v = product_validity(a, b);
  const int n = a.dim();
  CuspElement out(n, a.trunc());
  out.set_validity(v.jlo, v.khi);
  std::map<int, BranchPair> inner;
  for (const auto& [ja, ca] : a.sigma()) {
    for (const auto& [jb, cb] : b.sigma()) {
      if (ja + jb < v.jlo) continue;
      add_to(inner, ja + jb, BranchPair{ca.plus * cb.plus, ca.minus * cb.minus});
    }
  }
  for (auto& [j, c] : inner) out.set_sigma(j, c);
  for (int ei = 0; ei < 2; ++ei) {
    const End e = end_from_index(ei);
    std::map<int, SuspendedFamily> acc;
    for (const auto& [ka, fa] : a.ends(e)) {
      for (const auto& [kb, fb] : b.ends(e)) {
        if (ka + kb <= v.khi) add_to(acc, ka + kb, fa * fb);
      }
    }
    for (auto& [k, f] : acc) out.set_end(e, k, f);
  }
  return out;
}

CuspElement poisson_bracket(const CuspElement& a, const CuspElement& b) {
  check_same(a, b);
  const Validity v = product_validity(a, b);
  const int n = a.dim();
  CuspElement out(n, a.trunc());
  out.set_validity(v.jlo, v.khi);
  std::map<int, BranchPair> inner;
  for (const auto& [ja, ca] : a.sigma()) {
    for (const auto& [jb, cb] : b.sigma()) {
      const int deg = ja + jb - 1;
      if (deg < v.jlo) continue;
      BranchPair term{SMat(n), SMat(n)};
      for (int sigma : {1, -1}) {
        const SFunc da(GaussRat(Rational(ja * sigma)));
        const SFunc db(GaussRat(Rational(jb * sigma)));
        term[sigma] = (ca[sigma] * ddz(cb[sigma])) * da - (ddz(ca[sigma]) * cb[sigma]) * db;  // d_zeta a d_z b - d_z a d_zeta b
      }
      add_to(inner, deg, term);
    }
  }
  for (auto& [j, c] : inner) out.set_sigma(j, c);
  for (int ei = 0; ei < 2; ++ei) {
    const End e = end_from_index(ei);
    const long se = end_sign(e);
    std::map<int, SuspendedFamily> acc;
    for (const auto& [ka, fa] : a.ends(e)) {
      for (const auto& [kb, fb] : b.ends(e)) {
        const int ord = ka + kb + 1;
        if (ord > v.khi) continue;
        // d/dz = -s_e x^2 d/dx at the end
        SuspendedFamily t = (fa.derivative() * fb) * SFunc(-se * kb) - (fa * fb.derivative()) * SFunc(-se * ka);
        add_to(acc, ord, t);
      }
    }
    for (auto& [k, f] : acc) out.set_end(e, k, f);
  }
  return out;
}

std::optional<CompatibilityIssue> find_incompatibility(const CuspElement& a) {
  const int n = a.dim();
  for (int ei = 0; ei < 2; ++ei) {
    const End e = end_from_index(ei);
    for (int sigma : {1, -1}) {
      std::map<std::pair<int, int>, GMat> from_interior, from_ends;
      for (const auto& [j, c] : a.sigma()) {
        for (int r = 0; r < n; ++r) {
          for (int col = 0; col < n; ++col) {
            for (const auto& [k, v] : c[sigma](r, col).expand_at_end(e, a.khi())) {
              from_interior.try_emplace({j, k}, GMat(n)).first->second(r, col) = v;
            }
          }
        }
      }
      for (const auto& [k, f] : a.ends(e)) {
        for (const auto& [j, g] : f.homogeneous(sigma, a.jlo())) from_ends.emplace(std::make_pair(j, k), g);
      }
      std::map<std::pair<int, int>, GMat> all = from_interior;
      all.insert(from_ends.begin(), from_ends.end());
      for (const auto& [key, unused] : all) {
        (void)unused;
        auto i1 = from_interior.find(key);
        auto i2 = from_ends.find(key);
        const GMat zero(n);
        const GMat& g1 = i1 == from_interior.end() ? zero : i1->second;
        const GMat& g2 = i2 == from_ends.end() ? zero : i2->second;
        if (!(g1 == g2)) return CompatibilityIssue{key.first, key.second, e, sigma};
      }
    }
  }
  return std::nullopt;
}

void check_compatibility(const CuspElement& a) {
  if (auto issue = find_incompatibility(a)) {
    throw CompatibilityError("interior and end layers disagree", issue->j, issue->k, end_sign(issue->end));
  }
}

RegularizerQ RegularizerQ::standard() {
  return {SFunc(RatFunc::var() * SFunc::one_plus_z2(-1))};
}

RegularizerQ RegularizerQ::scaled(const SFunc& r, const SFunc& rinv) const {
  return {dlogq + r.derivative() * rinv};
}

std::map<int, GaussRat> RegularizerQ::dlog_jet(int sigma, int lowest) const {
  return dlogq.homogeneous(sigma, lowest);
}

std::map<int, GaussRat> RegularizerQ::log_ratio_jet(int sigma, int lowest) const {
  std::map<int, GaussRat> d = dlog_jet(sigma, lowest - 1);
  for (const auto& [j, c] : d) {
    if (j > -1 || (j == -1 && !(c == GaussRat(sigma)))) {
      throw HypothesisViolation("regularizer must have principal symbol abs(xi)");
    }
  }
  std::map<int, GaussRat> out;
  for (int j = -1; j >= lowest; --j) {
    auto it = d.find(j - 1);
    if (it == d.end()) continue;
    out[j] = it->second / GaussRat(Rational(j * sigma));
  }
  return out;
}

namespace {

std::map<int, GaussRat> jet_derivative(const std::map<int, GaussRat>& jet, int sigma) {
  std::map<int, GaussRat> out;
  for (const auto& [j, c] : jet) {
    if (j != 0) out[j - 1] = c * GaussRat(Rational(j * sigma));
  }
  return out;
}

CuspElement derivation_logx(const CuspElement& a) {
  const int n = a.dim();
  CuspElement out(n, a.trunc());
  out.set_validity(a.jlo(), a.khi());
  const SFunc z = SFunc::var();
  // D_z log x = i z / (1 + z^2)
  std::vector<SFunc> L{SFunc(0), SFunc(GaussRat(0, 1)) * z * SFunc(SFunc::one_plus_z2(-1))};
  auto Lk = [&](int k) -> const SFunc& {
    while (static_cast<int>(L.size()) <= k) L.push_back(L.back().D());
    return L[static_cast<std::size_t>(k)];
  };
  std::map<int, BranchPair> inner;
  for (const auto& [j, c] : a.sigma()) {
    for (int k = 1; j - k >= a.jlo(); ++k) {
      const GaussRat f = falling_over_factorial(j, k);
      if (f.is_zero()) break;
      BranchPair term{SMat(n), SMat(n)};
      for (int sigma : {1, -1}) {
        const GaussRat cs = (k % 2 == 1 && sigma < 0) ? f : -f;
        term[sigma] = c[sigma] * (Lk(k) * SFunc(cs));
      }
      add_to(inner, j - k, term);
    }
  }
  for (auto& [j, c] : inner) out.set_sigma(j, c);
  for (int ei = 0; ei < 2; ++ei) {
    const End e = end_from_index(ei);
    std::map<int, SuspendedFamily> acc;
    for (const auto& [ka, fa] : a.ends(e)) {
      SuspendedFamily d = fa;
      Rational fact = 1;
      for (int k = 1; ka + k <= a.khi(); ++k) {
        d = d.derivative();
        fact *= k;
        if (d.is_zero()) break;
        for (const auto& [m, v] : Lk(k).expand_at_end(e, a.khi() - ka)) {
          add_to(acc, ka + m, d * SFunc(-v / GaussRat(fact)));
        }
      }
    }
    for (auto& [k, f] : acc) out.set_end(e, k, f);
  }
  return out;
}

CuspElement derivation_logq(const CuspElement& a, const RegularizerQ& q) {
  const int n = a.dim();
  CuspElement out(n, a.trunc());
  out.set_validity(a.jlo(), a.khi());
  std::map<int, BranchPair> inner;
  const int depth = a.jlo() - a.top() - 1;
  for (int sigma : {1, -1}) {
    std::map<int, GaussRat> jet = q.dlog_jet(sigma, depth);
    Rational fact = 1;
    for (int k = 1; !jet.empty(); ++k) {
      if (k > 1) jet = jet_derivative(jet, sigma);
      fact *= k;
      bool any = false;
      for (const auto& [j, c] : a.sigma()) {
        SMat d = c[sigma];
        for (int i = 0; i < k; ++i) d = dz(d);
        if (d.is_zero()) continue;
        for (const auto& [dj, dc] : jet) {
          if (j + dj < a.jlo()) continue;
          any = true;
          BranchPair term{SMat(n), SMat(n)};
          term[sigma] = d * SFunc(dc / GaussRat(fact));
          add_to(inner, j + dj, term);
        }
      }
      if (!any && jet.rbegin()->first + a.top() < a.jlo()) break;
    }
  }
  for (auto& [j, c] : inner) out.set_sigma(j, c);
  for (int ei = 0; ei < 2; ++ei) {
    const End e = end_from_index(ei);
    std::map<int, SuspendedFamily> acc;
    SFunc dq = q.dlogq;
    for (int k = 1; a.bottom() + k <= a.khi(); ++k) {
      if (k > 1) dq = dq.derivative();
      const GaussRat ek = ipow(end_sign(e), k);
      for (const auto& [ka, fa] : a.ends(e)) {
        if (ka + k > a.khi()) break;
        const GaussRat c = rising_over_factorial(ka, k) * ek;
        if (c.is_zero()) continue;
        add_to(acc, ka + k, fa * (dq * SFunc(c)));
      }
    }
    for (auto& [k, f] : acc) out.set_end(e, k, f);
  }
  return out;
}

}  // namespace

CuspElement log_derivation(const CuspElement& a, LogKind kind, const RegularizerQ& q) {
  return kind == LogKind::LogX ? derivation_logx(a) : derivation_logq(a, q);
}

CuspElement tilde_derivation(const CuspElement& a, const RegularizerQ& q) {
  return derivation_logq(a, q) - derivation_logx(a);
}

std::map<int, SuspendedFamily> indicial_expand(const CuspElement& a, End e) {
  return a.ends(e);
}

SuspendedFamily indicial_family(const CuspElement& a, End e) {
  const auto& m = a.ends(e);
  if (m.empty()) return SuspendedFamily(SMat(a.dim()));
  const SuspendedFamily& f = m.begin()->second;
  return e == End::Plus ? f : f.reflect();
}

int ends_order(const CuspElement& a) {
  return a.bottom();
}

int interior_order(const CuspElement& a) {
  return a.top();
}

EllipticityReport is_fully_elliptic(const CuspElement& a) {
  EllipticityReport rep;
  auto fail = [&](std::string w) {
    rep.elliptic = false;
    rep.witnesses.push_back(std::move(w));
  };
  if (a.interior_empty()) {
    fail("interior symbol vanishes to the truncation order");
  } else {
    const auto& [m, c] = *a.sigma().rbegin();
    for (int sigma : {1, -1}) {
      try {
        (void)SuspendedFamily(c[sigma]).inverse();
      } catch (const NotInvertible& ex) {
        fail("principal symbol of degree " + std::to_string(m) + " on branch " + (sigma > 0 ? "+" : "-") +
             " singular at z = " + ex.witness);
      }
    }
  }
  for (End e : {End::Plus, End::Minus}) {
    const auto& ends = a.ends(e);
    const std::string name = e == End::Plus ? "+" : "-";
    if (ends.empty()) {
      fail("indicial family at end " + name + " vanishes to the truncation order");
      continue;
    }
    try {
      (void)ends.begin()->second.inverse();
    } catch (const NotInvertible& ex) {
      fail("indicial family at end " + name + " (x-order " + std::to_string(ends.begin()->first) +
           ") singular at xi = " + ex.witness);
    }
  }
  return rep;
}

CuspElement parametrix(const CuspElement& a, ParametrixOrders orders) {
  const EllipticityReport rep = is_fully_elliptic(a);
  if (!rep.elliptic) throw NotFullyElliptic(rep.witnesses.front());
  const int n = a.dim();
  CuspElement b0(n, a.trunc());
  const auto& [m, c] = *a.sigma().rbegin();
  b0.set_sigma(-m, BranchPair{SuspendedFamily(c.plus).inverse().matrix(), SuspendedFamily(c.minus).inverse().matrix()});
  for (End e : {End::Plus, End::Minus}) {
    const auto& [p, f] = *a.ends(e).begin();
    b0.set_end(e, -p, f.inverse());
  }
  const CuspElement r = CuspElement::identity(n, a.trunc()) - star(a, b0);
  CuspElement b = b0;
  CuspElement term = b0;
  const int steps = std::max(orders.P, orders.M) + 1;
  for (int i = 0; i < steps && !term.is_zero_mod_trunc(); ++i) {
    term = star(term, r);
    b += term;
  }
  return b;
}

}  // namespace cuspcalc
