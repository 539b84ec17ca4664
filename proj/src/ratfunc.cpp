#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "cuspcalc/errors.hpp"
#include "cuspcalc/poly.hpp"

namespace cuspcalc {

namespace {

using Series = std::vector<GaussRat>;

Series series_mul(const Series& a, const Series& b, std::size_t len) {
  Series r(len, GaussRat(0));
  for (std::size_t i = 0; i < a.size() && i < len; ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.size() && i + j < len; ++j) r[i + j] += a[i] * b[j];
  }
  return r;
}

// (1 - c t)^(-m) truncated to len terms.
Series inverse_binomial(const GaussRat& c, int m, std::size_t len) {
  Series r(len, GaussRat(0));
  Integer binom = 1;  // C(m + k - 1, k)
  GaussRat cp(1);
  for (std::size_t k = 0; k < len; ++k) {
    r[k] = cp * GaussRat(Rational(binom));
    cp *= c;
    binom = binom * (m + static_cast<long>(k)) / (static_cast<long>(k) + 1);
  }
  return r;
}

Poly pow_linear(const GaussRat& root, int m) {
  Poly r(GaussRat(1));
  Poly l = Poly::linear(root);
  for (int k = 0; k < m; ++k) r = r * l;
  return r;
}

// Taylor shift: coefficients of p(a + t) in t.
Series taylor_shift(const Poly& p, const GaussRat& a) {
  Series c = p.coeffs();
  int n = p.degree();
  for (int i = 0; i < n; ++i)
    for (int j = n - 1; j >= i; --j) c[static_cast<std::size_t>(j)] += a * c[static_cast<std::size_t>(j) + 1];
  return c;
}

}  // namespace

RatFunc::RatFunc(GaussRat c) : num_(std::move(c)) {}

RatFunc::RatFunc(Poly num) : num_(std::move(num)) {}

RatFunc::RatFunc(Poly num, std::vector<Pole> den) : num_(std::move(num)), den_(std::move(den)) { reduce(); }

RatFunc RatFunc::pole_term(const GaussRat& p, int m, const GaussRat& c) {
  return RatFunc(Poly(c), {Pole{p, m}});
}

RatFunc& RatFunc::operator*=(const GaussRat& c) {
  if (c.is_zero()) {
    num_ = Poly();
    den_.clear();
    return *this;
  }
  num_ *= c;
  return *this;
}

void RatFunc::reduce() {
  std::map<GaussRat, int> merged;
  for (const auto& pl : den_)
    if (pl.mult != 0) merged[pl.at] += pl.mult;
  den_.clear();
  if (num_.is_zero()) return;
  for (auto& [p, m] : merged) {
    if (m < 0) {
      num_ = num_ * pow_linear(p, -m);
      continue;
    }
    while (m > 0 && num_.divide_root(p)) --m;
    if (m > 0) den_.push_back({p, m});
  }
}

Poly RatFunc::den_poly() const {
  Poly r(GaussRat(1));
  for (const auto& pl : den_) r = r * pow_linear(pl.at, pl.mult);
  return r;
}

int RatFunc::den_degree() const {
  int d = 0;
  for (const auto& pl : den_) d += pl.mult;
  return d;
}

int RatFunc::order_at_infinity() const {
  if (is_zero()) return -1000000;
  return num_.degree() - den_degree();
}

GaussRat RatFunc::eval(const GaussRat& v) const {
  GaussRat d(1);
  for (const auto& pl : den_) d *= pow(v - pl.at, pl.mult);
  if (d.is_zero()) throw std::domain_error("evaluation at a pole");
  return num_.eval(v) / d;
}

std::complex<double> RatFunc::eval(std::complex<double> v) const {
  std::complex<double> d{1, 0};
  for (const auto& pl : den_) d *= std::pow(v - pl.at.to_complex(), pl.mult);
  return num_.eval(v) / d;
}

bool RatFunc::has_pole_at(const GaussRat& v) const {
  return std::any_of(den_.begin(), den_.end(), [&](const Pole& p) { return p.at == v; });
}

bool RatFunc::has_real_pole_in(double lo, double hi) const {
  for (const auto& pl : den_) {
    if (!pl.at.is_real()) continue;
    double r = pl.at.re.get_d();
    if (r >= lo && r <= hi) return true;
  }
  return false;
}

RatFunc RatFunc::derivative() const {
  if (den_.empty()) return RatFunc(num_.derivative());
  // (n/D)' = (n' L - n sum_p m_p L/(v-p)) / (D L), L = prod (v - p)
  Poly L(GaussRat(1));
  for (const auto& pl : den_) L = L * Poly::linear(pl.at);
  Poly top = num_.derivative() * L;
  for (const auto& pl : den_) {
    Poly without(GaussRat(1));
    for (const auto& q : den_)
      if (!(q.at == pl.at)) without = without * Poly::linear(q.at);
    top -= num_ * without * GaussRat(pl.mult);
  }
  std::vector<Pole> d = den_;
  for (auto& pl : d) pl.mult += 1;
  return RatFunc(top, d);
}

RatFunc RatFunc::reflect() const {
  // f(-v): (v - p) -> (-v - p) = -(v + p)
  Poly n = num_.reflect();
  std::vector<Pole> d;
  int sign_flips = 0;
  for (const auto& pl : den_) {
    d.push_back({-pl.at, pl.mult});
    sign_flips += pl.mult;
  }
  if (sign_flips % 2 != 0) n = -n;
  return RatFunc(n, d);
}

RatFunc RatFunc::inverse() const {
  if (is_zero()) throw NotInvertible("inverse of the zero rational function");
  std::vector<Pole> poles;
  for (const auto& [r, m] : gaussian_roots(num_)) poles.push_back({r, m});
  Poly top = den_poly() * num_.leading().inverse();
  return RatFunc(top, poles);
}

RatFunc& RatFunc::operator+=(const RatFunc& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) return *this = o;
  std::map<GaussRat, int> lcm;
  for (const auto& pl : den_) lcm[pl.at] = std::max(lcm[pl.at], pl.mult);
  for (const auto& pl : o.den_) lcm[pl.at] = std::max(lcm[pl.at], pl.mult);
  auto cofactor = [&lcm](const std::vector<Pole>& d) {
    std::map<GaussRat, int> have;
    for (const auto& pl : d) have[pl.at] = pl.mult;
    Poly r(GaussRat(1));
    for (const auto& [p, m] : lcm) r = r * pow_linear(p, m - have[p]);
    return r;
  };
  Poly n = num_ * cofactor(den_) + o.num_ * cofactor(o.den_);
  std::vector<Pole> d;
  for (const auto& [p, m] : lcm) d.push_back({p, m});
  num_ = std::move(n);
  den_ = std::move(d);
  reduce();
  return *this;
}

RatFunc& RatFunc::operator-=(const RatFunc& o) { return *this += -o; }

RatFunc& RatFunc::operator*=(const RatFunc& o) {
  if (o.is_constant()) return *this *= o.constant_value();
  if (is_constant()) {
    GaussRat c = constant_value();
    *this = o;
    return *this *= c;
  }
  num_ = num_ * o.num_;
  den_.insert(den_.end(), o.den_.begin(), o.den_.end());
  reduce();
  return *this;
}

RatFunc operator-(const RatFunc& a) {
  RatFunc r = a;
  r.num_ *= GaussRat(-1);
  return r;
}

std::map<int, GaussRat> RatFunc::expand_at_infinity(int lowest) const {
  std::map<int, GaussRat> out;
  if (is_zero()) return out;
  int top = order_at_infinity();
  if (lowest > top) return out;
  std::size_t len = static_cast<std::size_t>(top - lowest) + 1;
  // f = v^top * ntilde(u) * prod (1 - p u)^(-m), u = 1/v
  Series nt;
  for (int k = num_.degree(); k >= 0; --k) nt.push_back(num_.coeff(k));
  Series acc = nt;
  acc.resize(len, GaussRat(0));
  for (const auto& pl : den_) acc = series_mul(acc, inverse_binomial(pl.at, pl.mult, len), len);
  for (std::size_t k = 0; k < len; ++k)
    if (!acc[k].is_zero()) out[top - static_cast<int>(k)] = acc[k];
  return out;
}

std::vector<GaussRat> RatFunc::taylor_at_zero(int highest) const {
  std::size_t len = static_cast<std::size_t>(highest) + 1;
  Series acc = num_.coeffs();
  acc.resize(len, GaussRat(0));
  for (const auto& pl : den_) {
    if (pl.at.is_zero()) throw std::domain_error("Taylor expansion at a pole");
    // (v - p)^(-m) = (-p)^(-m) (1 - v/p)^(-m)
    Series s = inverse_binomial(pl.at.inverse(), pl.mult, len);
    GaussRat scale = pow(-pl.at, -pl.mult);
    for (auto& c : s) c *= scale;
    acc = series_mul(acc, s, len);
  }
  acc.resize(len, GaussRat(0));
  return acc;
}

PartialFractions RatFunc::partial_fractions() const {
  PartialFractions pf;
  pf.poly = num_.divmod(den_poly()).first;
  for (const auto& pl : den_) {
    // g(v) = num / prod_{q != p} (v - q)^m_q, expanded at v = p + t
    std::size_t len = static_cast<std::size_t>(pl.mult);
    Series g = taylor_shift(num_, pl.at);
    g.resize(std::max(g.size(), len), GaussRat(0));
    g.resize(len);
    for (const auto& q : den_) {
      if (q.at == pl.at) continue;
      GaussRat d = pl.at - q.at;  // (p + t - q) = d (1 + t/d)
      Series s = inverse_binomial(-d.inverse(), q.mult, len);
      GaussRat scale = pow(d, -q.mult);
      for (auto& c : s) c *= scale;
      g = series_mul(g, s, len);
    }
    for (int k = pl.mult; k >= 1; --k) {
      const GaussRat& c = g[static_cast<std::size_t>(pl.mult - k)];
      if (!c.is_zero()) pf.terms.push_back({pl.at, k, c});
    }
  }
  return pf;
}

RatFunc RatFunc::from_partial_fractions(const PartialFractions& pf) {
  RatFunc r(pf.poly);
  for (const auto& t : pf.terms) r += pole_term(t.pole, t.order, t.coeff);
  return r;
}

std::string RatFunc::str(const std::string& var) const {
  if (den_.empty()) return num_.str(var);
  std::ostringstream os;
  os << "(" << num_.str(var) << ")/(";
  for (std::size_t k = 0; k < den_.size(); ++k) {
    if (k) os << "*";
    os << "(" << var << " - (" << den_[k].at.str() << "))";
    if (den_[k].mult > 1) os << "^" << den_[k].mult;
  }
  os << ")";
  return os.str();
}

}  // namespace cuspcalc
