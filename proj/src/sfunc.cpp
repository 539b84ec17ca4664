#include "cuspcalc/sfunc.hpp"

#include <cmath>
#include <functional>

#include "cuspcalc/errors.hpp"

namespace cuspcalc {

namespace {

const GaussRat kI = GaussRat::i();

// Coefficients of x^k in s = x (1 + x^2)^(-1/2), k <= highest.
std::map<int, GaussRat> s_expansion(int highest) {
  std::map<int, GaussRat> out;
  if (highest < 1) return out;
  auto b = binomial_series(GaussRat(1), Rational(-1, 2), static_cast<std::size_t>((highest - 1) / 2) + 1);
  for (std::size_t m = 0; m < b.size(); ++m) out[2 * static_cast<int>(m) + 1] = b[m];
  return out;
}

std::map<int, GaussRat> rational_at_end(const RatFunc& r, End e, int highest) {
  std::map<int, GaussRat> out;
  if (r.is_zero()) return out;
  int sgn_e = end_sign(e);
  for (const auto& [n, a] : r.expand_at_infinity(-highest)) {
    // z^n = (s_e / x)^n
    GaussRat c = a;
    if (sgn_e < 0 && (n % 2 != 0)) c = -c;
    out[-n] = c;
  }
  return out;
}

}  // namespace

RatFunc SFunc::one_plus_z2(int e) {
  if (e >= 0) {
    Poly base(std::vector<GaussRat>{GaussRat(1), GaussRat(0), GaussRat(1)});
    Poly r(GaussRat(1));
    for (int k = 0; k < e; ++k) r = r * base;
    return RatFunc(r);
  }
  return RatFunc(Poly(GaussRat(1)), {Pole{kI, -e}, Pole{-kI, -e}});
}

SFunc& SFunc::operator+=(const SFunc& o) {
  r0_ += o.r0_;
  r1_ += o.r1_;
  return *this;
}

SFunc& SFunc::operator-=(const SFunc& o) {
  r0_ -= o.r0_;
  r1_ -= o.r1_;
  return *this;
}

SFunc& SFunc::operator*=(const SFunc& o) {
  if (o.r1_.is_zero() && o.r0_.is_constant()) {
    GaussRat c = o.r0_.constant_value();
    r0_ *= c;
    r1_ *= c;
    return *this;
  }
  if (r1_.is_zero() && o.r1_.is_zero()) {
    r0_ *= o.r0_;
    return *this;
  }
  RatFunc a = r0_ * o.r0_;
  if (!r1_.is_zero() && !o.r1_.is_zero()) a += r1_ * o.r1_ * one_plus_z2(-1);
  RatFunc b = r0_ * o.r1_ + r1_ * o.r0_;
  r0_ = std::move(a);
  r1_ = std::move(b);
  return *this;
}

SFunc SFunc::derivative() const {
  RatFunc d1 = r1_.derivative();
  if (!r1_.is_zero()) d1 -= r1_ * RatFunc::var() * one_plus_z2(-1);
  return SFunc(r0_.derivative(), d1);
}

SFunc SFunc::D() const {
  SFunc d = derivative();
  d.r0_ *= -kI;
  d.r1_ *= -kI;
  return d;
}

SFunc SFunc::inverse() const {
  if (r1_.is_zero()) return SFunc(r0_.inverse());
  RatFunc n = r0_ * r0_ - r1_ * r1_ * one_plus_z2(-1);
  RatFunc ni = n.inverse();
  return SFunc(r0_ * ni, -(r1_ * ni));
}

std::complex<double> SFunc::eval(double z) const {
  std::complex<double> v = r0_.eval(std::complex<double>(z, 0.0));
  if (!r1_.is_zero()) v += r1_.eval(std::complex<double>(z, 0.0)) / std::sqrt(1.0 + z * z);
  return v;
}

std::map<int, GaussRat> SFunc::expand_at_end(End e, int highest) const {
  std::map<int, GaussRat> out = rational_at_end(r0_, e, highest);
  if (!r1_.is_zero()) {
    auto s = s_expansion(highest - (-r1_.order_at_infinity()));
    auto r = rational_at_end(r1_, e, highest - 1);
    for (const auto& [a, ca] : r)
      for (const auto& [b, cb] : s) {
        if (a + b > highest) break;
        out[a + b] += ca * cb;
      }
  }
  for (auto it = out.begin(); it != out.end();) {
    if (it->second.is_zero()) it = out.erase(it);
    else ++it;
  }
  return out;
}

int SFunc::order_at_end(End e) const {
  if (is_zero()) return 1 << 20;
  int cand = 1 << 20;
  if (!r0_.is_zero()) cand = std::min(cand, -r0_.order_at_infinity());
  if (!r1_.is_zero()) cand = std::min(cand, 1 - r1_.order_at_infinity());
  for (int span = 8; span < 4096; span *= 2) {
    auto ex = expand_at_end(e, cand + span);
    if (!ex.empty()) return ex.begin()->first;
  }
  throw std::logic_error("order_at_end: no nonzero coefficient found");
}

std::map<int, GaussRat> SFunc::homogeneous(int sigma, int lowest) const {
  std::map<int, GaussRat> out;
  for (const auto& [k, c] : expand_at_end(sigma > 0 ? End::Plus : End::Minus, -lowest)) out[-k] = c;
  return out;
}

int SFunc::top_degree() const {
  if (is_zero()) return -(1 << 20);
  return -std::min(order_at_end(End::Plus), order_at_end(End::Minus));
}

std::string SFunc::str() const {
  if (r1_.is_zero()) return r0_.str("z");
  return r0_.str("z") + " + (" + r1_.str("z") + ")*s";
}

namespace {

// Antiderivative of z^m (1+z^2)^(-k/2), k odd, as H(z) s(z) + c * arcsinh(z).
struct SqrtAnti {
  RatFunc H;
  GaussRat c;
};

class SqrtIntegrator {
 public:
  SqrtAnti get(int m, int k) {
    auto key = std::make_pair(m, k);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    SqrtAnti r;
    if (m >= 2) {
      SqrtAnti a = get(m - 2, k - 2), b = get(m - 2, k);
      r = {a.H - b.H, a.c - b.c};
    } else if (m == 1) {
      // (1+z^2)^((2-k)/2) / (2-k) = (1+z^2)^((3-k)/2) s / (2-k)
      r = {SFunc::one_plus_z2((3 - k) / 2) * RatFunc(GaussRat(rat(1, 2 - k))), GaussRat(0)};
    } else if (k == 1) {
      r = {RatFunc(), GaussRat(1)};
    } else if (k >= 3) {
      // J(k) = z (1+z^2)^(-(k-2)/2)/(k-2) + (k-3)/(k-2) J(k-2)
      SqrtAnti prev = get(0, k - 2);
      Rational f(k - 3, k - 2);
      f.canonicalize();
      RatFunc head = RatFunc::var() * SFunc::one_plus_z2(-(k - 3) / 2) * RatFunc(GaussRat(Rational(1, k - 2)));
      r = {head + prev.H * RatFunc(GaussRat(f)), prev.c * GaussRat(f)};
    } else {
      // k <= -1: J(k) = (k J(k+2) - z (1+z^2)^(-k/2)) / (k-1)
      SqrtAnti next = get(0, k + 2);
      Rational f(k, k - 1), g(1, k - 1);
      f.canonicalize();
      g.canonicalize();
      RatFunc head = RatFunc::var() * SFunc::one_plus_z2((1 - k) / 2);
      r = {next.H * RatFunc(GaussRat(f)) - head * RatFunc(GaussRat(g)), next.c * GaussRat(f)};
    }
    memo_[key] = r;
    return r;
  }

 private:
  std::map<std::pair<int, int>, SqrtAnti> memo_;
};

// Coefficients Z^n, n >= 0, of H(Z) s(Z) as Z -> +inf.
std::map<int, GaussRat> hs_at_infinity(const RatFunc& H) {
  std::map<int, GaussRat> out;
  if (H.is_zero()) return out;
  int top = H.order_at_infinity();
  if (top < 1) return out;
  auto h = H.expand_at_infinity(1);
  auto b = binomial_series(GaussRat(1), Rational(-1, 2), static_cast<std::size_t>(top) / 2 + 1);
  for (const auto& [n, hn] : h)
    for (std::size_t k = 0; k < b.size(); ++k) {
      int p = n - 1 - 2 * static_cast<int>(k);
      if (p < 0) break;
      out[p] += hn * b[k];
    }
  return out;
}

}  // namespace

RegularizedIntegral line_integral(const SFunc& f) {
  RegularizedIntegral out = reg_integral(f.r0());
  const RatFunc& r1 = f.r1();
  if (r1.is_zero()) return out;
  int n = 0;
  for (const auto& pl : r1.den()) {
    if (!(pl.at == kI || pl.at == -kI)) throw UnsupportedPole("s-coefficient with a pole away from +-i");
    n = std::max(n, pl.mult);
  }
  RatFunc P = r1 * SFunc::one_plus_z2(n);
  if (!P.is_polynomial()) throw std::logic_error("line_integral: expected polynomial numerator");
  SqrtIntegrator integ;
  RatFunc H;
  GaussRat c(0);
  for (int m = 0; m <= P.num().degree(); ++m) {
    GaussRat pm = P.num().coeff(m);
    if (pm.is_zero()) continue;
    SqrtAnti a = integ.get(m, 2 * n + 1);
    H += a.H * RatFunc(pm);
    c += pm * a.c;
  }
  ExactScalar log2 = ExactScalar::log_rational(2);
  // upper edge: F(Z) = H(Z)s(Z) + c (log Z + log 2)
  for (const auto& [p, v] : hs_at_infinity(H)) {
    if (p == 0) out.constant += ExactScalar(v);
    else out.upper.power[p] += ExactScalar(v);
  }
  out.upper.log_coeff += ExactScalar(c);
  out.constant += ExactScalar(c) * log2;
  // lower edge: -F(-Z) = -H(-Z)s(Z) + c (log Z + log 2)
  for (const auto& [p, v] : hs_at_infinity(H.reflect())) {
    if (p == 0) out.constant -= ExactScalar(v);
    else out.lower.power[p] -= ExactScalar(v);
  }
  out.lower.log_coeff += ExactScalar(c);
  out.constant += ExactScalar(c) * log2;
  for (auto* e : {&out.upper, &out.lower})
    for (auto it = e->power.begin(); it != e->power.end();) {
      if (it->second.is_zero()) it = e->power.erase(it);
      else ++it;
    }
  return out;
}

}  // namespace cuspcalc
