#include "cuspcalc/regint.hpp"

#include "cuspcalc/errors.hpp"

namespace cuspcalc {

namespace {

void add_to(std::map<int, ExactScalar>& m, int k, const ExactScalar& v) {
  if (v.is_zero()) return;
  auto& slot = m[k];
  slot += v;
  if (slot.is_zero()) m.erase(k);
}

void scale_end(EndExpansion& e, const ExactScalar& s) {
  std::map<int, ExactScalar> p;
  for (const auto& [k, v] : e.power) add_to(p, k, v * s);
  e.power = std::move(p);
  e.log_coeff = e.log_coeff * s;
}

ExactScalar sign_i_pi(const GaussRat& pole) {
  // Log(-T - p) = log T + Log(1 + p/T) + i pi * (Im p <= 0 ? 1 : -1)
  long s = sgn(pole.im) <= 0 ? 1 : -1;
  return ExactScalar(GaussRat(Rational(0), Rational(s))) * ExactScalar::pi();
}

// Value of the antiderivative of a pole term at a finite point.
ExactScalar pole_antiderivative_at(const PartialFractions::Term& t, const GaussRat& v) {
  GaussRat d = v - t.pole;
  if (t.order == 1) return ExactScalar(t.coeff) * ExactScalar::log_gauss(d);
  return ExactScalar(-t.coeff / GaussRat(t.order - 1) * pow(d, -(t.order - 1)));
}

void integrate_piece(const Piece& pc, RegularizedIntegral& out) {
  double lo = pc.lo ? pc.lo->get_d() : -1e300, hi = pc.hi ? pc.hi->get_d() : 1e300;
  if (pc.f.has_real_pole_in(lo, hi)) throw UnsupportedPole("pole on the integration piece");
  PartialFractions pf = pc.f.partial_fractions();
  // antiderivative of the polynomial part
  std::vector<GaussRat> q(static_cast<std::size_t>(pf.poly.degree() + 2), GaussRat(0));
  for (int n = 0; n <= pf.poly.degree(); ++n) q[static_cast<std::size_t>(n) + 1] = pf.poly.coeff(n) / GaussRat(n + 1);
  Poly Q(q);
  if (pc.hi) {
    GaussRat b(*pc.hi);
    out.constant += ExactScalar(Q.eval(b));
    for (const auto& t : pf.terms) out.constant += pole_antiderivative_at(t, b);
  } else {
    for (int m = 1; m <= Q.degree(); ++m) add_to(out.upper.power, m, ExactScalar(Q.coeff(m)));
    for (const auto& t : pf.terms)
      if (t.order == 1) out.upper.log_coeff += ExactScalar(t.coeff);
  }
  if (pc.lo) {
    GaussRat a(*pc.lo);
    out.constant -= ExactScalar(Q.eval(a));
    for (const auto& t : pf.terms) out.constant -= pole_antiderivative_at(t, a);
  } else {
    for (int m = 1; m <= Q.degree(); ++m) {
      GaussRat c = Q.coeff(m);
      if (m % 2 == 1) c = -c;
      add_to(out.lower.power, m, ExactScalar(-c));
    }
    for (const auto& t : pf.terms) {
      if (t.order != 1) continue;
      out.lower.log_coeff -= ExactScalar(t.coeff);
      out.constant -= ExactScalar(t.coeff) * sign_i_pi(t.pole);
    }
  }
}

}  // namespace

std::map<int, ExactScalar> RegularizedIntegral::power_part() const {
  std::map<int, ExactScalar> p;
  for (const auto& [k, v] : upper.power) add_to(p, k, v);
  for (const auto& [k, v] : lower.power) add_to(p, k, v);
  return p;
}

RegularizedIntegral& RegularizedIntegral::operator+=(const RegularizedIntegral& o) {
  constant += o.constant;
  for (const auto& [k, v] : o.upper.power) add_to(upper.power, k, v);
  for (const auto& [k, v] : o.lower.power) add_to(lower.power, k, v);
  upper.log_coeff += o.upper.log_coeff;
  lower.log_coeff += o.lower.log_coeff;
  for (const auto& [k, v] : o.higher_log) add_to(higher_log, k, v);
  return *this;
}

RegularizedIntegral& RegularizedIntegral::operator*=(const ExactScalar& s) {
  constant = constant * s;
  scale_end(upper, s);
  scale_end(lower, s);
  std::map<int, ExactScalar> h;
  for (const auto& [k, v] : higher_log) add_to(h, k, v * s);
  higher_log = std::move(h);
  return *this;
}

bool operator==(const RegularizedIntegral& a, const RegularizedIntegral& b) {
  return a.constant == b.constant && a.upper.power == b.upper.power && a.lower.power == b.lower.power &&
         a.upper.log_coeff == b.upper.log_coeff && a.lower.log_coeff == b.lower.log_coeff &&
         a.higher_log == b.higher_log;
}

std::vector<GaussRat> series_mul(const std::vector<GaussRat>& a, const std::vector<GaussRat>& b, std::size_t len) {
  std::vector<GaussRat> r(len, GaussRat(0));
  for (std::size_t i = 0; i < a.size() && i < len; ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.size() && i + j < len; ++j) r[i + j] += a[i] * b[j];
  }
  return r;
}

std::vector<GaussRat> series_power(const std::vector<GaussRat>& w, int j, std::size_t len) {
  std::vector<GaussRat> r(len, GaussRat(0));
  if (len == 0) return r;
  r[0] = GaussRat(1);
  for (int k = 0; k < j; ++k) r = series_mul(r, w, len);
  return r;
}

std::vector<GaussRat> binomial_series(const GaussRat& c, const Rational& a, std::size_t len) {
  std::vector<GaussRat> r(len, GaussRat(0));
  Rational binom = 1;
  GaussRat cp(1);
  for (std::size_t k = 0; k < len; ++k) {
    r[k] = cp * GaussRat(binom);
    cp *= c;
    binom = binom * (a - Rational(static_cast<long>(k))) / Rational(static_cast<long>(k) + 1);
  }
  return r;
}

RegularizedIntegral RegularizedIntegral::rewindowed(const std::vector<GaussRat>& w_upper,
                                                    const std::vector<GaussRat>& w_lower) const {
  RegularizedIntegral r;
  r.constant = constant;
  r.higher_log = higher_log;
  auto apply = [&r](const EndExpansion& src, EndExpansion& dst, const std::vector<GaussRat>& w) {
    dst.log_coeff = src.log_coeff;  // log w(u) = O(u)
    for (const auto& [j, p] : src.power) {
      std::vector<GaussRat> wj = series_power(w, j, static_cast<std::size_t>(j) + 1);
      for (int k = 0; k <= j; ++k) {
        ExactScalar term = p * ExactScalar(wj[static_cast<std::size_t>(k)]);
        if (j - k == 0) r.constant += term;
        else add_to(dst.power, j - k, term);
      }
    }
  };
  apply(upper, r.upper, w_upper);
  apply(lower, r.lower, w_lower);
  return r;
}

RegularizedIntegral reg_integral(const std::vector<Piece>& pieces) {
  RegularizedIntegral out;
  for (const auto& pc : pieces) integrate_piece(pc, out);
  return out;
}

RegularizedIntegral reg_integral(const RatFunc& f) { return reg_integral(std::vector<Piece>{Piece{f, {}, {}}}); }

}  // namespace cuspcalc
