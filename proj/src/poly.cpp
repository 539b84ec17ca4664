#include "cuspcalc/poly.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "cuspcalc/errors.hpp"

namespace cuspcalc {

Poly::Poly(GaussRat c) {
  if (!c.is_zero()) c_.push_back(std::move(c));
}

Poly::Poly(std::vector<GaussRat> coeffs) : c_(std::move(coeffs)) { trim(); }

Poly Poly::monomial(int degree, GaussRat c) {
  std::vector<GaussRat> v(static_cast<std::size_t>(degree) + 1, GaussRat(0));
  v.back() = std::move(c);
  return Poly(std::move(v));
}

Poly Poly::linear(const GaussRat& root) { return Poly(std::vector<GaussRat>{-root, GaussRat(1)}); }

void Poly::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

GaussRat Poly::coeff(int k) const {
  if (k < 0 || k >= static_cast<int>(c_.size())) return GaussRat(0);
  return c_[static_cast<std::size_t>(k)];
}

GaussRat Poly::eval(const GaussRat& v) const {
  GaussRat acc(0);
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
    acc *= v;
    acc += *it;
  }
  return acc;
}

std::complex<double> Poly::eval(std::complex<double> v) const {
  std::complex<double> acc{0.0, 0.0};
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * v + it->to_complex();
  return acc;
}

Poly Poly::derivative() const {
  if (c_.size() <= 1) return {};
  std::vector<GaussRat> d(c_.size() - 1);
  for (std::size_t k = 1; k < c_.size(); ++k) d[k - 1] = c_[k] * GaussRat(static_cast<long>(k));
  return Poly(std::move(d));
}

Poly Poly::reflect() const {
  Poly r = *this;
  for (std::size_t k = 1; k < r.c_.size(); k += 2) r.c_[k] = -r.c_[k];
  return r;
}

Poly& Poly::operator+=(const Poly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), GaussRat(0));
  for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] += o.c_[k];
  trim();
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), GaussRat(0));
  for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] -= o.c_[k];
  trim();
  return *this;
}

Poly& Poly::operator*=(const GaussRat& s) {
  if (s.is_zero()) {
    c_.clear();
    return *this;
  }
  for (auto& x : c_) x *= s;
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<GaussRat> r(a.c_.size() + b.c_.size() - 1, GaussRat(0));
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
  }
  return Poly(std::move(r));
}

std::pair<Poly, Poly> Poly::divmod(const Poly& d) const {
  if (d.is_zero()) throw std::domain_error("polynomial division by zero");
  if (degree() < d.degree()) return {Poly(), *this};
  std::vector<GaussRat> rem = c_;
  std::vector<GaussRat> q(static_cast<std::size_t>(degree() - d.degree() + 1), GaussRat(0));
  GaussRat lead_inv = d.leading().inverse();
  for (int k = degree(); k >= d.degree(); --k) {
    GaussRat f = rem[static_cast<std::size_t>(k)] * lead_inv;
    if (f.is_zero()) continue;
    q[static_cast<std::size_t>(k - d.degree())] = f;
    for (int t = 0; t <= d.degree(); ++t) rem[static_cast<std::size_t>(k - d.degree() + t)] -= f * d.c_[static_cast<std::size_t>(t)];
  }
  return {Poly(std::move(q)), Poly(std::move(rem))};
}

bool Poly::divide_root(const GaussRat& root) {
  if (c_.empty()) return false;
  std::vector<GaussRat> q(c_.size() - 1);
  GaussRat carry(0);
  for (std::size_t k = c_.size(); k-- > 1;) {
    carry *= root;
    carry += c_[k];
    q[k - 1] = carry;
  }
  carry *= root;
  carry += c_[0];
  if (!carry.is_zero()) return false;
  c_ = std::move(q);
  trim();
  return true;
}

Poly Poly::monic() const {
  if (is_zero()) return {};
  return *this * leading().inverse();
}

std::string Poly::str(const std::string& var) const {
  if (c_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t k = 0; k < c_.size(); ++k) {
    if (c_[k].is_zero()) continue;
    if (!first) os << " + ";
    first = false;
    os << "(" << c_[k].str() << ")";
    if (k == 1) os << "*" << var;
    if (k > 1) os << "*" << var << "^" << k;
  }
  return os.str();
}

Poly gcd(Poly a, Poly b) {
  while (!b.is_zero()) {
    Poly r = a.divmod(b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

namespace {

std::vector<std::complex<double>> durand_kerner(const Poly& p) {
  int n = p.degree();
  std::vector<std::complex<double>> c(static_cast<std::size_t>(n) + 1);
  std::complex<double> lead = p.leading().to_complex();
  for (int k = 0; k <= n; ++k) c[static_cast<std::size_t>(k)] = p.coeff(k).to_complex() / lead;
  auto eval = [&](std::complex<double> v) {
    std::complex<double> acc{0, 0};
    for (int k = n; k >= 0; --k) acc = acc * v + c[static_cast<std::size_t>(k)];
    return acc;
  };
  double radius = 1.0;
  for (int k = 0; k < n; ++k) radius = std::max(radius, 1.0 + std::abs(c[static_cast<std::size_t>(k)]));
  std::vector<std::complex<double>> z(static_cast<std::size_t>(n));
  std::complex<double> seed(0.4, 0.9);
  for (int k = 0; k < n; ++k) z[static_cast<std::size_t>(k)] = std::pow(seed, k) * (radius / 2.0);
  for (int iter = 0; iter < 2000; ++iter) {
    double change = 0.0;
    for (int k = 0; k < n; ++k) {
      std::complex<double> denom{1, 0};
      for (int j = 0; j < n; ++j)
        if (j != k) denom *= z[static_cast<std::size_t>(k)] - z[static_cast<std::size_t>(j)];
      if (std::abs(denom) == 0.0) denom = 1e-12;
      std::complex<double> step = eval(z[static_cast<std::size_t>(k)]) / denom;
      z[static_cast<std::size_t>(k)] -= step;
      change = std::max(change, std::abs(step));
    }
    if (change < 1e-15) break;
  }
  return z;
}

}  // namespace

std::vector<std::complex<double>> numeric_roots(const Poly& p) {
  if (p.degree() <= 0) return {};
  return durand_kerner(p);
}

std::vector<std::pair<GaussRat, int>> gaussian_roots(const Poly& p) {
  std::vector<std::pair<GaussRat, int>> out;
  if (p.degree() <= 0) return out;
  Poly rest = p;
  Poly square_free = p.divmod(gcd(p, p.derivative())).first;
  for (const auto& approx : durand_kerner(square_free)) {
    bool found = false;
    for (long max_den : {64L, 4096L, 1000000L}) {
      GaussRat r = rationalize(approx, max_den);
      if (square_free.eval(r).is_zero()) {
        int mult = 0;
        while (rest.divide_root(r)) ++mult;
        if (mult > 0) out.emplace_back(r, mult);
        found = true;
        break;
      }
    }
    if (!found) throw UnsupportedPole("root not in Q(i): approx " + std::to_string(approx.real()) + " + " + std::to_string(approx.imag()) + "i");
  }
  if (rest.degree() > 0) throw UnsupportedPole("incomplete root decomposition");
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  return out;
}

}  // namespace cuspcalc
