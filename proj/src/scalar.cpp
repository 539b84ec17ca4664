#include "cuspcalc/scalar.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace cuspcalc {

namespace {

Integer pollard_rho(const Integer& n) {
  if (n % 2 == 0) return 2;
  for (unsigned long c = 1;; ++c) {
    Integer x = 2, y = 2, d = 1;
    auto f = [&](const Integer& v) { Integer r = (v * v + c) % n; return r; };
    while (d == 1) {
      x = f(x);
      y = f(f(y));
      Integer diff = abs(x - y);
      mpz_gcd(d.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
    }
    if (d != n) return d;
  }
}

void factor_into(const Integer& n, std::map<Integer, int>& out) {
  if (n == 1) return;
  if (mpz_probab_prime_p(n.get_mpz_t(), 30) != 0) {
    out[n] += 1;
    return;
  }
  Integer d = pollard_rho(n);
  factor_into(d, out);
  factor_into(n / d, out);
}

/// Canonical Gaussian prime a + b i (a > b > 0) above a prime p = 1 mod 4.
std::pair<Integer, Integer> gaussian_prime_above(const Integer& p) {
  for (Integer b = 1; 2 * b * b < p; ++b) {
    Integer rest = p - b * b;
    if (mpz_perfect_square_p(rest.get_mpz_t()) != 0) {
      Integer a;
      mpz_sqrt(a.get_mpz_t(), rest.get_mpz_t());
      return {a, b};
    }
  }
  throw std::logic_error("prime is not a sum of two squares");
}

// Exact division of Gaussian integers; returns false when not divisible.
bool gauss_divide(Integer& a, Integer& b, const Integer& c, const Integer& d) {
  // (a + b i) / (c + d i) = ((ac + bd) + (bc - ad) i) / (c^2 + d^2)
  Integer n = c * c + d * d;
  Integer re = a * c + b * d, im = b * c - a * d;
  if (re % n != 0 || im % n != 0) return false;
  a = re / n;
  b = im / n;
  return true;
}

int monomial_degree(const Monomial& m) {
  int d = 0;
  for (const auto& [atom, e] : m.atoms) d += e;
  return d;
}

std::string rational_str(const Rational& r) { return r.get_str(); }

std::string coefficient_str(const GaussRat& c) {
  if (c.is_real()) return rational_str(c.re);
  if (sgn(c.re) == 0) return rational_str(c.im) + "i";
  std::string s = rational_str(c.re);
  if (sgn(c.im) >= 0) s += "+";
  return s + rational_str(c.im) + "i";
}

}  // namespace

std::vector<std::pair<Integer, int>> factor_integer(const Integer& n) {
  if (n <= 0) throw std::invalid_argument("factor_integer expects a positive integer");
  std::map<Integer, int> acc;
  Integer m = n;
  for (unsigned long p = 2; p < 10000 && m > 1; ++p) {
    while (m % p == 0) {
      acc[Integer(p)] += 1;
      m /= p;
    }
  }
  factor_into(m, acc);
  return {acc.begin(), acc.end()};
}

double Atom::value() const {
  if (kind == Kind::Log) return std::log(prime.get_d());
  auto [a, b] = gaussian_prime_above(prime);
  return std::atan2(b.get_d(), a.get_d());
}

std::string Atom::str() const {
  if (kind == Kind::Log) return "log(" + prime.get_str() + ")";
  auto [a, b] = gaussian_prime_above(prime);
  std::string bs = b == 1 ? std::string() : b.get_str();
  return "arg(" + a.get_str() + "+" + bs + "i)";
}

Monomial Monomial::operator*(const Monomial& o) const {
  Monomial r;
  r.pi_exp = pi_exp + o.pi_exp;
  std::map<Atom, int> acc;
  for (const auto& [a, e] : atoms) acc[a] += e;
  for (const auto& [a, e] : o.atoms) acc[a] += e;
  r.atoms.assign(acc.begin(), acc.end());
  return r;
}

bool operator<(const Monomial& a, const Monomial& b) {
  int da = monomial_degree(a), db = monomial_degree(b);
  if (da != db) return da < db;
  if (a.pi_exp != b.pi_exp) return a.pi_exp < b.pi_exp;
  return a.atoms < b.atoms;
}

std::string Monomial::str() const {
  std::vector<std::string> parts;
  if (pi_exp == 1) parts.emplace_back("pi");
  else if (pi_exp != 0) parts.push_back("pi^" + std::to_string(pi_exp));
  for (const auto& [a, e] : atoms) parts.push_back(e == 1 ? a.str() : a.str() + "^" + std::to_string(e));
  std::string s;
  for (std::size_t k = 0; k < parts.size(); ++k) s += (k ? "*" : "") + parts[k];
  return s;
}

double Monomial::value() const {
  double v = std::pow(std::numbers::pi, pi_exp);
  for (const auto& [a, e] : atoms) v *= std::pow(a.value(), e);
  return v;
}

ExactScalar::ExactScalar(const GaussRat& c) { add_term(Monomial{}, c); }

ExactScalar::ExactScalar(const GaussRat& c, Monomial m) { add_term(m, c); }

ExactScalar ExactScalar::pi(int exponent) {
  Monomial m;
  m.pi_exp = exponent;
  return ExactScalar(GaussRat(1), m);
}

ExactScalar ExactScalar::log_rational(const Rational& r) {
  if (sgn(r) <= 0) throw std::domain_error("log of a non-positive rational");
  ExactScalar out;
  auto accumulate = [&out](const Integer& n, int sign) {
    if (n == 1) return;
    for (const auto& [p, e] : factor_integer(n)) {
      Monomial m;
      m.atoms.push_back({Atom{Atom::Kind::Log, p}, 1});
      out.add_term(m, GaussRat(sign * e));
    }
  };
  accumulate(r.get_num(), 1);
  accumulate(r.get_den(), -1);
  return out;
}

ExactScalar ExactScalar::arg_gauss(const GaussRat& w) {
  if (w.is_zero()) throw std::domain_error("arg of zero");
  // Clear denominators: w = (A + B i) / d with d > 0.
  Integer d = lcm(w.re.get_den(), w.im.get_den());
  Integer A = w.re.get_num() * (d / w.re.get_den()), B = w.im.get_num() * (d / w.im.get_den());
  ExactScalar symbolic;
  double numeric = 0.0;
  Integer N = A * A + B * B;
  for (const auto& [p, e] : factor_integer(N)) {
    if (p == 2) {
      // each factor (1+i) contributes pi/4
      symbolic += ExactScalar(GaussRat::frac(e, 4)) * pi();
      numeric += e * std::numbers::pi / 4;
      for (int k = 0; k < e; ++k) gauss_divide(A, B, 1, 1);
    } else if (p % 4 == 3) {
      for (int k = 0; k < e / 2; ++k) { A /= p; B /= p; }
    } else {
      auto [a, b] = gaussian_prime_above(p);
      int e1 = 0;
      while (gauss_divide(A, B, a, b)) ++e1;
      int e2 = 0;
      while (gauss_divide(A, B, a, -b)) ++e2;
      if (e1 + e2 != e) throw std::logic_error("Gaussian factorization mismatch");
      Monomial m;
      m.atoms.push_back({Atom{Atom::Kind::Arg, p}, 1});
      symbolic += ExactScalar(GaussRat(e1 - e2), m);
      numeric += (e1 - e2) * std::atan2(b.get_d(), a.get_d());
    }
  }
  // The remaining unit and any 2 pi wrap are a multiple of pi/2.
  double target = std::atan2(w.im.get_d(), w.re.get_d());
  long quarter = std::lround((target - numeric) / (std::numbers::pi / 2));
  symbolic += ExactScalar(GaussRat::frac(quarter, 2)) * pi();
  return symbolic;
}

ExactScalar ExactScalar::log_gauss(const GaussRat& w) {
  ExactScalar re = ExactScalar(GaussRat::frac(1, 2)) * log_rational(w.norm());
  if (w.is_real() && sgn(w.re) > 0) return re;
  return re + i() * arg_gauss(w);
}

bool ExactScalar::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one());
}

GaussRat ExactScalar::constant_part() const { return coefficient(Monomial{}); }

GaussRat ExactScalar::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? GaussRat(0) : it->second;
}

void ExactScalar::add_term(const Monomial& m, const GaussRat& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

ExactScalar& ExactScalar::operator+=(const ExactScalar& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

ExactScalar& ExactScalar::operator-=(const ExactScalar& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

ExactScalar operator*(const ExactScalar& a, const ExactScalar& b) {
  ExactScalar r;
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) r.add_term(ma * mb, ca * cb);
  return r;
}

ExactScalar& ExactScalar::operator*=(const ExactScalar& o) { return *this = *this * o; }

ExactScalar operator-(const ExactScalar& a) {
  ExactScalar r;
  for (const auto& [m, c] : a.terms_) r.add_term(m, -c);
  return r;
}

ExactScalar ExactScalar::divided_by(const ExactScalar& d) const {
  if (d.terms_.size() != 1) throw std::domain_error("divisor must be a single monomial");
  const auto& [m, c] = *d.terms_.begin();
  if (!m.atoms.empty()) throw std::domain_error("cannot divide by a logarithmic monomial");
  Monomial inv;
  inv.pi_exp = -m.pi_exp;
  return *this * ExactScalar(c.inverse(), inv);
}

std::complex<double> ExactScalar::to_complex() const {
  std::complex<double> v{0.0, 0.0};
  for (const auto& [m, c] : terms_) v += c.to_complex() * m.value();
  return v;
}

std::string ExactScalar::str() const {
  if (terms_.empty()) return "0";
  std::vector<std::string> parts;
  auto it = terms_.find(Monomial{});
  if (it != terms_.end()) {
    const GaussRat& c = it->second;
    if (sgn(c.re) != 0) parts.push_back(rational_str(c.re));
    if (sgn(c.im) != 0) parts.push_back("(" + rational_str(c.im) + ")i");
  }
  for (const auto& [m, c] : terms_) {
    if (m.is_one()) continue;
    if (c.is_one()) parts.push_back(m.str());
    else parts.push_back("(" + coefficient_str(c) + ")*" + m.str());
  }
  std::string s;
  for (std::size_t k = 0; k < parts.size(); ++k) s += (k ? " + " : "") + parts[k];
  return s;
}

namespace {

class ScalarParser {
 public:
  explicit ScalarParser(std::string text) : s_(std::move(text)) {}

  ExactScalar parse() {
    ExactScalar total;
    skip_ws();
    bool negate = false;
    if (peek() == '-' && !std::isdigit(static_cast<unsigned char>(peek(1)))) {
      negate = true;
      ++pos_;
    }
    total = negate ? -term() : term();
    for (;;) {
      skip_ws();
      if (pos_ >= s_.size()) break;
      char op = s_[pos_++];
      if (op != '+' && op != '-') fail("expected '+' or '-'");
      skip_ws();
      ExactScalar t = term();
      if (op == '+') total += t; else total -= t;
    }
    return total;
  }

 private:
  [[noreturn]] void fail(const std::string& why) {
    throw std::invalid_argument("scalar parse error at " + std::to_string(pos_) + " (" + why + "): " + s_);
  }
  char peek(std::size_t off = 0) const { return pos_ + off < s_.size() ? s_[pos_ + off] : '\0'; }
  void skip_ws() { while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_; }
  bool accept(const std::string& tok) {
    if (s_.compare(pos_, tok.size(), tok) == 0) { pos_ += tok.size(); return true; }
    return false;
  }

  Rational number() {
    std::size_t start = pos_;
    if (peek() == '-' || peek() == '+') ++pos_;
    while (std::isdigit(static_cast<unsigned char>(peek())) || peek() == '/') ++pos_;
    std::string tok = s_.substr(start, pos_ - start);
    if (tok.empty() || tok == "-" || tok == "+") fail("expected number");
    if (tok[0] == '+') tok.erase(0, 1);
    mpq_class q;
    if (q.set_str(tok, 10) != 0 || (tok.find('/') != std::string::npos && q.get_den() == 0)) fail("bad rational");
    q.canonicalize();
    return Rational(q);
  }

  // a | bi | i | a+bi | a-bi  (inside parentheses)
  GaussRat gauss_inner() {
    skip_ws();
    GaussRat g;
    if (peek() == 'i') { ++pos_; return GaussRat::i(); }
    Rational first = number();
    skip_ws();
    if (accept("i")) return {Rational(0), first};
    g.re = first;
    if (peek() == '+' || peek() == '-') {
      bool neg = peek() == '-';
      ++pos_;
      skip_ws();
      Rational second(1);
      if (peek() != 'i') second = number();
      if (!accept("i")) fail("expected imaginary unit");
      g.im = neg ? Rational(-second) : second;
    }
    return g;
  }

  ExactScalar factor() {
    if (accept("pi")) {
      Monomial m;
      m.pi_exp = 1;
      if (accept("^")) m.pi_exp = static_cast<int>(number().get_num().get_si());
      return {GaussRat(1), m};
    }
    if (accept("log(")) {
      Rational r = number();
      if (!accept(")")) fail("expected ')'");
      ExactScalar v = ExactScalar::log_rational(r);
      return power(v);
    }
    if (accept("arg(")) {
      GaussRat g = gauss_inner();
      if (!accept(")")) fail("expected ')'");
      return power(ExactScalar::arg_gauss(g));
    }
    fail("unknown factor");
  }

  ExactScalar power(ExactScalar v) {
    if (!accept("^")) return v;
    long e = number().get_num().get_si();
    ExactScalar r(1);
    for (long k = 0; k < e; ++k) r *= v;
    return r;
  }

  ExactScalar term() {
    ExactScalar value(1);
    if (peek() == '(') {
      ++pos_;
      GaussRat c = gauss_inner();
      skip_ws();
      if (!accept(")")) fail("expected ')'");
      if (accept("i")) c *= GaussRat::i();
      value = ExactScalar(c);
    } else if (accept("-i")) {
      value = ExactScalar(-GaussRat::i());
    } else if (accept("i")) {
      value = ExactScalar(GaussRat::i());
    } else if (std::isdigit(static_cast<unsigned char>(peek())) || peek() == '-') {
      Rational r = number();
      if (accept("i")) value = ExactScalar(GaussRat(Rational(0), r));
      else value = ExactScalar(GaussRat(r));
    } else {
      value = factor();
    }
    while (accept("*")) value *= factor();
    return value;
  }

  std::string s_;
  std::size_t pos_ = 0;
};

}  // namespace

ExactScalar ExactScalar::parse(const std::string& text) { return ScalarParser(text).parse(); }

}  // namespace cuspcalc
