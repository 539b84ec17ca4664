#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <memory>
#include <numeric>
#include <string>

namespace cuspcalc {

using Integer = mpz_class;

/// Exact rational with an int64 fast path; falls back to GMP when a result leaves that range.
class Rational {
 public:
  Rational() = default;
  Rational(int v) : n_(v) {}    // NOLINT(google-explicit-constructor)
  Rational(long v) : n_(v) {}   // NOLINT(google-explicit-constructor)
  Rational(long long v) : n_(v) {}  // NOLINT(google-explicit-constructor)
  Rational(long n, long d);
  Rational(const mpq_class& q) { assign(q); }  // NOLINT(google-explicit-constructor)
  Rational(const mpz_class& z) { assign(mpq_class(z)); }  // NOLINT(google-explicit-constructor)
  explicit Rational(const std::string& text);

  Rational(const Rational& o) : n_(o.n_), d_(o.d_), big_(o.big_ ? std::make_unique<mpq_class>(*o.big_) : nullptr) {}
  Rational(Rational&&) noexcept = default;
  Rational& operator=(const Rational& o) {
    if (this != &o) {
      n_ = o.n_;
      d_ = o.d_;
      big_ = o.big_ ? std::make_unique<mpq_class>(*o.big_) : nullptr;
    }
    return *this;
  }
  Rational& operator=(Rational&&) noexcept = default;

  bool is_small() const { return !big_; }
  mpq_class to_mpq() const;
  mpz_class get_num() const;
  mpz_class get_den() const;
  double get_d() const;
  std::string get_str() const;
  void canonicalize() {}
  int sign() const;

  Rational& operator+=(const Rational& o);
  Rational& operator-=(const Rational& o);
  Rational& operator*=(const Rational& o);
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend Rational operator-(const Rational& a);

  friend bool operator==(const Rational& a, const Rational& b) {
    if (a.big_ || b.big_) return a.big_ && b.big_ && *a.big_ == *b.big_;
    return a.n_ == b.n_ && a.d_ == b.d_;
  }
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
  friend int cmp(const Rational& a, const Rational& b);
  friend bool operator<(const Rational& a, const Rational& b) { return cmp(a, b) < 0; }
  friend bool operator>(const Rational& a, const Rational& b) { return cmp(a, b) > 0; }
  friend bool operator<=(const Rational& a, const Rational& b) { return cmp(a, b) <= 0; }
  friend bool operator>=(const Rational& a, const Rational& b) { return cmp(a, b) >= 0; }

 private:
  void assign(const mpq_class& q);
  void set_from_wide(__int128 n, __int128 d);

  std::int64_t n_ = 0;
  std::int64_t d_ = 1;
  std::unique_ptr<mpq_class> big_;
};

inline int sgn(const Rational& r) { return r.sign(); }
Rational abs(const Rational& r);

}  // namespace cuspcalc
