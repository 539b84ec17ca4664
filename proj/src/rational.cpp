#include "cuspcalc/rational.hpp"

#include <limits>
#include <stdexcept>

namespace cuspcalc {

namespace {

using i128 = __int128;
using u128 = unsigned __int128;

constexpr i128 kMax = std::numeric_limits<std::int64_t>::max();

u128 uabs(i128 v) { return v < 0 ? static_cast<u128>(-v) : static_cast<u128>(v); }

std::uint64_t gcd64(std::uint64_t a, std::uint64_t b) {
  if (a == 0) return b;
  if (b == 0) return a;
  const int shift = __builtin_ctzll(a | b);
  a >>= __builtin_ctzll(a);
  do {
    b >>= __builtin_ctzll(b);
    if (a > b) std::swap(a, b);
    b -= a;
  } while (b != 0);
  return a << shift;
}

u128 gcd128(u128 a, u128 b) {
  while (b != 0) {
    if ((a >> 64) == 0 && (b >> 64) == 0) {
      return gcd64(static_cast<std::uint64_t>(a), static_cast<std::uint64_t>(b));
    }
    u128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

std::uint64_t uabs64(std::int64_t v) { return v < 0 ? static_cast<std::uint64_t>(-v) : static_cast<std::uint64_t>(v); }

mpz_class from_wide(i128 v) {
  const bool neg = v < 0;
  u128 u = uabs(v);
  mpz_class hi(static_cast<unsigned long>(static_cast<std::uint64_t>(u >> 64)));
  mpz_class lo(static_cast<unsigned long>(static_cast<std::uint64_t>(u)));
  mpz_class r = (hi << 64) + lo;
  return neg ? mpz_class(-r) : r;
}

}  // namespace

Rational::Rational(long n, long d) {
  if (d == 0) throw std::domain_error("zero denominator");
  set_from_wide(n, d);
}

Rational::Rational(const std::string& text) {
  mpq_class q(text);
  q.canonicalize();
  assign(q);
}

void Rational::assign(const mpq_class& q) {
  if (mpz_fits_slong_p(q.get_num_mpz_t()) != 0 && mpz_fits_slong_p(q.get_den_mpz_t()) != 0 &&
      q.get_num() != std::numeric_limits<long>::min()) {
    n_ = q.get_num().get_si();
    d_ = q.get_den().get_si();
    big_.reset();
  } else {
    n_ = 0;
    d_ = 1;
    big_ = std::make_unique<mpq_class>(q);
  }
}

void Rational::set_from_wide(i128 n, i128 d) {
  if (d < 0) {
    n = -n;
    d = -d;
  }
  if (n <= kMax && n >= -kMax && d <= kMax) {
    std::int64_t n64 = static_cast<std::int64_t>(n), d64 = static_cast<std::int64_t>(d);
    const auto g = static_cast<std::int64_t>(gcd64(uabs64(n64), static_cast<std::uint64_t>(d64)));
    if (g > 1) {
      n64 /= g;
      d64 /= g;
    }
    n_ = n64;
    d_ = d64;
    big_.reset();
    return;
  }
  const u128 g = gcd128(uabs(n), static_cast<u128>(d));
  if (g > 1) {
    n /= static_cast<i128>(g);
    d /= static_cast<i128>(g);
  }
  if (n <= kMax && n >= -kMax && d <= kMax) {
    n_ = static_cast<std::int64_t>(n);
    d_ = static_cast<std::int64_t>(d);
    big_.reset();
  } else {
    mpq_class q(from_wide(n), from_wide(d));
    q.canonicalize();
    assign(q);
  }
}

mpq_class Rational::to_mpq() const {
  if (big_) return *big_;
  mpq_class q(static_cast<long>(n_), static_cast<long>(d_));
  return q;
}

mpz_class Rational::get_num() const { return big_ ? mpz_class(big_->get_num()) : mpz_class(static_cast<long>(n_)); }
mpz_class Rational::get_den() const { return big_ ? mpz_class(big_->get_den()) : mpz_class(static_cast<long>(d_)); }
double Rational::get_d() const { return big_ ? big_->get_d() : static_cast<double>(n_) / static_cast<double>(d_); }
std::string Rational::get_str() const { return to_mpq().get_str(); }

int Rational::sign() const {
  if (big_) return ::sgn(*big_);
  return n_ > 0 ? 1 : (n_ < 0 ? -1 : 0);
}

Rational& Rational::operator+=(const Rational& o) {
  if (!big_ && !o.big_) {
    if (d_ == 1 && o.d_ == 1) {
      set_from_wide(static_cast<i128>(n_) + o.n_, 1);
    } else if (o.n_ == 0) {
    } else if (n_ == 0) {
      n_ = o.n_;
      d_ = o.d_;
    } else {
      set_from_wide(static_cast<i128>(n_) * o.d_ + static_cast<i128>(o.n_) * d_, static_cast<i128>(d_) * o.d_);
    }
    return *this;
  }
  assign(to_mpq() + o.to_mpq());
  return *this;
}

Rational& Rational::operator-=(const Rational& o) {
  if (!big_ && !o.big_) {
    set_from_wide(static_cast<i128>(n_) * o.d_ - static_cast<i128>(o.n_) * d_, static_cast<i128>(d_) * o.d_);
    return *this;
  }
  assign(to_mpq() - o.to_mpq());
  return *this;
}

Rational& Rational::operator*=(const Rational& o) {
  if (!big_ && !o.big_) {
    if (n_ == 0 || o.n_ == 0) {
      n_ = 0;
      d_ = 1;
      return *this;
    }
    const std::int64_t g1 = o.d_ == 1 ? 1 : static_cast<std::int64_t>(gcd64(uabs64(n_), static_cast<std::uint64_t>(o.d_)));
    const std::int64_t g2 = d_ == 1 ? 1 : static_cast<std::int64_t>(gcd64(uabs64(o.n_), static_cast<std::uint64_t>(d_)));
    const i128 n = static_cast<i128>(n_ / g1) * (o.n_ / g2);
    const i128 d = static_cast<i128>(d_ / g2) * (o.d_ / g1);
    if (n <= kMax && n >= -kMax && d <= kMax) {
      n_ = static_cast<std::int64_t>(n);
      d_ = static_cast<std::int64_t>(d);
    } else {
      set_from_wide(n, d);
    }
    return *this;
  }
  assign(to_mpq() * o.to_mpq());
  return *this;
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.sign() == 0) throw std::domain_error("division by zero");
  if (!o.big_) {
    Rational inv;
    inv.n_ = o.n_ < 0 ? -o.d_ : o.d_;
    inv.d_ = o.n_ < 0 ? -o.n_ : o.n_;
    return *this *= inv;
  }
  assign(to_mpq() / o.to_mpq());
  return *this;
}

Rational operator-(const Rational& a) {
  if (a.big_) return Rational(mpq_class(-*a.big_));
  Rational r;
  r.n_ = -a.n_;
  r.d_ = a.d_;
  return r;
}

int cmp(const Rational& a, const Rational& b) {
  if (a.big_ || b.big_) return ::cmp(a.to_mpq(), b.to_mpq());
  const i128 l = static_cast<i128>(a.n_) * b.d_, r = static_cast<i128>(b.n_) * a.d_;
  return l < r ? -1 : (l > r ? 1 : 0);
}

Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }

}  // namespace cuspcalc
