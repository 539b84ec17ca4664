#pragma once

#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "cuspcalc/element.hpp"
#include "cuspcalc/errors.hpp"
#include "cuspcalc/suspended.hpp"
#include "cuspcalc/traces.hpp"

namespace cuspcalc {

/// Laurent polynomial in x with Gaussian rational coefficients.
class Laurent {
 public:
  Laurent() = default;
  Laurent(GaussRat c) { set(0, std::move(c)); }  // NOLINT(google-explicit-constructor)
  static Laurent monomial(int k, GaussRat c = GaussRat(1));

  const std::map<int, GaussRat>& coeffs() const { return c_; }
  GaussRat coeff(int k) const;
  void set(int k, GaussRat c);
  bool is_zero() const { return c_.empty(); }

  Laurent derivative() const;

  Laurent& operator+=(const Laurent& o);
  Laurent& operator-=(const Laurent& o);
  Laurent& operator*=(const GaussRat& s);
  friend Laurent operator+(Laurent a, const Laurent& b) { return a += b; }
  friend Laurent operator-(Laurent a, const Laurent& b) { return a -= b; }
  friend Laurent operator*(Laurent a, const GaussRat& s) { return a *= s; }
  friend Laurent operator*(const Laurent& a, const Laurent& b);
  friend bool operator==(const Laurent& a, const Laurent& b) { return a.c_ == b.c_; }

  std::string str() const;

 private:
  std::map<int, GaussRat> c_;
};

/// f + g dx over the Laurent algebra (higher forms vanish in one variable).
struct LaurentForm {
  Laurent f;
  Laurent g;
  bool is_zero() const { return f.is_zero() && g.is_zero(); }
  friend bool operator==(const LaurentForm& a, const LaurentForm& b) { return a.f == b.f && a.g == b.g; }
};

// Algebra models. Each provides Letter, unit(), mul(), check(), equal(), is_zero().

struct CuspModel {
  using Letter = CuspElement;
  int n = 1;
  Trunc t;
  std::string name() const { return "cusp"; }
  Letter unit() const { return CuspElement::identity(n, t); }
  Letter mul(const Letter& a, const Letter& b) const { return star(a, b); }
  bool check(const Letter& a) const { return a.dim() == n && a.trunc() == t; }
  static bool equal(const Letter& a, const Letter& b) { return equal_mod_trunc(a, b); }
  static bool is_zero(const Letter& a) { return a.is_zero_mod_trunc(); }
};

struct SuspendedModel {
  using Letter = SuspendedFamily;
  int n = 1;
  std::string name() const { return "suspended"; }
  Letter unit() const { return SuspendedFamily::identity(n); }
  Letter mul(const Letter& a, const Letter& b) const { return sus_mul(a, b); }
  bool check(const Letter& a) const { return a.dim() == n; }
  static bool equal(const Letter& a, const Letter& b) { return a == b; }
  static bool is_zero(const Letter& a) { return a.is_zero(); }
};

struct LaurentModel {
  using Letter = Laurent;
  std::string name() const { return "laurent"; }
  Letter unit() const { return Laurent(GaussRat(1)); }
  Letter mul(const Letter& a, const Letter& b) const { return a * b; }
  bool check(const Letter& /*a*/) const { return true; }
  static bool equal(const Letter& a, const Letter& b) { return a == b; }
  static bool is_zero(const Letter& a) { return a.is_zero(); }
};

inline CuspElement scale_letter(CuspElement a, const GaussRat& c) { return a *= c; }
inline SuspendedFamily scale_letter(const SuspendedFamily& a, const GaussRat& c) { return a * SFunc(c); }
inline Laurent scale_letter(Laurent a, const GaussRat& c) { return a *= c; }

template <class M>
struct Word {
  GaussRat coeff;
  std::vector<typename M::Letter> letters;
};

/// Finite formal combination of tensor words a0 (x) ... (x) an, all of degree n.
template <class M>
class Chain {
 public:
  using Letter = typename M::Letter;
  explicit Chain(int degree) : degree_(degree) {}
  static Chain word(std::vector<Letter> letters, GaussRat c = GaussRat(1)) {
    Chain ch(static_cast<int>(letters.size()) - 1);
    ch.add(std::move(c), std::move(letters));
    return ch;
  }

  int degree() const { return degree_; }
  const std::vector<Word<M>>& words() const { return words_; }
  std::vector<Word<M>>& words() { return words_; }

  void add(GaussRat c, std::vector<Letter> letters) {
    if (static_cast<int>(letters.size()) != degree_ + 1) throw ModelMismatch("word length does not match chain degree");
    if (c.is_zero()) return;
    words_.push_back({std::move(c), std::move(letters)});
  }
  Chain& operator+=(const Chain& o) {
    if (o.degree_ != degree_) throw ModelMismatch("adding chains of different degree");
    words_.insert(words_.end(), o.words_.begin(), o.words_.end());
    return *this;
  }
  Chain& operator*=(const GaussRat& c) {
    if (c.is_zero()) words_.clear();
    for (auto& w : words_) w.coeff *= c;
    return *this;
  }
  friend Chain operator+(Chain a, const Chain& b) { return a += b; }
  friend Chain operator-(Chain a, const Chain& b) {
    Chain nb = b;
    nb *= GaussRat(-1);
    return a += nb;
  }

 private:
  int degree_;
  std::vector<Word<M>> words_;
};

template <class M>
void check_chain(const M& model, const Chain<M>& c) {
  for (const auto& w : c.words())
    for (const auto& l : w.letters)
      if (!model.check(l)) throw ModelMismatch("letter does not belong to the " + model.name() + " model");
}

namespace detail {

inline GaussRat alt(int i) { return GaussRat(i % 2 == 0 ? 1 : -1); }

// Folds word coefficients into slot s and merges words that agree off slot s.
template <class M>
std::vector<Word<M>> merge_slot(const std::vector<Word<M>>& in, std::size_t s) {
  std::vector<Word<M>> out;
  std::vector<bool> used(in.size(), false);
  for (std::size_t a = 0; a < in.size(); ++a) {
    if (used[a]) continue;
    Word<M> acc{GaussRat(1), in[a].letters};
    acc.letters[s] = scale_letter(in[a].letters[s], in[a].coeff);
    for (std::size_t b = a + 1; b < in.size(); ++b) {
      if (used[b]) continue;
      bool same = true;
      for (std::size_t k = 0; k < in[a].letters.size() && same; ++k)
        if (k != s && !M::equal(in[a].letters[k], in[b].letters[k])) same = false;
      if (!same) continue;
      used[b] = true;
      acc.letters[s] += scale_letter(in[b].letters[s], in[b].coeff);
    }
    if (!M::is_zero(acc.letters[s])) out.push_back(std::move(acc));
  }
  return out;
}

}  // namespace detail

/// Collects like terms by multilinearity, slot by slot. An empty result proves the chain is zero.
template <class M>
Chain<M> normalize(const Chain<M>& c) {
  Chain<M> out = c;
  auto& w = out.words();
  for (int pass = 0; pass < 2; ++pass)
    for (int s = 0; s <= c.degree(); ++s) w = detail::merge_slot<M>(w, static_cast<std::size_t>(s));
  return out;
}

template <class M>
bool chain_is_zero(const Chain<M>& c) {
  return normalize(c).words().empty();
}

/// Hochschild differential: sum_i (-1)^i a0..(a_i a_{i+1})..an + (-1)^n (an a0) a1..a_{n-1}.
template <class M>
Chain<M> hoch_b(const M& model, const Chain<M>& c) {
  check_chain(model, c);
  const int n = c.degree();
  if (n == 0) return Chain<M>(-1);
  Chain<M> out(n - 1);
  for (const auto& w : c.words()) {
    for (int i = 0; i < n; ++i) {
      std::vector<typename M::Letter> l;
      l.reserve(static_cast<std::size_t>(n));
      for (int k = 0; k < n + 1; ++k) {
        if (k == i) {
          l.push_back(model.mul(w.letters[static_cast<std::size_t>(k)], w.letters[static_cast<std::size_t>(k + 1)]));
          ++k;
        } else {
          l.push_back(w.letters[static_cast<std::size_t>(k)]);
        }
      }
      out.add(w.coeff * detail::alt(i), std::move(l));
    }
    std::vector<typename M::Letter> l;
    l.push_back(model.mul(w.letters[static_cast<std::size_t>(n)], w.letters[0]));
    for (int k = 1; k < n; ++k) l.push_back(w.letters[static_cast<std::size_t>(k)]);
    out.add(w.coeff * detail::alt(n), std::move(l));
  }
  return out;
}

/// b without the cyclic last face.
template <class M>
Chain<M> hoch_bprime(const M& model, const Chain<M>& c) {
  check_chain(model, c);
  const int n = c.degree();
  if (n == 0) return Chain<M>(-1);
  Chain<M> out(n - 1);
  for (const auto& w : c.words()) {
    for (int i = 0; i < n; ++i) {
      std::vector<typename M::Letter> l;
      for (int k = 0; k < n + 1; ++k) {
        if (k == i) {
          l.push_back(model.mul(w.letters[static_cast<std::size_t>(k)], w.letters[static_cast<std::size_t>(k + 1)]));
          ++k;
        } else {
          l.push_back(w.letters[static_cast<std::size_t>(k)]);
        }
      }
      out.add(w.coeff * detail::alt(i), std::move(l));
    }
  }
  return out;
}

/// t(a0..an) = (-1)^n an a0 .. a_{n-1}
template <class M>
Chain<M> cyclic_t(const Chain<M>& c) {
  const int n = c.degree();
  Chain<M> out(n);
  for (const auto& w : c.words()) {
    std::vector<typename M::Letter> l;
    l.push_back(w.letters.back());
    for (int k = 0; k < n; ++k) l.push_back(w.letters[static_cast<std::size_t>(k)]);
    out.add(w.coeff * detail::alt(n), std::move(l));
  }
  return out;
}

/// N = sum_k t^k
template <class M>
Chain<M> cyclic_N(const Chain<M>& c) {
  Chain<M> out = c, cur = c;
  for (int k = 1; k <= c.degree(); ++k) {
    cur = cyclic_t(cur);
    out += cur;
  }
  return out;
}

/// s(a0..an) = 1 (x) a0 .. an
template <class M>
Chain<M> extra_s(const M& model, const Chain<M>& c) {
  Chain<M> out(c.degree() + 1);
  for (const auto& w : c.words()) {
    std::vector<typename M::Letter> l;
    l.push_back(model.unit());
    l.insert(l.end(), w.letters.begin(), w.letters.end());
    out.add(w.coeff, std::move(l));
  }
  return out;
}

/// B = s N, applied literally. Its identities hold modulo words with a unit letter in a slot >= 1.
template <class M>
Chain<M> cyclic_B(const M& model, const Chain<M>& c) {
  check_chain(model, c);
  return extra_s(model, cyclic_N(c));
}

/// B = (1 - t) s N, whose identities hold on raw chains.
template <class M>
Chain<M> cyclic_B_raw(const M& model, const Chain<M>& c) {
  Chain<M> sn = cyclic_B(model, c);
  return sn - cyclic_t(sn);
}

/// Drops words carrying the unit in a slot >= 1 (the normalized quotient).
template <class M>
Chain<M> drop_degenerate(const M& model, const Chain<M>& c) {
  Chain<M> norm = normalize(c);
  Chain<M> out(c.degree());
  const auto one = model.unit();
  for (const auto& w : norm.words()) {
    bool degenerate = false;
    for (std::size_t k = 1; k < w.letters.size() && !degenerate; ++k) degenerate = M::equal(w.letters[k], one);
    if (!degenerate) out.add(w.coeff, w.letters);
  }
  return out;
}

/// i_D(a0 (x) a1 (x) ... (x) an) = a0 D(a1) (x) a2 .. an; zero on degree 0.
template <class M>
Chain<M> contract_iD(const M& model, const Chain<M>& c,
                     const std::function<typename M::Letter(const typename M::Letter&)>& d) {
  check_chain(model, c);
  const int n = c.degree();
  if (n == 0) return Chain<M>(-1);
  Chain<M> out(n - 1);
  for (const auto& w : c.words()) {
    std::vector<typename M::Letter> l;
    l.push_back(model.mul(w.letters[0], d(w.letters[1])));
    for (int k = 2; k <= n; ++k) l.push_back(w.letters[static_cast<std::size_t>(k)]);
    out.add(w.coeff, std::move(l));
  }
  return out;
}

enum class DerivationKind { LogX, LogQ, Tilde };
std::function<CuspElement(const CuspElement&)> derivation(DerivationKind kind,
                                                          const RegularizerQ& q = RegularizerQ::standard());

/// chi(f0 (x) ... (x) fn) = (n!)^-1 f0 df1 ... dfn
LaurentForm hkr_chi(const Chain<LaurentModel>& c);

/// Multilinear functional on CuspElements.
using Cochain = std::function<ExactScalar(const std::vector<CuspElement>&)>;

/// tau(g0, .., gp) = dTr(f0 g0 [f1, g1] ... [fp, gp]) summed over the words of the tensor.
Cochain make_tau_cocycle(const Chain<CuspModel>& tensor, const BoundaryFunction& bdf = {},
                         const CalibrationConstants& k = CalibrationConstants::defaults());
/// Antisymmetrization of a single word: sum over permutations with sign.
Chain<CuspModel> antisymmetrize(const Chain<CuspModel>& c);

/// (b phi)(a0, .., a_{p+1}) for a p-cochain phi.
ExactScalar coboundary(const Cochain& phi, const CuspModel& model, const std::vector<CuspElement>& args);

/// beta(B, C) = iTr(B [log x, C]) for elements with empty interior layer.
ExactScalar beta_cocycle(const CuspElement& b, const CuspElement& c,
                         const CalibrationConstants& k = CalibrationConstants::defaults());
/// The same value from closed-form end expansions of the derivatives of log x.
ExactScalar beta_direct(const CuspElement& b, const CuspElement& c,
                        const CalibrationConstants& k = CalibrationConstants::defaults());

}  // namespace cuspcalc
