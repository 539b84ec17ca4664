#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cuspcalc/sfunc.hpp"
#include "cuspcalc/suspended.hpp"

namespace cuspcalc {

/// Truncation orders: interior jets are kept down to degree jmin, end expansions up to x-order K.
struct Trunc {
  int jmin = -6;
  int K = 6;
  friend bool operator==(const Trunc& a, const Trunc& b) { return a.jmin == b.jmin && a.K == b.K; }
};

/// Branch pair of the coefficient of abs(zeta)^j: sign(zeta) = +1 and sign(zeta) = -1.
struct BranchPair {
  SMat plus;
  SMat minus;
  const SMat& operator[](int sigma) const { return sigma > 0 ? plus : minus; }
  SMat& operator[](int sigma) { return sigma > 0 ? plus : minus; }
  bool is_zero() const { return plus.is_zero() && minus.is_zero(); }
  friend bool operator==(const BranchPair& a, const BranchPair& b) { return a.plus == b.plus && a.minus == b.minus; }
};

/// Two-layer model of an element of the cusp algebra on the compactified line.
///   interior: sum_j abs(zeta)^j c_j^sigma(z), exact for j >= jlo
///   ends:     sum_k x_e^k A_{e,k}(xi) at e = +-, x_e = +-1/z, exact for k <= khi
/// The layers are computed independently; compatibility (matching the abs(xi)^j coefficients of
/// A_{e,k} with the x_e^k coefficients of c_j) holds for elements built from joint symbols.
class CuspElement {
 public:
  CuspElement() = default;
  CuspElement(int n, Trunc t) : n_(n), trunc_(t), jlo_(t.jmin), khi_(t.K) {}

  static CuspElement zero(int n, Trunc t) { return {n, t}; }
  static CuspElement identity(int n, Trunc t);
  /// f(z) g(zeta) for a z-dependent matrix f and a zeta-dependent family g.
  static CuspElement separable(const SMat& f, const SuspendedFamily& g, Trunc t);
  static CuspElement function_of_z(const SMat& f, Trunc t);
  static CuspElement family(const SuspendedFamily& g, Trunc t);
  static CuspElement scalar_z(const SFunc& f, int n, Trunc t) { return function_of_z(SMat::identity(n, f), t); }
  static CuspElement zeta(int n, Trunc t);
  /// Powers of the boundary defining function x = (1 + z^2)^(-1/2).
  static CuspElement x_power(int k, int n, Trunc t);

  int dim() const { return n_; }
  Trunc trunc() const { return trunc_; }
  int jlo() const { return jlo_; }
  int khi() const { return khi_; }
  const std::map<int, BranchPair>& sigma() const { return sigma_; }
  const std::map<int, SuspendedFamily>& ends(End e) const { return ends_[end_index(e)]; }

  void set_sigma(int j, BranchPair c);
  void set_end(End e, int k, SuspendedFamily f);
  void set_validity(int jlo, int khi);

  /// Top interior degree, counting the unknown tail as degree jlo - 1.
  int top() const;
  /// Bottom end order, counting the unknown tail as order khi + 1.
  int bottom() const;
  /// Lowest x-order present at the end (khi + 1 when none).
  int bottom_at(End e) const;
  bool interior_empty() const { return sigma_.empty(); }
  bool ends_empty() const { return ends_[0].empty() && ends_[1].empty(); }

  CuspElement& operator+=(const CuspElement& o);
  CuspElement& operator-=(const CuspElement& o);
  CuspElement& operator*=(const GaussRat& c);
  friend CuspElement operator+(CuspElement a, const CuspElement& b) { return a += b; }
  friend CuspElement operator-(CuspElement a, const CuspElement& b) { return a -= b; }
  friend CuspElement operator-(CuspElement a) { return a *= GaussRat(-1); }
  friend CuspElement operator*(CuspElement a, const GaussRat& c) { return a *= c; }

  /// Drops data outside the validity ranges.
  CuspElement retruncated() const;
  /// Equality on the common validity range.
  friend bool equal_mod_trunc(const CuspElement& a, const CuspElement& b);
  bool is_zero_mod_trunc() const;

  std::string summary() const;

 private:
  void prune();
  int n_ = 1;
  Trunc trunc_;
  int jlo_ = -6;
  int khi_ = 6;
  std::map<int, BranchPair> sigma_;
  std::array<std::map<int, SuspendedFamily>, 2> ends_;
};

/// Composition: sum_r (1/r!) d_zeta^r a . D_z^r b.
CuspElement star(const CuspElement& a, const CuspElement& b);
/// Only the r-th term of the composition sum.
CuspElement star_term(const CuspElement& a, const CuspElement& b, int r);
CuspElement commutator(const CuspElement& a, const CuspElement& b);
/// Pointwise product of the layers (the r = 0 term computed directly).
CuspElement pointwise_product(const CuspElement& a, const CuspElement& b);
/// Poisson bracket d_zeta a d_z b - d_z a d_zeta b, computed from its own formulas.
CuspElement poisson_bracket(const CuspElement& a, const CuspElement& b);

struct CompatibilityIssue {
  int j;
  int k;
  End end;
  int branch;
};
std::optional<CompatibilityIssue> find_incompatibility(const CuspElement& a);
/// Throws CompatibilityError naming (j, k, e) on the first mismatch.
void check_compatibility(const CuspElement& a);

/// Translation-invariant regularizer Q given through d/dxi log q; q has leading term abs(xi).
struct RegularizerQ {
  SFunc dlogq;
  static RegularizerQ standard();  // q = (1 + xi^2)^(1/2)
  /// q' = q * r for a ratio r -> 1 at both infinities; rinv is its inverse.
  RegularizerQ scaled(const SFunc& r, const SFunc& rinv) const;
  /// Jet of d/dzeta log q on branch sigma, degrees >= lowest.
  std::map<int, GaussRat> dlog_jet(int sigma, int lowest) const;
  /// Jet of log(q / abs(zeta)) on branch sigma, degrees >= lowest.
  std::map<int, GaussRat> log_ratio_jet(int sigma, int lowest) const;
};

enum class LogKind { LogX, LogQ };
/// [log x, a] or [log Q, a].
CuspElement log_derivation(const CuspElement& a, LogKind kind, const RegularizerQ& q = RegularizerQ::standard());
/// [log Q - log x, a].
CuspElement tilde_derivation(const CuspElement& a, const RegularizerQ& q = RegularizerQ::standard());

std::map<int, SuspendedFamily> indicial_expand(const CuspElement& a, End e);
/// Intrinsic indicial family at an end (xi reflected at the minus end), weight-normalized.
SuspendedFamily indicial_family(const CuspElement& a, End e);

struct EllipticityReport {
  bool elliptic = true;
  std::vector<std::string> witnesses;
};
EllipticityReport is_fully_elliptic(const CuspElement& a);

struct ParametrixOrders {
  int P = 4;
  int M = 4;
};
CuspElement parametrix(const CuspElement& a, ParametrixOrders orders);

/// Lowest x-order present in an element's ends and highest interior degree present (ignoring tails).
int ends_order(const CuspElement& a);
int interior_order(const CuspElement& a);

}  // namespace cuspcalc
