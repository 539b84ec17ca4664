#include "cuspcalc/suites.hpp"

#include <sstream>
#include <stdexcept>

#include "cuspcalc/errors.hpp"
#include "cuspcalc/hochschild.hpp"
#include "cuspcalc/indexcore.hpp"

namespace cuspcalc {

namespace {

using Outcome = std::optional<std::string>;

Outcome fail(const std::string& what) { return what; }
Outcome require(bool ok, const std::string& what) { return ok ? Outcome() : fail(what); }

int sample_dim(const SuiteConfig& c, long i) { return c.dim_max >= 2 && i % 4 == 3 ? 2 : 1; }

CuspElement rich(Rng& g, int n, Trunc t) { return random_element(g, n, t, 2, -2, 2, -2, 3); }
CuspElement letter(Rng& g, int n, Trunc t) { return random_element(g, n, t, 1, -2, 1, -2, 1); }

const GaussRat kI = GaussRat::i();

std::string str(const ExactScalar& s) { return s.str(); }

// Ratios r -> 1 at both infinities with all zeros and poles in Q(i).
std::pair<SFunc, SFunc> random_ratio(Rng& g) {
  const RatFunc a = RatFunc(Poly({GaussRat(2), GaussRat(2), GaussRat(1)})) * SFunc::one_plus_z2(-1);
  const RatFunc m = RatFunc(Poly({-kI, GaussRat(1)})) * RatFunc::pole_term(-kI, 1);
  SFunc r(1), rinv(1);
  const int ea = std::uniform_int_distribution<int>(1, 2)(g);
  const int em = std::uniform_int_distribution<int>(-1, 1)(g);
  for (int k = 0; k < ea; ++k) {
    r *= SFunc(a);
    rinv *= SFunc(a.inverse());
  }
  for (int k = 0; k < std::abs(em); ++k) {
    r *= SFunc(em > 0 ? m : m.inverse());
    rinv *= SFunc(em > 0 ? m.inverse() : m);
  }
  return {r, rinv};
}

Chain<CuspModel> random_chain(Rng& g, const CuspModel& m, int degree) {
  Chain<CuspModel> c(degree);
  const int count = std::uniform_int_distribution<int>(1, 2)(g);
  for (int w = 0; w < count; ++w) {
    std::vector<CuspElement> l;
    for (int k = 0; k <= degree; ++k) l.push_back(letter(g, m.n, m.t));
    c.add(random_gauss(g), std::move(l));
  }
  return c;
}

Chain<LaurentModel> random_laurent_chain(Rng& g, int degree) {
  Chain<LaurentModel> c(degree);
  for (int w = 0; w < 2; ++w) {
    std::vector<Laurent> l;
    for (int k = 0; k <= degree; ++k) {
      Laurent x;
      for (int p = -2; p <= 2; ++p)
        if (std::bernoulli_distribution(0.6)(g)) x.set(p, random_gauss(g));
      l.push_back(x);
    }
    c.add(random_gauss(g), std::move(l));
  }
  return c;
}

// Interior coefficients decaying faster than the end truncation: the end layer is empty.
CuspElement interior_only(Rng& g, int n, Trunc t) {
  CuspElement a(n, t);
  const SFunc decay(SFunc::one_plus_z2(-(t.K / 2 + 1)));
  for (int j = -2; j <= 1; ++j) {
    BranchPair c{SMat(n), SMat(n)};
    for (int r = 0; r < n; ++r)
      for (int k = 0; k < n; ++k) {
        c.plus(r, k) = decay * SFunc(random_gauss(g));
        c.minus(r, k) = decay * SFunc(random_gauss(g));
      }
    a.set_sigma(j, c);
  }
  return a;
}

CuspElement oscillator(int n, Trunc t) {
  return CuspElement::zeta(n, t) - CuspElement::scalar_z(SFunc::var(), n, t) * kI;
}

CuspElement wall(int n, Trunc t) {
  return CuspElement::zeta(n, t) - CuspElement::scalar_z(SFunc::var() * SFunc::s(), n, t) * kI;
}

SampleCheck stability_check(std::function<CuspElement(Rng&, const SuiteConfig&)> make) {
  return [make](Rng& g, const SuiteConfig& c, long) -> Outcome {
    const CuspElement a = make(g, c);
    const StabilityRadius r = stability_radius(a);
    const CuspElement b = parametrix(a, {r.P, r.M});
    const ExactScalar base = If(a, b, RegularizerQ::standard(), c.constants);
    const CuspElement e = random_element(g, a.dim(), c.trunc, -r.M, -r.M - 2, -r.P, -r.P - 2, 2);
    const ExactScalar moved = If(a, b + e, RegularizerQ::standard(), c.constants);
    return require(moved == base, "If moved from " + str(base) + " to " + str(moved) + " (P = " +
                                      std::to_string(r.P) + ", M = " + std::to_string(r.M) + ")");
  };
}

SampleCheck index_check(std::function<CuspElement(const SuiteConfig&)> make, long expected) {
  return [make, expected](Rng&, const SuiteConfig& c, long) -> Outcome {
    const CuspElement a = make(c);
    const IndexReport rep = assemble_index(a, RegularizerQ::standard(), IndexMode::General, c.constants);
    std::ostringstream msg;
    msg << "assembled " << rep.assembled.str();
    if (!rep.corner_elliptic) msg << " (not corner elliptic)";
    std::optional<long> svd, wind;
    try {
      svd = svd_index(a, c.oracle).index;
      msg << ", svd " << *svd;
    } catch (const GapTooSmall& e) {
      msg << ", svd withheld: " << e.what();
    }
    try {
      wind = winding_index(a, c.oracle.half_width, c.oracle.half_width, c.oracle).index;
      msg << ", winding " << *wind;
    } catch (const HypothesisViolation& e) {
      msg << ", winding failed: " << e.what();
    }
    msg << ", expected " << expected;
    const bool ok = rep.assembled == ExactScalar(GaussRat(expected)) && svd == expected && wind == expected;
    return require(ok, msg.str());
  };
}

std::vector<Identity> build() {
  std::vector<Identity> v;

  // algebra
  v.push_back({"algebra", "star_associativity", "(a * b) * c = a * (b * c) after re-truncation", 200,
               [](Rng& g, const SuiteConfig& c, long i) {
                 const int n = sample_dim(c, i);
                 auto el = [&] { return random_element(g, n, c.trunc, 2, -3, 2, -3, 2); };
                 const CuspElement a = el(), b = el(), d = el();
                 return require(equal_mod_trunc(star(star(a, b), d), star(a, star(b, d))), "products differ");
               }});
  v.push_back({"algebra", "deformation_p0", "the zeroth term of a * b is the pointwise product", 100,
               [](Rng& g, const SuiteConfig& c, long i) {
                 const int n = sample_dim(c, i);
                 const CuspElement a = random_element(g, n, c.trunc), b = random_element(g, n, c.trunc);
                 return require(equal_mod_trunc(star_term(a, b, 0), pointwise_product(a, b)), "P0 differs from ab");
               }});
  v.push_back({"algebra", "deformation_p1", "P1(a, b) - P1(b, a) = -i {a, b} for scalar symbols", 100,
               [](Rng& g, const SuiteConfig& c, long) {
                 const CuspElement a = random_element(g, 1, c.trunc), b = random_element(g, 1, c.trunc);
                 const CuspElement p1 = star_term(a, b, 1) - star_term(b, a, 1);
                 return require(equal_mod_trunc(p1, poisson_bracket(a, b) * (-kI)), "P1 antisymmetrization differs");
               }});

  // traces
  v.push_back({"traces", "rtr_commutator", "rTr([a, b]) = 0", 100, [](Rng& g, const SuiteConfig& c, long i) {
                 const int n = sample_dim(c, i);
                 const CuspElement a = rich(g, n, c.trunc), b = rich(g, n, c.trunc);
                 const ExactScalar r = rTr(commutator(a, b), c.constants);
                 return require(r.is_zero(), "rTr([a, b]) = " + str(r));
               }});
  auto family_pair = [](Rng& g, const SuiteConfig& c, long i) {
    const int n = std::min(c.dim_max, 2);  // scalar families commute
    const bool convergent = i % 2 == 0;
    SuspendedFamily a = convergent ? random_family(g, n, -1, -3) : random_family(g, n, 1, -2);
    SuspendedFamily b = convergent ? random_family(g, n, -1, -3) : random_family(g, n, 1, -2);
    return a * b - b * a;
  };
  v.push_back({"traces", "btr_commutator", "bTr([A, B]) = 0 on suspended families", 100,
               [family_pair](Rng& g, const SuiteConfig& c, long i) {
                 const ExactScalar r = bTr(family_pair(g, c, i));
                 return require(r.is_zero(), "bTr([A, B]) = " + str(r));
               }});
  v.push_back({"traces", "ttr_commutator", "tTr([A, B]) = 0 on suspended families", 100,
               [family_pair](Rng& g, const SuiteConfig& c, long i) {
                 const ExactScalar r = tTr(family_pair(g, c, i), c.conventions);
                 return require(r.is_zero(), "tTr([A, B]) = " + str(r));
               }});
  v.push_back({"traces", "hitr_commutator", "hiTr([A, B]) = rTr(A [log Q, B])", 100,
               [](Rng& g, const SuiteConfig& c, long i) {
                 const int n = sample_dim(c, i);
                 const CuspElement a = rich(g, n, c.trunc), b = rich(g, n, c.trunc);
                 const ExactScalar lhs = hiTr(commutator(a, b), RegularizerQ::standard(), c.constants);
                 const ExactScalar rhs = rTr(star(a, log_derivation(b, LogKind::LogQ)), c.constants);
                 return require(lhs == rhs, str(lhs) + " != " + str(rhs));
               }});
  v.push_back({"traces", "hdtr_commutator", "hdTr([A, B]) = -rTr(A [log x, B])", 100,
               [](Rng& g, const SuiteConfig& c, long i) {
                 const int n = sample_dim(c, i);
                 const CuspElement a = rich(g, n, c.trunc), b = rich(g, n, c.trunc);
                 const ExactScalar lhs = hdTr(commutator(a, b), {}, c.constants);
                 const ExactScalar rhs = -rTr(star(a, log_derivation(b, LogKind::LogX)), c.constants);
                 return require(lhs == rhs, str(lhs) + " != " + str(rhs));
               }});
  v.push_back({"traces", "rtr_tilde_derivation", "rTr([log Q - log x, B]) = 0", 100,
               [](Rng& g, const SuiteConfig& c, long i) {
                 const ExactScalar r = rTr(tilde_derivation(rich(g, sample_dim(c, i), c.trunc)), c.constants);
                 return require(r.is_zero(), "rTr = " + str(r));
               }});
  v.push_back({"traces", "rtr_readouts",
               "rTr from the interior jet = rTr from the end families = kappa_d (log T coefficient of hdTr)", 100,
               [](Rng& g, const SuiteConfig& c, long i) {
                 const CuspElement a = rich(g, sample_dim(c, i), c.trunc);
                 const ExactScalar r = rTr(a, c.constants);
                 const HadamardResult h = hdTr_full(a, {}, c.constants);
                 const ExactScalar from_log = ExactScalar(c.constants.readout_sign) * c.constants.kappa_d * h.integral.logT_coeff();
                 const ExactScalar from_ends = rTr(a, c.constants, Readout::Ends);
                 return require(r == from_log && r == from_ends,
                                "jet " + str(r) + ", ends " + str(from_ends) + ", log T " + str(from_log));
               }});
  v.push_back({"traces", "boundary_function_change", "hdTr with x' = x alpha minus hdTr with x = rTr(A log alpha)", 50,
               [](Rng& g, const SuiteConfig& c, long i) {
                 const GaussRat coeff = random_unit_coeff(g);
                 const SFunc alpha = SFunc(1) + SFunc(coeff) * SFunc::s();
                 const BoundaryFunction xprime{SFunc::s() * alpha};
                 const CuspElement a = rich(g, sample_dim(c, i), c.trunc);
                 const std::size_t len = static_cast<std::size_t>(std::max(c.trunc.K, 1) + 2);
                 std::array<std::map<int, GaussRat>, 2> log_alpha;
                 for (End e : {End::Plus, End::Minus}) {
                   std::vector<GaussRat> h(len, GaussRat(0));
                   for (const auto& [k, val] : alpha.expand_at_end(e, static_cast<int>(len) - 1))
                     if (k > 0) h[static_cast<std::size_t>(k)] = val;
                   const auto l = series_log_one_plus(h, len);
                   for (std::size_t k = 1; k < l.size(); ++k)
                     log_alpha[static_cast<std::size_t>(end_index(e))][static_cast<int>(k)] = l[k];
                 }
                 const ExactScalar lhs = hdTr(a, xprime, c.constants) - hdTr(a, {}, c.constants);
                 const ExactScalar rhs = rTr_times(a, log_alpha, c.constants);
                 return require(lhs == rhs, str(lhs) + " != " + str(rhs));
               }});
  v.push_back({"traces", "regularizer_change", "hiTr with Q' minus hiTr with Q = -rTr(A log(Q'/Q))", 50,
               [](Rng& g, const SuiteConfig& c, long i) {
                 const int n = sample_dim(c, i);
                 const RegularizerQ q = RegularizerQ::standard();
                 const auto [r, rinv] = random_ratio(g);
                 const RegularizerQ q1 = q.scaled(r, rinv);
                 const CuspElement a = rich(g, n, c.trunc);
                 const ExactScalar lhs = hiTr(a, q1, c.constants) - hiTr(a, q, c.constants);
                 const ExactScalar rhs = -rTr(star(a, log_ratio(q1, q, n, c.trunc)), c.constants);
                 return require(lhs == rhs, str(lhs) + " != " + str(rhs));
               }});
  v.push_back({"traces", "regularizer_cocycle",
               "log(Q''/Q') + log(Q'/Q) = log(Q''/Q), and the hiTr changes add up", 50,
               [](Rng& g, const SuiteConfig& c, long i) {
                 const int n = sample_dim(c, i);
                 const RegularizerQ q = RegularizerQ::standard();
                 const auto [r1, r1inv] = random_ratio(g);
                 const auto [r2, r2inv] = random_ratio(g);
                 const RegularizerQ q1 = q.scaled(r1, r1inv), q2 = q1.scaled(r2, r2inv);
                 const CuspElement l21 = log_ratio(q2, q1, n, c.trunc), l10 = log_ratio(q1, q, n, c.trunc);
                 const CuspElement l20 = log_ratio(q2, q, n, c.trunc);
                 if (!equal_mod_trunc(l21 + l10, l20)) return fail("log ratios do not compose");
                 const CuspElement a = rich(g, n, c.trunc);
                 const ExactScalar lhs = hiTr(a, q2, c.constants) - hiTr(a, q, c.constants);
                 const ExactScalar rhs = -rTr(star(a, l21), c.constants) - rTr(star(a, l10), c.constants);
                 return require(lhs == rhs, str(lhs) + " != " + str(rhs));
               }});

  // hochschild
  auto chain_identity = [&v](const char* name, const char* anchor, int lo, int hi,
                             std::function<bool(const CuspModel&, const Chain<CuspModel>&, long)> test) {
    v.push_back({"hochschild", name, anchor, 100, [lo, hi, test](Rng& g, const SuiteConfig& c, long i) {
                   const CuspModel m{sample_dim(c, i), c.chain_trunc};
                   const int deg = lo + static_cast<int>(i % (hi - lo + 1));
                   return require(test(m, random_chain(g, m, deg), i), "nonzero on a chain of degree " + std::to_string(deg));
                 }});
  };
  chain_identity("b_squared", "b b = 0", 0, 3,
                 [](const CuspModel& m, const Chain<CuspModel>& ch, long) { return chain_is_zero(hoch_b(m, hoch_b(m, ch))); });
  chain_identity("bprime_squared", "b' b' = 0", 0, 3, [](const CuspModel& m, const Chain<CuspModel>& ch, long) {
    return chain_is_zero(hoch_bprime(m, hoch_bprime(m, ch)));
  });
  chain_identity("B_squared", "B B = 0 (normalized chains, and raw chains with B = (1 - t) s N)", 0, 2,
                 [](const CuspModel& m, const Chain<CuspModel>& ch, long) {
                   const bool normalized = drop_degenerate(m, cyclic_B(m, cyclic_B(m, ch))).words().empty();
                   return normalized && chain_is_zero(cyclic_B_raw(m, cyclic_B_raw(m, ch)));
                 });
  chain_identity("bB_plus_Bb", "b B + B b = 0 (normalized chains, and raw chains with B = (1 - t) s N)", 0, 2,
                 [](const CuspModel& m, const Chain<CuspModel>& ch, long) {
                   const bool normalized =
                       drop_degenerate(m, hoch_b(m, cyclic_B(m, ch)) + cyclic_B(m, hoch_b(m, ch))).words().empty();
                   return normalized && chain_is_zero(hoch_b(m, cyclic_B_raw(m, ch)) + cyclic_B_raw(m, hoch_b(m, ch)));
                 });
  chain_identity("iD_b", "i_D b + b i_D = 0 for D = [log x, .], [log Q, .], [log Q - log x, .]", 1, 3,
                 [](const CuspModel& m, const Chain<CuspModel>& ch, long i) {
                   const DerivationKind kinds[] = {DerivationKind::LogX, DerivationKind::LogQ, DerivationKind::Tilde};
                   const auto d = derivation(kinds[i % 3]);
                   return chain_is_zero(hoch_b(m, contract_iD(m, ch, d)) + contract_iD(m, hoch_b(m, ch), d));
                 });
  v.push_back({"hochschild", "hkr_b", "chi b = 0 on Laurent chains", 100, [](Rng& g, const SuiteConfig&, long i) {
                 const LaurentModel m;
                 const auto ch = random_laurent_chain(g, 1 + static_cast<int>(i % 3));
                 return require(hkr_chi(hoch_b(m, ch)).is_zero(), "chi b is nonzero");
               }});
  v.push_back({"hochschild", "if_cocycle", "If is a Hochschild 1-cocycle", 50, [](Rng& g, const SuiteConfig& c, long i) {
                 const int n = sample_dim(c, i);
                 const Cochain phi = [&c](const std::vector<CuspElement>& a) {
                   return If(a[0], a[1], RegularizerQ::standard(), c.constants);
                 };
                 std::vector<CuspElement> args;
                 for (int k = 0; k < 3; ++k) args.push_back(letter(g, n, c.trunc));
                 const ExactScalar r = coboundary(phi, CuspModel{n, c.trunc}, args);
                 return require(r.is_zero(), "(b If) = " + str(r));
               }});

  // index
  v.push_back({"index", "bif_interior_model", "Bif(M, B) = Bif(B, M) = 0 for M with empty end layer", 50,
               [](Rng& g, const SuiteConfig& c, long i) {
                 const int n = sample_dim(c, i);
                 const CuspElement b = letter(g, n, c.trunc), m = interior_only(g, n, c.trunc);
                 const RegularizerQ q = RegularizerQ::standard();
                 return require(Bif(m, b, q, c.constants).is_zero() && Bif(b, m, q, c.constants).is_zero(), "Bif is nonzero");
               }});
  v.push_back({"index", "bif_ends_model", "Bif(M, B) = Bif(B, M) = 0 for M with empty interior layer", 50,
               [](Rng& g, const SuiteConfig& c, long i) {
                 const int n = sample_dim(c, i);
                 const CuspElement b = letter(g, n, c.trunc), m = random_ends_element(g, n, c.trunc, -1, 2);
                 const RegularizerQ q = RegularizerQ::standard();
                 return require(Bif(m, b, q, c.constants).is_zero() && Bif(b, m, q, c.constants).is_zero(), "Bif is nonzero");
               }});
  v.push_back({"index", "boundary_index_paths",
               "boundary_index is constant along 5-point paths of regularizers and of boundary-invertible elements", 10,
               [](Rng& g, const SuiteConfig& c, long i) -> Outcome {
                 const RegularizerQ q0 = RegularizerQ::standard();
                 if (i % 2 == 0) {
                   const CuspElement a = random_elliptic_element(g, sample_dim(c, i / 2), c.trunc);
                   const ExactScalar base = boundary_index(a, q0, c.constants);
                   const auto [r, rinv] = random_ratio(g);
                   SFunc rs(1), rsinv(1);
                   for (int step = 0; step < 5; ++step) {
                     const ExactScalar v = boundary_index(a, q0.scaled(rs, rsinv), c.constants);
                     if (v != base) return fail("regularizer step " + std::to_string(step) + ": " + str(v) + " != " + str(base));
                     rs *= r;
                     rsinv *= rinv;
                   }
                   return std::nullopt;
                 }
                 auto [a, index] = random_wall_element(g, sample_dim(c, i / 2), c.trunc);
                 const ExactScalar base = boundary_index(a, q0, c.constants);
                 const GaussRat shift = random_gauss(g, 1, 4);
                 for (int step = 1; step < 5; ++step) {
                   const CuspElement p = a + CuspElement::identity(a.dim(), c.trunc) * (shift * GaussRat(step));
                   const ExactScalar v = boundary_index(p, q0, c.constants);
                   if (v != base) return fail("path step " + std::to_string(step) + ": " + str(v) + " != " + str(base));
                 }
                 return std::nullopt;
               }});
  v.push_back({"index", "boundary_index_x_inverse", "boundary_index(x^-1) = 0", 1, [](Rng&, const SuiteConfig& c, long) {
                 const ExactScalar r = boundary_index(CuspElement::x_power(-1, 1, c.trunc), RegularizerQ::standard(), c.constants);
                 return require(r.is_zero(), "boundary_index = " + str(r));
               }});
  v.push_back({"index", "eta_indicial",
               "the eta component equals the sum of the suspended eta invariants of the indicial families", 50,
               [](Rng& g, const SuiteConfig& c, long i) {
                 const CuspElement a = random_ti_elliptic(g, sample_dim(c, i), c.trunc);
                 const IndexReport rep =
                     assemble_index(a, RegularizerQ::standard(), IndexMode::TranslationInvariant, c.constants);
                 ExactScalar eta;
                 for (End e : {End::Plus, End::Minus}) eta += eta_suspended(indicial_family(a, e), c.conventions);
                 return require(rep.etab == eta, str(rep.etab) + " != " + str(eta));
               }});
  v.push_back({"index", "sf_vanishes", "sF = 0 for elements translation invariant near the ends", 50,
               [](Rng& g, const SuiteConfig& c, long i) {
                 const CuspElement a = random_ti_elliptic(g, sample_dim(c, i), c.trunc);
                 const StabilityRadius r = stability_radius(a);
                 const CuspElement b = parametrix(a, {r.P, r.M});
                 const FunctionalValue sf = invariant_functional(a, b, Functional::SF, RegularizerQ::standard(), c.constants);
                 return require(sf.value.is_zero(), "sF = " + sf.value.str());
               }});
  v.push_back({"index", "if_stability_wall", "If(A, B + E) = If(A, B) beyond the stability radius, A a domain wall", 20,
               stability_check([](Rng&, const SuiteConfig& c) { return wall(1, c.trunc); })});
  v.push_back({"index", "if_stability_wall_squared", "the same for the square of the domain wall", 20,
               stability_check([](Rng&, const SuiteConfig& c) {
                 const CuspElement w = wall(1, c.trunc);
                 return star(w, w);
               })});
  v.push_back({"index", "if_stability_matrix_wall", "the same for random 2 x 2 domain walls", 20,
               stability_check([](Rng& g, const SuiteConfig& c) { return random_wall_element(g, 2, c.trunc).first; })});
  v.push_back({"index", "index_oscillator", "zeta - i z: assembled index = svd index = winding index = 1", 1,
               index_check([](const SuiteConfig& c) { return oscillator(1, c.trunc); }, 1)});
  v.push_back({"index", "index_oscillator_squared", "(zeta - i z)^2: all three indices = 2", 1,
               index_check([](const SuiteConfig& c) {
                 const CuspElement o = oscillator(1, c.trunc);
                 return star(o, o);
               }, 2)});
  v.push_back({"index", "index_x_inverse", "x^-1: all three indices = 0", 1,
               index_check([](const SuiteConfig& c) { return CuspElement::x_power(-1, 1, c.trunc); }, 0)});
  v.push_back({"index", "index_wall", "zeta - 4 i z (1 + z^2)^-1/2: all three indices = 1", 1,
               index_check([](const SuiteConfig& c) { return calibration_anchor(c.trunc); }, 1)});
  v.push_back({"index", "index_wall_squared", "square of the steep wall: all three indices = 2", 1,
               index_check([](const SuiteConfig& c) {
                 const CuspElement w = calibration_anchor(c.trunc);
                 return star(w, w);
               }, 2)});
  return v;
}

// FNV-1a, for a platform-independent per-identity seed
std::uint64_t name_hash(const std::string& s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  return h;
}

}  // namespace

void SuiteConfig::validate() const {
  for (const auto& [name, n] : counts) {
    find_identity(name);
    if (n < 1) throw std::invalid_argument("count for " + name + " must be at least 1");
  }
  if (dim_max < 1) throw std::invalid_argument("dim must be at least 1");
  for (const Trunc& t : {trunc, chain_trunc})
    if (t.K < 4 || t.jmin > -4) throw std::invalid_argument("truncation needs K >= 4 and jmin <= -4");
  for (const auto& s : suites)
    if (s != "algebra" && s != "traces" && s != "hochschild" && s != "index")
      throw std::invalid_argument("unknown suite " + s);
}

const std::vector<Identity>& identities() {
  static const std::vector<Identity> all = build();
  return all;
}

const Identity& find_identity(const std::string& name) {
  for (const auto& id : identities())
    if (id.name == name) return id;
  throw std::invalid_argument("unknown identity " + name);
}

IdentityResult run_identity(const Identity& id, const SuiteConfig& cfg, std::optional<long> count) {
  IdentityResult r;
  r.name = id.name;
  r.anchor = id.anchor;
  if (!count) {
    auto it = cfg.counts.find(id.name);
    count = it == cfg.counts.end() ? id.default_count : it->second;
  }
  r.samples = *count;
  const std::uint64_t h = name_hash(id.name);
  for (long k = 0; k < *count; ++k) {
    std::seed_seq seq{static_cast<std::uint32_t>(cfg.seed), static_cast<std::uint32_t>(cfg.seed >> 32),
                      static_cast<std::uint32_t>(h), static_cast<std::uint32_t>(h >> 32), static_cast<std::uint32_t>(k)};
    Rng g(seq);
    Outcome o;
    try {
      o = id.check(g, cfg, k);
    } catch (const std::exception& e) {
      o = std::string("exception: ") + e.what();
    }
    if (o) {
      ++r.failures;
      if (!r.counterexample) r.counterexample = "sample " + std::to_string(k) + ": " + *o;
    }
  }
  return r;
}

Report run_suite(const SuiteConfig& cfg) {
  cfg.validate();
  Report rep;
  rep.seed = cfg.seed;
  for (const auto& s : cfg.suites) rep.suite += (rep.suite.empty() ? "" : ",") + s;
  for (const auto& s : cfg.suites)
    for (const auto& id : identities())
      if (id.suite == s) rep.results.push_back(run_identity(id, cfg));
  return rep;
}

}  // namespace cuspcalc
