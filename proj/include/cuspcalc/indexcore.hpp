#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cuspcalc/element.hpp"
#include "cuspcalc/suspended.hpp"
#include "cuspcalc/traces.hpp"

namespace cuspcalc {

/// D~A = [log x - log Q, A]
CuspElement dtilde(const CuspElement& a, const RegularizerQ& q = RegularizerQ::standard());

/// Bif(A, B) = rTr(B [log x - log Q, A])
ExactScalar Bif(const CuspElement& a, const CuspElement& b, const RegularizerQ& q = RegularizerQ::standard(),
                const CalibrationConstants& k = CalibrationConstants::defaults());
/// (hiTr + hdTr)([A, B])
ExactScalar Bif_commutator(const CuspElement& a, const CuspElement& b, const RegularizerQ& q = RegularizerQ::standard(),
                           const CalibrationConstants& k = CalibrationConstants::defaults());

/// Inverse modulo the ideals that vanish at the boundary: needs only generically invertible
/// leading interior coefficients and invertible leading end families.
CuspElement boundary_inverse(const CuspElement& a, int steps = 8);
ExactScalar boundary_index(const CuspElement& a, const RegularizerQ& q = RegularizerQ::standard(),
                           const CalibrationConstants& k = CalibrationConstants::defaults());

/// If(A, B) = s/2 (hiTr + hdTr)(B D~A + D~A B); TruncationLoss when the data do not reach
/// the x^1 and abs(zeta)^-1 coefficients.
ExactScalar If(const CuspElement& a, const CuspElement& b, const RegularizerQ& q = RegularizerQ::standard(),
               const CalibrationConstants& k = CalibrationConstants::defaults());

/// Perturbations of B with x-order >= P and zeta-order <= -M leave If(A, B) unchanged.
struct StabilityRadius {
  int P;
  int M;
};
StabilityRadius stability_radius(const CuspElement& a, const RegularizerQ& q = RegularizerQ::standard());

enum class Functional { Etab, ASb, IF, SF };
struct FunctionalValue {
  ExactScalar value;
  bool strict = true;  // hdTr-based values: no regularization was needed
};
/// The four component functionals, with ainv a parametrix of a.
FunctionalValue invariant_functional(const CuspElement& a, const CuspElement& ainv, Functional kind,
                                     const RegularizerQ& q = RegularizerQ::standard(),
                                     const CalibrationConstants& k = CalibrationConstants::defaults());

enum class IndexMode { General, TranslationInvariant, Reduced };

struct OracleResult {
  std::string name;
  std::optional<long> index;  // empty when the verdict is withheld
  std::string diagnostics;
};

struct IndexReport {
  ExactScalar asb, etab, i_f, s_f;
  ExactScalar if_value;  // If(A, B) from the index cocycle
  ExactScalar bif;       // Bif(A, B), zero for fully elliptic A
  ExactScalar assembled;
  bool integer = false;
  bool asb_strict = false;
  bool translation_invariant = false;
  bool normal_indicial = false;
  bool corner_elliptic = false;
  IndexMode mode = IndexMode::General;
  StabilityRadius radius{0, 0};
  std::vector<OracleResult> oracles;
};

/// The weighted principal symbol stays invertible at the corners: at each end the top interior
/// coefficient has the same leading x-order as the end layer. zeta - iz fails this (x^0 against x^-1).
bool corner_elliptic(const CuspElement& a);

/// Translation invariant near the ends: every end coefficient lives at a single x-order.
bool translation_invariant_near_ends(const CuspElement& a);

IndexReport assemble_index(const CuspElement& a, const RegularizerQ& q = RegularizerQ::standard(),
                           IndexMode mode = IndexMode::General,
                           const CalibrationConstants& k = CalibrationConstants::defaults());

}  // namespace cuspcalc
