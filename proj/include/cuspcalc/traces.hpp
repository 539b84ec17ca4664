#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "cuspcalc/element.hpp"
#include "cuspcalc/regint.hpp"

namespace cuspcalc {

/// Normalizations of the trace functionals. The defaults are the calibrated values.
struct CalibrationConstants {
  ExactScalar kappa_r;
  ExactScalar kappa_d;
  ExactScalar kappa_i;
  /// rTr = readout_sign * kappa_d * (log T coefficient of the hdTr integral).
  int readout_sign = 1;
  /// Sign s in If = s/2 (hiTr + hdTr)(B [log x - log Q, A] + [log x - log Q, A] B).
  int index_sign = 1;
  std::string provenance;

  static CalibrationConstants defaults();
};

/// Which layer the residue trace reads: the interior jet or the end families.
enum class Readout { Interior, Ends };

/// Sum over ends and branches of the trace of the x^1 abs(zeta)^-1 coefficient.
ExactScalar rtr_raw(const CuspElement& a, Readout from = Readout::Interior);
ExactScalar rTr(const CuspElement& a, const CalibrationConstants& k = CalibrationConstants::defaults(),
                Readout from = Readout::Interior);
/// rTr(a f) for a function f of z given by its x_e-expansions at the ends (orders >= 0).
ExactScalar rTr_times(const CuspElement& a, const std::array<std::map<int, GaussRat>, 2>& f,
                      const CalibrationConstants& k = CalibrationConstants::defaults());

/// Boundary defining function used to cut off the z-integral; x = (1+z^2)^(-1/2) by default.
struct BoundaryFunction {
  SFunc x = SFunc::s();
};
/// Window edges T_e = T w_e(1/T) of the cutoff {x >= 1/T}, as Taylor coefficients.
std::array<std::vector<GaussRat>, 2> cutoff_window(const BoundaryFunction& bdf, std::size_t len);

struct HadamardResult {
  ExactScalar value;
  RegularizedIntegral integral;  // raw integral of tr(c_-1^+ + c_-1^-) in the chosen window
  bool strict = false;           // no divergent part: the value is the convergent trace
};
HadamardResult hdTr_full(const CuspElement& a, const BoundaryFunction& bdf = {},
                         const CalibrationConstants& k = CalibrationConstants::defaults());
ExactScalar hdTr(const CuspElement& a, const BoundaryFunction& bdf = {},
                 const CalibrationConstants& k = CalibrationConstants::defaults());

ExactScalar itr_raw(const CuspElement& a);
ExactScalar iTr(const CuspElement& a, const CalibrationConstants& k = CalibrationConstants::defaults());
ExactScalar hitr_raw(const CuspElement& a, const RegularizerQ& q = RegularizerQ::standard());
ExactScalar hiTr(const CuspElement& a, const RegularizerQ& q = RegularizerQ::standard(),
                 const CalibrationConstants& k = CalibrationConstants::defaults());

/// log(q'/q) as a zeta-only element (interior jet; the end layer is not represented).
CuspElement log_ratio(const RegularizerQ& qprime, const RegularizerQ& q, int n, Trunc t);
/// log(1 + s) for a zeta-only element s of negative order, by the power series.
CuspElement log_one_plus(const CuspElement& s);

/// Series helpers in one variable (Taylor coefficients).
std::vector<GaussRat> series_inverse(const std::vector<GaussRat>& a, std::size_t len);
std::vector<GaussRat> series_log_one_plus(const std::vector<GaussRat>& h, std::size_t len);

}  // namespace cuspcalc
