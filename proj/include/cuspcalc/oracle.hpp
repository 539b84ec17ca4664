#pragma once

#include <complex>
#include <string>
#include <vector>

#include "cuspcalc/element.hpp"
#include "cuspcalc/indexcore.hpp"
#include "cuspcalc/suspended.hpp"
#include "cuspcalc/traces.hpp"

namespace cuspcalc {

struct DiscretizationSpec {
  int grid = 1024;          // power of two, >= 128
  double half_width = 8.0;  // z in [-L, L)
  double threshold = 1e-6;
  // the radial cutoff rises from 0 at abs(zeta) = inner to 1 at abs(zeta) = outer
  double cutoff_inner = 0.5;
  double cutoff_outer = 16.0;  // a wide rise keeps the kernels of nonlocal terms short-ranged in z
  bool recheck = true;  // repeat at twice the grid and at 1.5 times the width
};

struct SvdRun {
  int grid = 0;
  double half_width = 0;
  long kernel = 0;
  long cokernel = 0;
  double largest_small = 0;        // largest singular value below the threshold
  double gap = 0;                  // smallest singular value above the threshold
  double max_kernel_residual = 0;  // max |A v| over the counted kernel vectors
  std::vector<double> grid_points;
  std::vector<std::vector<std::complex<double>>> kernel_vectors;  // unit vectors, block r * grid + k
};

struct SvdIndex {
  long index = 0;
  std::vector<SvdRun> runs;
  std::string diagnostics;
};

/// Dense spectral discretization of Op(a) in left quantization: column-major, size (n grid)^2.
std::vector<std::complex<double>> discretize(const CuspElement& a, int grid, double half_width,
                                             const DiscretizationSpec& spec = {});

/// One discretization: small singular values of A and A* restricted to functions supported in
/// abs(z) < 0.85 L. GapTooSmall when the verdict cannot be trusted.
SvdRun svd_run(const CuspElement& a, int grid, double half_width, const DiscretizationSpec& spec = {},
               bool vectors = false);
/// Index dim ker - dim coker, with rechecks at twice the grid and 1.5 times the width.
SvdIndex svd_index(const CuspElement& a, const DiscretizationSpec& spec = {});

/// Total symbol realized with the radial cutoff, as an n x n row-major matrix.
std::vector<std::complex<double>> total_symbol(const CuspElement& a, double z, double zeta,
                                               const DiscretizationSpec& spec = {});

struct WindingResult {
  long index = 0;
  double raw = 0;  // -(2 pi)^-1 times the increment of arg det
  int samples = 0;
};
/// Winding of det a around the rectangle abs(zeta) <= S, abs(z) <= T, traversed counterclockwise
/// in the (zeta, z) plane. HypothesisViolation when det a vanishes on the boundary.
WindingResult winding_index(const CuspElement& a, double S = 8.0, double T = 8.0, const DiscretizationSpec& spec = {});

struct Calibration {
  CalibrationConstants constants;
  SuspendedConventions conventions;
  std::vector<std::string> alternatives;  // other admissible assignments
  std::string report;
};

/// Steep domain wall zeta - 4 i z (1 + z^2)^(-1/2): index 1 with a kernel that fits in [-8, 8].
CuspElement calibration_anchor(Trunc t = {-6, 6});
/// Solves for the trace normalizations and the sign conventions. Deterministic.
Calibration calibrate(const CuspElement& anchor = calibration_anchor(), const DiscretizationSpec& spec = {});

}  // namespace cuspcalc
