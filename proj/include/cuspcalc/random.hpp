#pragma once

#include <random>
#include <utility>

#include "cuspcalc/element.hpp"
#include "cuspcalc/matrix.hpp"
#include "cuspcalc/sfunc.hpp"
#include "cuspcalc/suspended.hpp"

namespace cuspcalc {

using Rng = std::mt19937_64;

GaussRat random_gauss(Rng& g, int span = 3, int max_den = 3);
/// Random nonzero Gaussian rational.
GaussRat random_unit_coeff(Rng& g);

/// Random element of the coefficient ring with all poles at +-i and homogeneous degree <= top
/// (and >= bottom on the leading terms generated).
SFunc random_sfunc(Rng& g, int top, int bottom);
/// Random invertible ring element together with its inverse, built from the units
/// (v - i)/(v + i), (v +- i) s and nonzero constants. Homogeneous degree 0.
std::pair<SFunc, SFunc> random_ring_unit(Rng& g);

GMat random_gmat(Rng& g, int n);
/// Random invertible constant matrix with its inverse (unipotent times permutation times diagonal).
std::pair<GMat, GMat> random_invertible_gmat(Rng& g, int n);

SuspendedFamily random_family(Rng& g, int n, int top, int bottom);
/// Invertible family of degree 0 with its inverse: U (triangular with unit diagonal entries) U^-1.
std::pair<SuspendedFamily, SuspendedFamily> random_invertible_family(Rng& g, int n);

SMat random_smat(Rng& g, int n, int top, int bottom);

/// Sum of one to `terms` separable products f(z) g(zeta), with z-degree in [zbottom, ztop] and
/// zeta-degree in [bottom, top]. Layers are compatible by construction.
CuspElement random_element(Rng& g, int n, Trunc t, int top = 1, int bottom = -2, int ztop = 1, int zbottom = -2,
                           int terms = 2);
/// Element with empty interior layer and end coefficients at x-orders kmin..kmax.
CuspElement random_ends_element(Rng& g, int n, Trunc t, int kmin = 0, int kmax = 2);
/// Fully elliptic element: an invertible family plus x times a random element of negative order.
CuspElement random_elliptic_element(Rng& g, int n, Trunc t);
/// zeta + U diag(b_k - i a_k z s(z)) U^-1 with nonzero integers a_k; index sum_k sign(a_k).
/// Returns the element and its expected index.
std::pair<CuspElement, long> random_wall_element(Rng& g, int n, Trunc t);
/// family(U diag(xi - i a_k) V): translation invariant near the ends, fully elliptic.
CuspElement random_ti_elliptic(Rng& g, int n, Trunc t);

}  // namespace cuspcalc
