#pragma once

// Geometric observables of the image domain f(U).

#include "lgrowth/circlegrid.hpp"
#include "lgrowth/map_state.hpp"

#include <vector>

namespace lgrowth {

/// Default stopping threshold on min |f'| over the boundary grid.
inline constexpr double kCuspThreshold = 1e-3;

/// kappa(theta) = Re(1 + e^{i theta} f''/f') / |f'(e^{i theta})|.
/// Throws CuspProximity if min |f'| <= eps_cusp.
CircleSamples curvature(const MapState& f, int M, double eps_cusp = kCuspThreshold);

/// pi sum_k k |c_k|^2.
double area(const MapState& f);

/// (1/2i) \oint conj(z) dz by trapezoid quadrature on the boundary.
double boundary_area(const MapState& f, int M);

/// M_k = (1/pi) \iint z^k d sigma for k = 1..kmax, via
/// (1/2 pi i) \oint f^k conj(f) f' dw on the grid.
std::vector<cplx> richardson_moments(const MapState& f, int kmax, int M);

/// W'(f(z)) = -1 / (z f'(z)). Throws OriginSingularity at z = 0.
cplx complex_velocity(const MapState& f, cplx z);

/// min_j |f'(e^{i theta_j})|.
double cusp_indicator(const MapState& f, int M);

/// Winding number of the closed polygon through `curve` around `point`.
int winding_number(std::span<const cplx> curve, cplx point);

/// Boundary image f(e^{i theta_j}).
std::vector<cplx> boundary_curve(const MapState& f, int M);

/// Sampled check for a non-simple boundary polygon. A true result shows the
/// map is not univalent; false proves nothing.
bool boundary_self_intersects(const MapState& f, int M);

} // namespace lgrowth
