#pragma once

// Kinetic energy E[f], logarithmic action S[f], and their time derivatives
// along Laplacian growth.

#include "lgrowth/circlegrid.hpp"
#include "lgrowth/geometry.hpp"
#include "lgrowth/map_state.hpp"

#include <limits>
#include <map>
#include <string>

namespace lgrowth {

/// E[f] = 2 pi log f'(0).
double energy(const MapState& f);

/// S[f] = pi sum_{k>=0} |b_k|^2 / (k+1) + 2 pi log alpha with b = f''/f'.
///
/// The regularised integrand |b + 1/z|^2 - 1/|z|^2 = |b|^2 + 2 Re(b / conj z)
/// and the cross term has zero angular mean on every circle |z| = r, so only
/// the Dirichlet norm of b survives.
double log_action(const MapState& f);

struct AnnulusQuadrature {
    int angular = 512;
    int radial = 400;
};

/// int_{eps<|z|<1} |f''/f' + 1/z|^2 d sigma + 2 pi log eps + 2 pi log alpha on a
/// tensor grid (trapezoid in angle, Gauss-Legendre in radius). The 1/|z|^2
/// part is integrated in closed form, where it cancels 2 pi log eps exactly.
/// f'' and f' are evaluated pointwise from the map polynomial.
double log_action_quadrature(const MapState& f, double eps, AnnulusQuadrature grid = {});

/// dE/dt = int d theta / |f'|^2. Throws CuspProximity.
double energy_rate(const MapState& f, int M, double eps_cusp = kCuspThreshold);

struct ActionEnergyRate {
    /// 2 int kappa^2 d theta + int (2/|f'|^2) Re(e^{2 i theta} S_f) d theta.
    double total;
    double curv_sq_integral; ///< 2 int kappa^2 d theta
    double schwarzian_term;
};

/// d(S+E)/dt by the curvature/Schwarzian formula. Throws CuspProximity.
ActionEnergyRate action_energy_rate(const MapState& f, int M, double eps_cusp = kCuspThreshold);

struct ProofIdentity {
    double lhs; ///< int (Im q)^2 / |f'|^2 d theta, q = 1 + e^{i theta} f''/f'
    double rhs; ///< -(1/2) int Re(q^2/2 + e^{2 i theta} S_f - 1/2) / |f'|^2 d theta
    double residual() const { return std::abs(lhs - rhs); }
};

ProofIdentity proof_identity(const MapState& f, int M, double eps_cusp = kCuspThreshold);

/// |lhs - rhs| of the integration-by-parts identity above.
double proof_identity_residual(const MapState& f, int M, double eps_cusp = kCuspThreshold);

struct ActionReport {
    double t = 0.0;
    double E = 0.0;
    double S = 0.0;
    double dE_dt = 0.0;
    double dSE_dt_theorem = 0.0;
    /// Finite difference of S+E along the trajectory; NaN until a trajectory fills it.
    double dSE_dt_fd = std::numeric_limits<double>::quiet_NaN();
    /// 2 int kappa^2 + Re (Omega, nu) with nu = 2/|f'|^2.
    double dSE_dt_omega = 0.0;
    double curv_sq_integral = 0.0;
    std::map<std::string, double> residuals;
};

/// Everything except the finite-difference route.
ActionReport make_action_report(const MapState& f, int M, double eps_cusp = kCuspThreshold);

} // namespace lgrowth
