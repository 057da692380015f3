#pragma once

// Vect S^1, its central extension, and the action of both on normalised
// univalent maps f(z) = z + c_2 z^2 + ...

#include "lgrowth/circlegrid.hpp"
#include "lgrowth/map_state.hpp"

#include <span>
#include <vector>

namespace lgrowth {

/// Largest |z| at which the boundary quadrature of the variation integral is
/// trusted.
inline constexpr double kVariationRadiusLimit = 0.95;

/// Goluzin-Schiffer variation
///   delta_nu f(z) = -(f(z)^2 / 2 pi i) \oint (w f'(w)/f(w))^2 nu(w) / ((f(w) - f(z)) w) dw
/// by trapezoid quadrature on the grid of `nu`. The boundary function may be
/// complex (the integral is linear in nu). Requires f'(0) = 1.
cplx gs_variation(const MapState& f, const CircleSamples& nu, cplx z);

/// L_k f(z) from the variation integral. The literal integral maps the
/// boundary function -i e^{ik theta} to i L_k, so this evaluates it for
/// -i e^{ik theta} and divides by i.
cplx generator_from_variation(const MapState& f, int k, cplx z, int M);

/// Closed forms: k >= 1: z^{1+k} f'; k = 0: z f' - f; k = -1: f' - 1 - 2 c_2 f;
/// k = -2: f'/z - 1/f - 3 c_2 + (c_2^2 - 4 c_3) f.
/// Throws UnsupportedGenerator for k < -2, OriginSingularity for k = -2 at z = 0.
cplx lk_generator_closed(const MapState& f, int k, cplx z);

/// Series of L_k f for k >= 0 (on the normalised map).
PowerSeries generator_series(const MapState& f, int k);

/// Coordinate action of L_k (k >= 0) at the point {c_2, ..., c_K}: the
/// components along c_2..c_K, taken from the closed-form generator series.
std::vector<cplx> coord_vector_field(int k, std::span<const cplx> coeffs_from_c2);

/// The coordinate formula L_k = d_k + sum_{n>=1} (n+1) c_n d_{k+n},
/// L_0 = sum_{n>=1} n c_n d_n with d_j = d/dc_{j+1} and c_1 = 1, transcribed
/// literally. Kept for comparison against coord_vector_field().
std::vector<cplx> printed_coord_vector_field(int k, std::span<const cplx> coeffs_from_c2);

struct NeretinValues {
    double charge;
    /// values[i] = P_{i+2}.
    std::vector<cplx> values;

    /// P_k for any k >= 0 (P_0 = P_1 = 0, zero beyond kmax or for k < 0).
    cplx P(int k) const noexcept;
};

/// P_k = (c/12) [S_f]_{k-2}, read off the generatrix (c z^2 / 12) S_f(z).
/// Requires kmax <= N - 2.
NeretinValues neretin_from_generatrix(const MapState& f, double c, int kmax);

/// |L_m(P_n) - (n+m) P_{n-m} - (c/12) m (m^2-1) delta_{n,m}| with L_m(P_n)
/// taken as the central difference of P_n along generator_series(f, m).
double neretin_recurrence_residual(const MapState& f, double c, int m, int n, double h = 1e-5);

/// [phi, psi] = phi psi' - psi phi' with spectral derivatives.
VectorFieldS1 witt_bracket(const VectorFieldS1& phi, const VectorFieldS1& psi);

/// omega(phi, psi) = -(1/4 pi) int (phi' + phi''') psi d theta.
double gelfand_fuks(const VectorFieldS1& phi, const VectorFieldS1& psi);

/// phi d + c a in the central extension of Vect S^1.
struct CentralElement {
    VectorFieldS1 field;
    double central;
    double charge;
};

/// [phi d + c a, psi d + c b] = [phi, psi] d + (c/12) omega(phi, psi).
/// Throws ChargeMismatch.
CentralElement vir_bracket(const CentralElement& x, const CentralElement& y);

/// max |J| over the field part plus |central part| of the Jacobi sum
/// [[x,y],z] + [[y,z],x] + [[z,x],y].
double jacobi_residual(const CentralElement& x, const CentralElement& y, const CentralElement& z);

/// [e_m, e_n] = (n - m) e_{m+n} + (c/12) m (m^2 - 1) delta_{n,-m} on the basis
/// e_k = z^{1+k} d.
struct BasisBracket {
    int index;
    double coefficient;
    double central;
};
BasisBracket basis_bracket(int m, int n, double charge);

/// (Omega, nu)_f = int e^{2 i theta} nu(e^{i theta}) S_f(e^{i theta}) d theta,
/// with S_f sampled pointwise from f', f'', f''' on the grid of nu. S_f is
/// scale invariant, so any alpha > 0 is accepted.
cplx omega_pairing(const MapState& f, const VectorFieldS1& nu);

/// S_f(e^{i theta_j}) = f'''/f' - (3/2)(f''/f')^2 on the grid.
CircleSamples boundary_schwarzian(const MapState& f, int M);

} // namespace lgrowth
