#pragma once

#include "lgrowth/pseries.hpp"

#include <vector>

namespace lgrowth {

/// Normalised univalent map f(z, t) = alpha z + c_2 z^2 + ... of the unit
/// disk, with f(0) = 0 and f'(0) = alpha > 0.
///
/// Construction checks the normalisation only; univalence is not certified
/// (see geometry.hpp for the boundary diagnostics).
class MapState {
public:
    MapState(PowerSeries series, double t = 0.0);

    /// alpha z + sum_{k>=2} c_k z^k, padded with zeros to degree N.
    static MapState from_coeffs(const std::vector<cplx>& coeffs_from_c1, int degree, double t = 0.0);

    /// Rotate the argument, f(e^{i beta} z) with beta = -arg c_1, and clear
    /// c_0, so that c_1 > 0 again. The image domain is unchanged.
    static MapState renormalized(PowerSeries series, double t);

    const PowerSeries& series() const noexcept { return series_; }
    double alpha() const noexcept { return series_[1].real(); }
    double t() const noexcept { return t_; }
    int degree() const noexcept { return series_.degree(); }

    /// f / alpha: the representative with f'(0) = 1.
    MapState normalized() const;
    MapState scaled(double lambda) const;
    MapState with_time(double t) const;

    /// Coefficient c_k of f / alpha.
    cplx normalized_coeff(int k) const;

private:
    PowerSeries series_;
    double t_;
};

PowerSeries prelog_derivative(const MapState& f);
PowerSeries schwarzian(const MapState& f);

} // namespace lgrowth
