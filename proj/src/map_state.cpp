#include "lgrowth/map_state.hpp"

#include "lgrowth/error.hpp"

#include <cmath>
#include <string>

namespace lgrowth {

namespace {
constexpr double kPhaseTolerance = 1e-12;
} // namespace

MapState::MapState(PowerSeries series, double t) : series_(std::move(series)), t_(t) {
    if (series_.degree() < 1) {
        throw Error(ErrorCode::InvalidMapState, "map series needs degree >= 1");
    }
    if (series_[0] != cplx{}) {
        throw Error(ErrorCode::InvalidMapState, "f(0) must be 0");
    }
    const cplx c1 = series_[1];
    if (!(c1.real() > 0.0) || std::abs(c1.imag()) > kPhaseTolerance * c1.real()) {
        throw Error(ErrorCode::InvalidMapState,
                    "f'(0) must be real positive (got " + std::to_string(c1.real()) + " + " +
                        std::to_string(c1.imag()) + "i)");
    }
    series_[1] = c1.real();
    if (!std::isfinite(t_)) {
        throw Error(ErrorCode::NonFinite, "time is not finite");
    }
}

MapState MapState::from_coeffs(const std::vector<cplx>& coeffs_from_c1, int degree, double t) {
    if (coeffs_from_c1.empty() || static_cast<int>(coeffs_from_c1.size()) > degree) {
        throw Error(ErrorCode::InvalidMapState,
                    "need between 1 and N coefficients starting at c_1");
    }
    PowerSeries s(degree);
    for (std::size_t k = 0; k < coeffs_from_c1.size(); ++k) {
        s[k + 1] = coeffs_from_c1[k];
    }
    return MapState(std::move(s), t);
}

MapState MapState::renormalized(PowerSeries series, double t) {
    series[0] = 0.0;
    const cplx c1 = series[1];
    const double r = std::abs(c1);
    if (!(r > 0.0)) {
        throw Error(ErrorCode::InvalidMapState, "f'(0) vanished");
    }
    if (c1.imag() != 0.0 || c1.real() < 0.0) {
        const cplx u = std::conj(c1) / r; // e^{i beta}
        cplx rot = u;
        for (int k = 1; k <= series.degree(); ++k) {
            series[k] *= rot;
            rot *= u;
        }
    }
    series[1] = series[1].real();
    return MapState(std::move(series), t);
}

MapState MapState::normalized() const {
    return MapState(series_ * (1.0 / alpha()), t_);
}

MapState MapState::scaled(double lambda) const {
    return MapState(series_ * lambda, t_);
}

MapState MapState::with_time(double t) const {
    return MapState(series_, t);
}

cplx MapState::normalized_coeff(int k) const {
    return series_.coeff(k) / alpha();
}

PowerSeries prelog_derivative(const MapState& f) {
    return prelog_derivative(f.series());
}

PowerSeries schwarzian(const MapState& f) {
    return schwarzian(f.series());
}

} // namespace lgrowth
