#pragma once

// Equispaced sampling of the unit circle, theta_j = 2 pi j / M, and the
// Fourier machinery built on it: synthesis of analytic series, periodic
// trapezoid quadrature, and analytic extension of boundary data through the
// Schwarz (Herglotz) kernel.

#include "lgrowth/map_state.hpp"
#include "lgrowth/pseries.hpp"

#include <span>
#include <vector>

namespace lgrowth {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

/// Tolerance on |Im g| for samples declared real.
inline constexpr double kRealityTolerance = 1e-12;

/// Smallest power of two >= 8 (N + 1).
int default_grid_size(int degree);

/// Throws GridTooSmall unless M is a power of two with M >= 4 (N + 1).
void require_grid(int M, int degree);

bool is_power_of_two(int M) noexcept;

class CircleSamples {
public:
    explicit CircleSamples(int M);
    explicit CircleSamples(std::vector<cplx> values);

    static CircleSamples from_real(std::span<const double> values);

    int size() const noexcept { return static_cast<int>(values_.size()); }
    double theta(int j) const noexcept { return kTwoPi * j / size(); }
    cplx point(int j) const noexcept;

    const cplx& operator[](int j) const { return values_[static_cast<std::size_t>(j)]; }
    cplx& operator[](int j) { return values_[static_cast<std::size_t>(j)]; }

    std::span<const cplx> values() const noexcept { return values_; }
    std::vector<double> real_part() const;

    double max_abs_imag() const noexcept;
    bool is_real(double tol = kRealityTolerance) const noexcept { return max_abs_imag() < tol; }

private:
    std::vector<cplx> values_;
};

/// Discrete Fourier coefficients g_k = (1/M) sum_j g(theta_j) e^{-i k theta_j},
/// indexed by k = -M/2 .. M/2-1 (other k wrap modulo M).
class FourierCoeffs {
public:
    FourierCoeffs(int M, std::vector<cplx> fft_order);

    int size() const noexcept { return static_cast<int>(data_.size()); }
    cplx operator()(int k) const noexcept;
    cplx& at(int k) noexcept;

    /// Raw storage in FFT order (slot j holds mode j for j < M/2, j - M otherwise).
    std::span<const cplx> raw() const noexcept { return data_; }

    /// Energy fraction sum_{|k| > cutoff} |g_k|^2 / sum_k |g_k|^2.
    double tail_fraction(int cutoff) const noexcept;

private:
    std::size_t slot(int k) const noexcept;
    std::vector<cplx> data_;
};

FourierCoeffs fourier(const CircleSamples& samples);

/// Inverse of fourier(): g(theta_j) = sum_k g_k e^{i k theta_j}.
CircleSamples synthesize(const FourierCoeffs& coeffs);

/// Samples of sum_k c_k e^{i k theta_j}; requires M > N.
CircleSamples synthesize(const PowerSeries& s, int M);

/// Samples of d^order f / dz^order on the circle; requires the dealiasing
/// margin M >= 4 (N + 1).
CircleSamples sample_map(const MapState& f, int M, int order);

/// (2 pi / M) sum_j g(theta_j).
cplx quad_trapezoid(const CircleSamples& g);

/// p(z) = (1/2pi) int rho(theta) (e^{i theta} + z)/(e^{i theta} - z) d theta,
/// truncated at degree N. Throws NonRealInput unless rho is real.
PowerSeries herglotz_extend(const CircleSamples& rho, int degree);

struct HerglotzResult {
    PowerSeries p;
    /// Energy of rho beyond mode N relative to the total.
    double tail_fraction;
};
HerglotzResult herglotz_extend_with_tail(const CircleSamples& rho, int degree);

/// Threshold on the boundary-data spectral tail for the
/// SpectralUnderresolved diagnostic.
inline constexpr double kSpectralTailLimit = 1e-10;

/// Real vector field nu(theta) d/d theta on the circle, stored as samples
/// together with their Hermitian-symmetric Fourier coefficients.
class VectorFieldS1 {
public:
    explicit VectorFieldS1(std::vector<double> samples);

    template <class F>
    static VectorFieldS1 from_function(int M, F&& fn) {
        std::vector<double> v(static_cast<std::size_t>(M));
        for (int j = 0; j < M; ++j) {
            v[static_cast<std::size_t>(j)] = fn(kTwoPi * j / M);
        }
        return VectorFieldS1(std::move(v));
    }

    /// Throws NonRealInput if the samples are not real.
    static VectorFieldS1 from_samples(const CircleSamples& samples);

    int size() const noexcept { return static_cast<int>(samples_.size()); }
    std::span<const double> samples() const noexcept { return samples_; }
    double operator[](int j) const { return samples_[static_cast<std::size_t>(j)]; }
    const FourierCoeffs& fourier() const noexcept { return fourier_; }

    /// Spectral d/d theta (Nyquist mode dropped).
    VectorFieldS1 derivative(int order = 1) const;

    CircleSamples as_samples() const;

private:
    std::vector<double> samples_;
    FourierCoeffs fourier_;
};

/// p(z) = p0 + (z / 2 pi i) \oint nu(w) / (w (w - z)) dw: coefficient k >= 1
/// equals nu_k and p(0) = p0.
PowerSeries lk_driver(const VectorFieldS1& nu, double p0, int degree);

} // namespace lgrowth
