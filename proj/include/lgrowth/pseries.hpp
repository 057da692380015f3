#pragma once

// Truncated complex power series c_0 + c_1 z + ... + c_N z^N.
//
// All arithmetic closes at the truncation degree N of its operands; binary
// operations require equal N.

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace lgrowth {

using cplx = std::complex<double>;

/// Below this modulus a constant term is treated as zero by reciprocal().
inline constexpr double kDivisionTolerance = 1e-14;

class PowerSeries {
public:
    /// Zero series of the given truncation degree.
    explicit PowerSeries(int degree = 0);
    explicit PowerSeries(std::vector<cplx> coeffs);
    PowerSeries(std::initializer_list<cplx> coeffs);

    static PowerSeries unit(int degree);
    static PowerSeries monomial(int degree, int power, cplx value = 1.0);

    int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
    std::size_t size() const noexcept { return coeffs_.size(); }

    const cplx& operator[](std::size_t k) const { return coeffs_[k]; }
    cplx& operator[](std::size_t k) { return coeffs_[k]; }
    /// Coefficient k, or zero beyond the truncation degree.
    cplx coeff(int k) const noexcept;

    std::span<const cplx> coeffs() const noexcept { return coeffs_; }
    std::span<cplx> coeffs() noexcept { return coeffs_; }

    /// Same coefficients at a different truncation degree (drop or zero-pad).
    PowerSeries resized(int degree) const;

    PowerSeries& operator+=(const PowerSeries& o);
    PowerSeries& operator-=(const PowerSeries& o);
    PowerSeries& operator*=(cplx s);

    friend PowerSeries operator+(PowerSeries a, const PowerSeries& b) { return a += b; }
    friend PowerSeries operator-(PowerSeries a, const PowerSeries& b) { return a -= b; }
    friend PowerSeries operator*(PowerSeries a, cplx s) { return a *= s; }
    friend PowerSeries operator*(cplx s, PowerSeries a) { return a *= s; }
    PowerSeries operator-() const;

    bool operator==(const PowerSeries&) const = default;

    double max_abs() const noexcept;

private:
    std::vector<cplx> coeffs_;
};

/// (k+1) c_{k+1} in slot k; the top slot is zero.
PowerSeries derivative(const PowerSeries& s);

/// Zero constant term; the c_N z^{N+1}/(N+1) term falls off the truncation.
PowerSeries antiderivative(const PowerSeries& s);

/// Cauchy product truncated at N. Throws DegreeMismatch.
PowerSeries multiply(const PowerSeries& a, const PowerSeries& b);

/// Series of 1/a. Throws VanishingConstantTerm when |c_0| <= eps.
PowerSeries reciprocal(const PowerSeries& a, double eps = kDivisionTolerance);

/// z * s, truncated.
PowerSeries shift_up(const PowerSeries& s, int places = 1);

/// Horner evaluation of the truncated polynomial.
cplx evaluate(const PowerSeries& s, cplx z);

/// f''/f' for any series with nonvanishing f'(0).
PowerSeries prelog_derivative(const PowerSeries& f);

/// S_f = (f''/f')' - (f''/f')^2 / 2. Exact up to degree N-2 for polynomial f
/// of degree <= N; slots N-1 and N are zero.
PowerSeries schwarzian(const PowerSeries& f);

} // namespace lgrowth
