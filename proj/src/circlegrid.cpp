#include "lgrowth/circlegrid.hpp"

#include "lgrowth/error.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <string>

namespace lgrowth {

namespace {

// FFTW planning is not thread-safe; execution with the new-array interface is.
class PlanCache {
public:
    static PlanCache& instance() {
        static PlanCache cache;
        return cache;
    }

    struct Plans {
        fftw_plan forward;
        fftw_plan backward;
    };

    Plans get(int M) {
        std::lock_guard<std::mutex> lock(mutex_);
        if (auto it = plans_.find(M); it != plans_.end()) {
            return it->second;
        }
        auto* in = fftw_alloc_complex(static_cast<std::size_t>(M));
        auto* out = fftw_alloc_complex(static_cast<std::size_t>(M));
        const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
        Plans p{fftw_plan_dft_1d(M, in, out, FFTW_FORWARD, flags),
                fftw_plan_dft_1d(M, in, out, FFTW_BACKWARD, flags)};
        fftw_free(in);
        fftw_free(out);
        plans_.emplace(M, p);
        return p;
    }

    PlanCache(const PlanCache&) = delete;
    PlanCache& operator=(const PlanCache&) = delete;

private:
    PlanCache() = default;
    ~PlanCache() {
        for (auto& [m, p] : plans_) {
            fftw_destroy_plan(p.forward);
            fftw_destroy_plan(p.backward);
        }
    }

    std::mutex mutex_;
    std::map<int, Plans> plans_;
};

std::vector<cplx> transform(std::span<const cplx> in, bool forward) {
    const int M = static_cast<int>(in.size());
    std::vector<cplx> src(in.begin(), in.end());
    std::vector<cplx> out(in.size());
    const auto plans = PlanCache::instance().get(M);
    fftw_execute_dft(forward ? plans.forward : plans.backward,
                     reinterpret_cast<fftw_complex*>(src.data()),
                     reinterpret_cast<fftw_complex*>(out.data()));
    return out;
}

void require_real(const CircleSamples& s, const char* what) {
    const double im = s.max_abs_imag();
    if (!(im < kRealityTolerance)) {
        throw Error(ErrorCode::NonRealInput,
                    std::string(what) + " has imaginary part " + std::to_string(im));
    }
}

} // namespace

bool is_power_of_two(int M) noexcept {
    return M > 0 && (M & (M - 1)) == 0;
}

int default_grid_size(int degree) {
    int M = 1;
    while (M < 8 * (degree + 1)) {
        M *= 2;
    }
    return M;
}

void require_grid(int M, int degree) {
    if (!is_power_of_two(M)) {
        throw Error(ErrorCode::GridTooSmall, "grid size " + std::to_string(M) + " is not a power of two");
    }
    if (M < 4 * (degree + 1)) {
        throw Error(ErrorCode::GridTooSmall, "grid size " + std::to_string(M) + " < 4(N+1) for N=" +
                                                 std::to_string(degree));
    }
}

// --- CircleSamples -----------------------------------------------------------

CircleSamples::CircleSamples(int M) {
    if (M <= 0) {
        throw Error(ErrorCode::GridTooSmall, "empty grid");
    }
    values_.assign(static_cast<std::size_t>(M), cplx{});
}

CircleSamples::CircleSamples(std::vector<cplx> values) : values_(std::move(values)) {
    if (values_.empty()) {
        throw Error(ErrorCode::GridTooSmall, "empty grid");
    }
}

CircleSamples CircleSamples::from_real(std::span<const double> values) {
    std::vector<cplx> v(values.begin(), values.end());
    return CircleSamples(std::move(v));
}

cplx CircleSamples::point(int j) const noexcept {
    return std::polar(1.0, theta(j));
}

std::vector<double> CircleSamples::real_part() const {
    std::vector<double> out(values_.size());
    std::transform(values_.begin(), values_.end(), out.begin(), [](cplx v) { return v.real(); });
    return out;
}

double CircleSamples::max_abs_imag() const noexcept {
    double m = 0.0;
    for (const auto& v : values_) {
        m = std::max(m, std::abs(v.imag()));
    }
    return m;
}

// --- FourierCoeffs -----------------------------------------------------------

FourierCoeffs::FourierCoeffs(int M, std::vector<cplx> fft_order) : data_(std::move(fft_order)) {
    if (static_cast<int>(data_.size()) != M) {
        throw Error(ErrorCode::GridTooSmall, "Fourier coefficient count does not match grid");
    }
}

std::size_t FourierCoeffs::slot(int k) const noexcept {
    const int M = size();
    const int r = ((k % M) + M) % M;
    return static_cast<std::size_t>(r);
}

cplx FourierCoeffs::operator()(int k) const noexcept {
    return data_[slot(k)];
}

cplx& FourierCoeffs::at(int k) noexcept {
    return data_[slot(k)];
}

double FourierCoeffs::tail_fraction(int cutoff) const noexcept {
    const int M = size();
    double total = 0.0;
    double tail = 0.0;
    for (int k = -M / 2; k < M / 2; ++k) {
        const double e = std::norm((*this)(k));
        total += e;
        if (std::abs(k) > cutoff) {
            tail += e;
        }
    }
    return total > 0.0 ? tail / total : 0.0;
}

FourierCoeffs fourier(const CircleSamples& samples) {
    const int M = samples.size();
    auto out = transform(samples.values(), true);
    const double inv = 1.0 / M;
    for (auto& v : out) {
        v *= inv;
    }
    return FourierCoeffs(M, std::move(out));
}

CircleSamples synthesize(const FourierCoeffs& coeffs) {
    return CircleSamples(transform(coeffs.raw(), false));
}

CircleSamples synthesize(const PowerSeries& s, int M) {
    // w_j^k depends on k mod M only, so folding the coefficients is exact.
    std::vector<cplx> raw(static_cast<std::size_t>(M), cplx{});
    for (int k = 0; k <= s.degree(); ++k) {
        raw[static_cast<std::size_t>(k % M)] += s[k];
    }
    return CircleSamples(transform(raw, false));
}

CircleSamples sample_map(const MapState& f, int M, int order) {
    require_grid(M, f.degree());
    if (order < 0 || order > 3) {
        throw Error(ErrorCode::OutOfRange, "derivative order must be in 0..3");
    }
    PowerSeries s = f.series();
    for (int i = 0; i < order; ++i) {
        s = derivative(s);
    }
    return synthesize(s, M);
}

cplx quad_trapezoid(const CircleSamples& g) {
    cplx acc{};
    for (const auto& v : g.values()) {
        acc += v;
    }
    return acc * (kTwoPi / g.size());
}

HerglotzResult herglotz_extend_with_tail(const CircleSamples& rho, int degree) {
    require_real(rho, "Herglotz boundary data");
    if (rho.size() < 2 * (degree + 1)) {
        throw Error(ErrorCode::GridTooSmall, "grid cannot resolve modes up to N");
    }
    const FourierCoeffs g = fourier(rho);
    PowerSeries p(degree);
    p[0] = g(0).real();
    for (int k = 1; k <= degree; ++k) {
        p[k] = 2.0 * g(k);
    }
    return {std::move(p), g.tail_fraction(degree)};
}

PowerSeries herglotz_extend(const CircleSamples& rho, int degree) {
    return herglotz_extend_with_tail(rho, degree).p;
}

// --- VectorFieldS1 -----------------------------------------------------------

namespace {

FourierCoeffs symmetric_fourier(const std::vector<double>& v) {
    FourierCoeffs c = fourier(CircleSamples::from_real(v));
    const int M = c.size();
    c.at(0) = c(0).real();
    if (M % 2 == 0) {
        c.at(M / 2) = c(M / 2).real();
    }
    for (int k = 1; k < (M + 1) / 2; ++k) {
        c.at(-k) = std::conj(c(k));
    }
    return c;
}

} // namespace

VectorFieldS1::VectorFieldS1(std::vector<double> samples)
    : samples_(std::move(samples)), fourier_(symmetric_fourier(samples_)) {}

VectorFieldS1 VectorFieldS1::from_samples(const CircleSamples& samples) {
    require_real(samples, "vector field samples");
    return VectorFieldS1(samples.real_part());
}

VectorFieldS1 VectorFieldS1::derivative(int order) const {
    const int M = size();
    FourierCoeffs c = fourier_;
    for (int k = -M / 2; k < M / 2; ++k) {
        cplx factor = 1.0;
        for (int i = 0; i < order; ++i) {
            factor *= cplx(0.0, static_cast<double>(k));
        }
        c.at(k) *= factor;
    }
    if (M % 2 == 0) {
        c.at(M / 2) = 0.0;
    }
    return VectorFieldS1(synthesize(c).real_part());
}

CircleSamples VectorFieldS1::as_samples() const {
    return CircleSamples::from_real(samples_);
}

PowerSeries lk_driver(const VectorFieldS1& nu, double p0, int degree) {
    if (nu.size() < 2 * (degree + 1)) {
        throw Error(ErrorCode::GridTooSmall, "grid cannot resolve modes up to N");
    }
    PowerSeries p(degree);
    p[0] = p0;
    for (int k = 1; k <= degree; ++k) {
        p[k] = nu.fourier()(k);
    }
    return p;
}

} // namespace lgrowth
