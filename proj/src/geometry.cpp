#include "lgrowth/geometry.hpp"

#include "lgrowth/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace lgrowth {

double cusp_indicator(const MapState& f, int M) {
    const CircleSamples fp = sample_map(f, M, 1);
    double m = std::abs(fp[0]);
    for (int j = 1; j < M; ++j) {
        m = std::min(m, std::abs(fp[j]));
    }
    return m;
}

CircleSamples curvature(const MapState& f, int M, double eps_cusp) {
    const CircleSamples fp = sample_map(f, M, 1);
    const CircleSamples fpp = sample_map(f, M, 2);
    CircleSamples kappa(M);
    for (int j = 0; j < M; ++j) {
        const double mod = std::abs(fp[j]);
        if (!(mod > eps_cusp)) {
            throw Error(ErrorCode::CuspProximity,
                        "|f'| = " + std::to_string(mod) + " at theta = " + std::to_string(fp.theta(j)));
        }
        const cplx q = 1.0 + fp.point(j) * fpp[j] / fp[j];
        kappa[j] = q.real() / mod;
    }
    return kappa;
}

double area(const MapState& f) {
    double acc = 0.0;
    const auto& s = f.series();
    for (int k = 1; k <= s.degree(); ++k) {
        acc += k * std::norm(s[k]);
    }
    return kPi * acc;
}

double boundary_area(const MapState& f, int M) {
    // dz = i w f'(w) d theta on |w| = 1.
    const CircleSamples z = sample_map(f, M, 0);
    const CircleSamples fp = sample_map(f, M, 1);
    CircleSamples g(M);
    for (int j = 0; j < M; ++j) {
        g[j] = std::conj(z[j]) * cplx(0.0, 1.0) * z.point(j) * fp[j];
    }
    return (quad_trapezoid(g) / cplx(0.0, 2.0)).real();
}

std::vector<cplx> richardson_moments(const MapState& f, int kmax, int M) {
    if (kmax < 1) {
        throw Error(ErrorCode::OutOfRange, "kmax must be >= 1");
    }
    const CircleSamples z = sample_map(f, M, 0);
    const CircleSamples fp = sample_map(f, M, 1);
    std::vector<cplx> moments(static_cast<std::size_t>(kmax), cplx{});
    for (int j = 0; j < M; ++j) {
        // (1/2 pi i) \oint g dw = mean over the grid of g(w) w.
        const cplx base = std::conj(z[j]) * fp[j] * z.point(j);
        cplx zk = z[j];
        for (int k = 1; k <= kmax; ++k) {
            moments[static_cast<std::size_t>(k - 1)] += zk * base;
            zk *= z[j];
        }
    }
    for (auto& m : moments) {
        m /= static_cast<double>(M);
    }
    return moments;
}

cplx complex_velocity(const MapState& f, cplx z) {
    if (z == cplx{}) {
        throw Error(ErrorCode::OriginSingularity, "complex velocity has a pole at the source");
    }
    return -1.0 / (z * evaluate(derivative(f.series()), z));
}

std::vector<cplx> boundary_curve(const MapState& f, int M) {
    const CircleSamples z = synthesize(f.series(), M);
    return {z.values().begin(), z.values().end()};
}

int winding_number(std::span<const cplx> curve, cplx point) {
    double total = 0.0;
    const std::size_t n = curve.size();
    for (std::size_t i = 0; i < n; ++i) {
        const cplx a = curve[i] - point;
        const cplx b = curve[(i + 1) % n] - point;
        total += std::arg(b / a);
    }
    return static_cast<int>(std::lround(total / kTwoPi));
}

namespace {

double cross(cplx a, cplx b) {
    return a.real() * b.imag() - a.imag() * b.real();
}

bool segments_cross(cplx p1, cplx p2, cplx q1, cplx q2) {
    const double d1 = cross(p2 - p1, q1 - p1);
    const double d2 = cross(p2 - p1, q2 - p1);
    const double d3 = cross(q2 - q1, p1 - q1);
    const double d4 = cross(q2 - q1, p2 - q1);
    return ((d1 > 0) != (d2 > 0)) && ((d3 > 0) != (d4 > 0));
}

} // namespace

bool boundary_self_intersects(const MapState& f, int M) {
    const auto c = boundary_curve(f, M);
    const std::size_t n = c.size();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 2; j < n; ++j) {
            if (i == 0 && j == n - 1) {
                continue; // adjacent through the wrap
            }
            if (segments_cross(c[i], c[(i + 1) % n], c[j], c[(j + 1) % n])) {
                return true;
            }
        }
    }
    return false;
}

} // namespace lgrowth
