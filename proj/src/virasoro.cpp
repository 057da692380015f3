#include "lgrowth/virasoro.hpp"

#include "lgrowth/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace lgrowth {

namespace {

constexpr double kNormalizationTolerance = 1e-12;

void require_normalized(const MapState& f) {
    if (std::abs(f.alpha() - 1.0) > kNormalizationTolerance) {
        throw Error(ErrorCode::InvalidMapState, "expected f'(0) = 1, got " + std::to_string(f.alpha()));
    }
}

void require_same_grid(const VectorFieldS1& a, const VectorFieldS1& b) {
    if (a.size() != b.size()) {
        throw Error(ErrorCode::GridTooSmall, "vector fields live on different grids");
    }
}

MapState from_c2(std::span<const cplx> coeffs_from_c2, int degree) {
    PowerSeries s(degree);
    s[1] = 1.0;
    for (std::size_t i = 0; i < coeffs_from_c2.size() && static_cast<int>(i) + 2 <= degree; ++i) {
        s[i + 2] = coeffs_from_c2[i];
    }
    return MapState(std::move(s));
}

} // namespace

cplx gs_variation(const MapState& f, const CircleSamples& nu, cplx z) {
    require_normalized(f);
    if (std::abs(z) > kVariationRadiusLimit) {
        throw Error(ErrorCode::EvaluationTooCloseToBoundary,
                    "|z| = " + std::to_string(std::abs(z)) + " exceeds " +
                        std::to_string(kVariationRadiusLimit));
    }
    const int M = nu.size();
    const CircleSamples fw = synthesize(f.series(), M);
    const CircleSamples fpw = synthesize(derivative(f.series()), M);
    const cplx fz = evaluate(f.series(), z);

    // dw / w = i d theta on the unit circle.
    CircleSamples g(M);
    for (int j = 0; j < M; ++j) {
        const cplx w = fw.point(j);
        const cplx q = w * fpw[j] / fw[j];
        g[j] = q * q * nu[j] / (fw[j] - fz) * cplx(0.0, 1.0);
    }
    return -(fz * fz) / cplx(0.0, kTwoPi) * quad_trapezoid(g);
}

cplx generator_from_variation(const MapState& f, int k, cplx z, int M) {
    CircleSamples nu(M);
    for (int j = 0; j < M; ++j) {
        nu[j] = cplx(0.0, -1.0) * std::polar(1.0, k * nu.theta(j));
    }
    return gs_variation(f, nu, z) / cplx(0.0, 1.0);
}

cplx lk_generator_closed(const MapState& f, int k, cplx z) {
    const MapState g = f.normalized();
    const PowerSeries& s = g.series();
    const cplx fz = evaluate(s, z);
    const cplx fpz = evaluate(derivative(s), z);
    const cplx c2 = s.coeff(2);
    const cplx c3 = s.coeff(3);
    if (k >= 1) {
        return std::pow(z, k + 1) * fpz;
    }
    switch (k) {
    case 0:
        return z * fpz - fz;
    case -1:
        return fpz - 1.0 - 2.0 * c2 * fz;
    case -2:
        if (z == cplx{}) {
            throw Error(ErrorCode::OriginSingularity, "L_-2 closed form evaluated at z = 0");
        }
        return fpz / z - 1.0 / fz - 3.0 * c2 + (c2 * c2 - 4.0 * c3) * fz;
    default:
        throw Error(ErrorCode::UnsupportedGenerator, "no closed form for k = " + std::to_string(k));
    }
}

PowerSeries generator_series(const MapState& f, int k) {
    if (k < 0) {
        throw Error(ErrorCode::UnsupportedGenerator, "generator series needs k >= 0");
    }
    const MapState g = f.normalized();
    const PowerSeries zfp = shift_up(derivative(g.series()), 1);
    if (k == 0) {
        return zfp - g.series();
    }
    return shift_up(zfp, k);
}

std::vector<cplx> coord_vector_field(int k, std::span<const cplx> coeffs_from_c2) {
    if (k < 0) {
        throw Error(ErrorCode::UnsupportedGenerator, "coordinate action needs k >= 0");
    }
    const int K = static_cast<int>(coeffs_from_c2.size()) + 1;
    const PowerSeries v = generator_series(from_c2(coeffs_from_c2, K), k);
    std::vector<cplx> out;
    for (int j = 2; j <= K; ++j) {
        out.push_back(v[j]);
    }
    return out;
}

std::vector<cplx> printed_coord_vector_field(int k, std::span<const cplx> coeffs_from_c2) {
    if (k < 0) {
        throw Error(ErrorCode::UnsupportedGenerator, "coordinate action needs k >= 0");
    }
    const int K = static_cast<int>(coeffs_from_c2.size()) + 1;
    auto c = [&](int n) -> cplx {
        if (n == 1) {
            return 1.0;
        }
        return (n >= 2 && n <= K) ? coeffs_from_c2[static_cast<std::size_t>(n - 2)] : cplx{};
    };
    // Slot j - 2 holds the component along c_j; d_m = d/dc_{m+1}.
    std::vector<cplx> out(static_cast<std::size_t>(std::max(K - 1, 0)), cplx{});
    auto add = [&](int m, cplx value) {
        const int j = m + 1;
        if (j >= 2 && j <= K) {
            out[static_cast<std::size_t>(j - 2)] += value;
        }
    };
    if (k == 0) {
        for (int n = 1; n <= K; ++n) {
            add(n, static_cast<double>(n) * c(n));
        }
    } else {
        add(k, 1.0);
        for (int n = 1; n <= K; ++n) {
            add(k + n, static_cast<double>(n + 1) * c(n));
        }
    }
    return out;
}

cplx NeretinValues::P(int k) const noexcept {
    if (k < 2 || k - 2 >= static_cast<int>(values.size())) {
        return {};
    }
    return values[static_cast<std::size_t>(k - 2)];
}

NeretinValues neretin_from_generatrix(const MapState& f, double c, int kmax) {
    if (kmax > f.degree() - 2) {
        throw Error(ErrorCode::OutOfRange, "kmax must be <= N - 2");
    }
    const PowerSeries s = schwarzian(f.normalized());
    NeretinValues out{c, {}};
    for (int k = 2; k <= kmax; ++k) {
        out.values.push_back(c / 12.0 * s[k - 2]);
    }
    return out;
}

double neretin_recurrence_residual(const MapState& f, double c, int m, int n, double h) {
    if (m < 1) {
        throw Error(ErrorCode::OutOfRange, "recurrence check needs m >= 1");
    }
    const MapState g = f.normalized();
    if (n > g.degree() - 2) {
        throw Error(ErrorCode::OutOfRange, "n must be <= N - 2");
    }
    const PowerSeries v = generator_series(g, m);
    const MapState plus(g.series() + v * h);
    const MapState minus(g.series() - v * h);
    const cplx d = (neretin_from_generatrix(plus, c, n).P(n) - neretin_from_generatrix(minus, c, n).P(n)) /
                   (2.0 * h);
    const NeretinValues at = neretin_from_generatrix(g, c, n);
    cplx rhs = static_cast<double>(n + m) * at.P(n - m);
    if (n == m) {
        rhs += c / 12.0 * m * (m * m - 1.0);
    }
    return std::abs(d - rhs);
}

VectorFieldS1 witt_bracket(const VectorFieldS1& phi, const VectorFieldS1& psi) {
    require_same_grid(phi, psi);
    const VectorFieldS1 dphi = phi.derivative();
    const VectorFieldS1 dpsi = psi.derivative();
    std::vector<double> out(static_cast<std::size_t>(phi.size()));
    for (int j = 0; j < phi.size(); ++j) {
        out[static_cast<std::size_t>(j)] = phi[j] * dpsi[j] - psi[j] * dphi[j];
    }
    return VectorFieldS1(std::move(out));
}

double gelfand_fuks(const VectorFieldS1& phi, const VectorFieldS1& psi) {
    require_same_grid(phi, psi);
    const VectorFieldS1 d1 = phi.derivative(1);
    const VectorFieldS1 d3 = phi.derivative(3);
    double acc = 0.0;
    for (int j = 0; j < phi.size(); ++j) {
        acc += (d1[j] + d3[j]) * psi[j];
    }
    return -(kTwoPi / phi.size()) * acc / (4.0 * kPi);
}

CentralElement vir_bracket(const CentralElement& x, const CentralElement& y) {
    if (x.charge != y.charge) {
        throw Error(ErrorCode::ChargeMismatch, "brackets need a common central charge");
    }
    return {witt_bracket(x.field, y.field), x.charge / 12.0 * gelfand_fuks(x.field, y.field), x.charge};
}

double jacobi_residual(const CentralElement& x, const CentralElement& y, const CentralElement& z) {
    const CentralElement a = vir_bracket(vir_bracket(x, y), z);
    const CentralElement b = vir_bracket(vir_bracket(y, z), x);
    const CentralElement c = vir_bracket(vir_bracket(z, x), y);
    double field = 0.0;
    for (int j = 0; j < a.field.size(); ++j) {
        field = std::max(field, std::abs(a.field[j] + b.field[j] + c.field[j]));
    }
    return field + std::abs(a.central + b.central + c.central);
}

BasisBracket basis_bracket(int m, int n, double charge) {
    BasisBracket out{m + n, static_cast<double>(n - m), 0.0};
    if (n == -m) {
        out.central = charge / 12.0 * m * (m * static_cast<double>(m) - 1.0);
    }
    return out;
}

CircleSamples boundary_schwarzian(const MapState& f, int M) {
    const MapState g = f.normalized();
    const CircleSamples f1 = sample_map(g, M, 1);
    const CircleSamples f2 = sample_map(g, M, 2);
    const CircleSamples f3 = sample_map(g, M, 3);
    CircleSamples s(M);
    for (int j = 0; j < M; ++j) {
        const cplx b = f2[j] / f1[j];
        s[j] = f3[j] / f1[j] - 1.5 * b * b;
    }
    return s;
}

cplx omega_pairing(const MapState& f, const VectorFieldS1& nu) {
    const int M = nu.size();
    const CircleSamples s = boundary_schwarzian(f, M);
    CircleSamples g(M);
    for (int j = 0; j < M; ++j) {
        const cplx w = s.point(j);
        g[j] = w * w * nu[j] * s[j];
    }
    return quad_trapezoid(g);
}

} // namespace lgrowth
