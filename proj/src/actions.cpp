#include "lgrowth/actions.hpp"

#include "lgrowth/error.hpp"
#include "lgrowth/virasoro.hpp"

#include <cmath>
#include <string>
#include <vector>

namespace lgrowth {

namespace {

struct BoundaryJet {
    CircleSamples fp;
    CircleSamples fpp;
    CircleSamples fppp;
};

BoundaryJet boundary_jet(const MapState& f, int M, double eps_cusp) {
    BoundaryJet jet{sample_map(f, M, 1), sample_map(f, M, 2), sample_map(f, M, 3)};
    for (int j = 0; j < M; ++j) {
        const double mod = std::abs(jet.fp[j]);
        if (!(mod > eps_cusp)) {
            throw Error(ErrorCode::CuspProximity,
                        "|f'| = " + std::to_string(mod) + " at theta = " + std::to_string(jet.fp.theta(j)));
        }
    }
    return jet;
}

// Gauss-Legendre nodes and weights on [-1, 1] by Newton iteration on P_n.
void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
    x.assign(static_cast<std::size_t>(n), 0.0);
    w.assign(static_cast<std::size_t>(n), 0.0);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double z = std::cos(kPi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0;
            double p1 = z;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            if (n == 1) {
                p1 = z;
                p0 = 1.0;
            }
            dp = n * (z * p1 - p0) / (z * z - 1.0);
            const double dz = p1 / dp;
            z -= dz;
            if (std::abs(dz) < 1e-16) {
                break;
            }
        }
        const double wi = 2.0 / ((1.0 - z * z) * dp * dp);
        x[static_cast<std::size_t>(i)] = -z;
        x[static_cast<std::size_t>(n - 1 - i)] = z;
        w[static_cast<std::size_t>(i)] = wi;
        w[static_cast<std::size_t>(n - 1 - i)] = wi;
    }
}

} // namespace

double energy(const MapState& f) {
    return kTwoPi * std::log(f.alpha());
}

double log_action(const MapState& f) {
    const PowerSeries b = prelog_derivative(f);
    double acc = 0.0;
    for (int k = 0; k <= b.degree(); ++k) {
        acc += std::norm(b[k]) / (k + 1.0);
    }
    return kPi * acc + energy(f);
}

double log_action_quadrature(const MapState& f, double eps, AnnulusQuadrature grid) {
    if (!(eps > 0.0 && eps < 1.0)) {
        throw Error(ErrorCode::OutOfRange, "annulus radius must lie in (0, 1)");
    }
    std::vector<double> x;
    std::vector<double> w;
    gauss_legendre(grid.radial, x, w);
    const PowerSeries fp = derivative(f.series());
    const PowerSeries fpp = derivative(fp);

    double total = 0.0;
    for (int i = 0; i < grid.radial; ++i) {
        const double r = 0.5 * (1.0 - eps) * x[static_cast<std::size_t>(i)] + 0.5 * (1.0 + eps);
        const double wr = 0.5 * (1.0 - eps) * w[static_cast<std::size_t>(i)];
        double ring = 0.0;
        for (int j = 0; j < grid.angular; ++j) {
            const cplx z = std::polar(r, kTwoPi * j / grid.angular);
            const cplx b = evaluate(fpp, z) / evaluate(fp, z);
            ring += std::norm(b) + 2.0 * (b / std::conj(z)).real();
        }
        total += wr * r * ring * (kTwoPi / grid.angular);
    }
    return total + energy(f);
}

double energy_rate(const MapState& f, int M, double eps_cusp) {
    const CircleSamples fp = sample_map(f, M, 1);
    CircleSamples g(M);
    for (int j = 0; j < M; ++j) {
        const double mod = std::abs(fp[j]);
        if (!(mod > eps_cusp)) {
            throw Error(ErrorCode::CuspProximity, "|f'| = " + std::to_string(mod));
        }
        g[j] = 1.0 / (mod * mod);
    }
    return quad_trapezoid(g).real();
}

ActionEnergyRate action_energy_rate(const MapState& f, int M, double eps_cusp) {
    const BoundaryJet jet = boundary_jet(f, M, eps_cusp);
    double kappa_sq = 0.0;
    double schw = 0.0;
    for (int j = 0; j < M; ++j) {
        const cplx w = jet.fp.point(j);
        const cplx b = jet.fpp[j] / jet.fp[j];
        const cplx sf = jet.fppp[j] / jet.fp[j] - 1.5 * b * b;
        const double inv_mod2 = 1.0 / std::norm(jet.fp[j]);
        const double q = (1.0 + w * b).real();
        kappa_sq += q * q * inv_mod2;
        schw += 2.0 * inv_mod2 * (w * w * sf).real();
    }
    const double h = kTwoPi / M;
    ActionEnergyRate out{};
    out.curv_sq_integral = 2.0 * kappa_sq * h;
    out.schwarzian_term = schw * h;
    out.total = out.curv_sq_integral + out.schwarzian_term;
    return out;
}

ProofIdentity proof_identity(const MapState& f, int M, double eps_cusp) {
    const BoundaryJet jet = boundary_jet(f, M, eps_cusp);
    double lhs = 0.0;
    double rhs = 0.0;
    for (int j = 0; j < M; ++j) {
        const cplx w = jet.fp.point(j);
        const cplx b = jet.fpp[j] / jet.fp[j];
        const cplx q = 1.0 + w * b;
        const cplx sf = jet.fppp[j] / jet.fp[j] - 1.5 * b * b;
        const double inv_mod2 = 1.0 / std::norm(jet.fp[j]);
        lhs += q.imag() * q.imag() * inv_mod2;
        rhs += (0.5 * q * q + w * w * sf - 0.5).real() * inv_mod2;
    }
    const double h = kTwoPi / M;
    return {lhs * h, -0.5 * rhs * h};
}

double proof_identity_residual(const MapState& f, int M, double eps_cusp) {
    return proof_identity(f, M, eps_cusp).residual();
}

ActionReport make_action_report(const MapState& f, int M, double eps_cusp) {
    ActionReport r;
    r.t = f.t();
    r.E = energy(f);
    r.S = log_action(f);
    r.dE_dt = energy_rate(f, M, eps_cusp);

    const ActionEnergyRate th = action_energy_rate(f, M, eps_cusp);
    r.dSE_dt_theorem = th.total;
    r.curv_sq_integral = th.curv_sq_integral;

    const CircleSamples fp = sample_map(f, M, 1);
    std::vector<double> nu_samples(static_cast<std::size_t>(M));
    for (int j = 0; j < M; ++j) {
        nu_samples[static_cast<std::size_t>(j)] = 2.0 / std::norm(fp[j]);
    }
    const VectorFieldS1 nu(std::move(nu_samples));
    r.dSE_dt_omega = th.curv_sq_integral + omega_pairing(f, nu).real();

    r.residuals["theorem_vs_omega"] = std::abs(r.dSE_dt_theorem - r.dSE_dt_omega);
    r.residuals["proof_identity"] = proof_identity_residual(f, M, eps_cusp);
    return r;
}

} // namespace lgrowth
