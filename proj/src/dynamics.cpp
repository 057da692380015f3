#include "lgrowth/dynamics.hpp"

#include "lgrowth/error.hpp"
#include "lgrowth/geometry.hpp"
#include "lgrowth/virasoro.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>

namespace lgrowth {

std::string to_string(Status s) {
    switch (s) {
    case Status::Completed: return "Completed";
    case Status::CuspStop: return "CuspStop";
    case Status::Error: return "Error";
    }
    return "Unknown";
}

PgRhsResult pg_rhs_with_tail(const MapState& f, int M, double eps_cusp) {
    const CircleSamples fp = sample_map(f, M, 1);
    std::vector<double> rho(static_cast<std::size_t>(M));
    for (int j = 0; j < M; ++j) {
        const double mod = std::abs(fp[j]);
        if (!(mod > eps_cusp)) {
            throw Error(ErrorCode::CuspProximity, "|f'| = " + std::to_string(mod));
        }
        rho[static_cast<std::size_t>(j)] = 1.0 / (mod * mod);
    }
    const auto h = herglotz_extend_with_tail(CircleSamples::from_real(rho), f.degree());
    PowerSeries zfp = shift_up(derivative(f.series()), 1);
    return {multiply(zfp, h.p), h.tail_fraction};
}

PowerSeries pg_rhs(const MapState& f, int M, double eps_cusp) {
    return pg_rhs_with_tail(f, M, eps_cusp).fdot;
}

double pg_residual(const MapState& f, const PowerSeries& fdot, int M) {
    const CircleSamples fd = synthesize(fdot, M);
    const CircleSamples fp = synthesize(derivative(f.series()), M);
    double worst = 0.0;
    for (int j = 0; j < M; ++j) {
        const cplx zfp = fp.point(j) * fp[j];
        worst = std::max(worst, std::abs((fd[j] * std::conj(zfp)).real() - 1.0));
    }
    return worst;
}

PowerSeries lk_rhs(const MapState& f, const VectorFieldS1& nu, double p0) {
    if (!(p0 > 0.0)) {
        throw Error(ErrorCode::NonHerglotzDriver, "p0 = " + std::to_string(p0) + " is not positive");
    }
    const PowerSeries p = lk_driver(nu, p0, f.degree());
    const CircleSamples pb = synthesize(p, nu.size());
    double min_re = pb[0].real();
    for (int j = 1; j < pb.size(); ++j) {
        min_re = std::min(min_re, pb[j].real());
    }
    // Re p >= 0 on the circle with p0 > 0 already gives Re p > 0 inside the
    // disk, so only a genuinely negative boundary value is rejected.
    if (!(min_re >= -kHerglotzTolerance * p0)) {
        std::ostringstream msg;
        msg << "min Re p = " << min_re << " on the circle";
        throw Error(ErrorCode::NonHerglotzDriver, msg.str());
    }
    return multiply(shift_up(derivative(f.series()), 1), p);
}

MapState step(const MapState& f, double dt, const RhsFn& rhs) {
    if (dt == 0.0) {
        return f;
    }
    const double t = f.t();
    const PowerSeries& y = f.series();
    const PowerSeries k1 = rhs(f);
    const PowerSeries k2 = rhs(MapState(y + k1 * (0.5 * dt), t + 0.5 * dt));
    const PowerSeries k3 = rhs(MapState(y + k2 * (0.5 * dt), t + 0.5 * dt));
    const PowerSeries k4 = rhs(MapState(y + k3 * dt, t + dt));
    PowerSeries next = y + (k1 + (k2 + k3) * 2.0 + k4) * (dt / 6.0);
    return MapState::renormalized(std::move(next), t + dt);
}

RhsFn make_rhs(const Driver& driver, int M, double eps_cusp) {
    if (driver.kind == Driver::Kind::LaplacianGrowth) {
        return [M, eps_cusp](const MapState& f) { return pg_rhs(f, M, eps_cusp); };
    }
    return [driver, M](const MapState& f) {
        const double t = f.t();
        const VectorFieldS1 nu =
            VectorFieldS1::from_function(M, [&](double theta) { return driver.nu(theta, t); });
        return lk_rhs(f, nu, driver.p0(t));
    };
}

int Scenario::grid() const {
    return M > 0 ? M : default_grid_size(degree());
}

void Scenario::validate() const {
    if (!(dt > 0.0)) {
        throw Error(ErrorCode::InvalidScenario, "dt must be positive (backward evolution is not supported)");
    }
    if (!(t_end > initial.t())) {
        throw Error(ErrorCode::InvalidScenario, "t_end must exceed the initial time");
    }
    if (output_stride < 1) {
        throw Error(ErrorCode::InvalidScenario, "output stride must be >= 1");
    }
    if (max_steps < 1) {
        throw Error(ErrorCode::InvalidScenario, "max_steps must be >= 1");
    }
    if (!(cusp_threshold > 0.0)) {
        throw Error(ErrorCode::InvalidScenario, "cusp threshold must be positive");
    }
    if (fd_h < 0.0) {
        throw Error(ErrorCode::InvalidScenario, "fd_h must be >= 0");
    }
    if (driver.kind == Driver::Kind::Custom && (!driver.nu || !driver.p0)) {
        throw Error(ErrorCode::InvalidScenario, "custom driver needs nu and p0");
    }
    try {
        require_grid(grid(), degree());
    } catch (const Error& e) {
        throw Error(ErrorCode::InvalidScenario, e.what());
    }
}

std::optional<std::size_t> Trajectory::index_of(double t) const {
    if (states.empty()) {
        return std::nullopt;
    }
    const double tol = 1e-9 * (dt > 0.0 ? dt : 1.0);
    const auto it = std::lower_bound(states.begin(), states.end(), t - tol,
                                     [](const MapState& s, double v) { return s.t() < v; });
    if (it != states.end() && std::abs(it->t() - t) <= tol) {
        return static_cast<std::size_t>(it - states.begin());
    }
    return std::nullopt;
}

namespace {

double map_tail_fraction(const PowerSeries& s) {
    double total = 0.0;
    double tail = 0.0;
    for (int k = 0; k <= s.degree(); ++k) {
        const double e = std::norm(s[k]);
        total += e;
        if (k > s.degree() - 4) {
            tail += e;
        }
    }
    return total > 0.0 ? tail / total : 0.0;
}

// Central difference (optionally Richardson) on precomputed values F[i] at
// uniformly spaced steps; NaN where the stencil leaves the data.
double stencil_rate(const std::vector<double>& F, std::size_t i, std::size_t w, double h, bool richardson) {
    if (i < w || i + w >= F.size()) {
        return std::numeric_limits<double>::quiet_NaN();
    }
    const double d1 = (F[i + w] - F[i - w]) / (2.0 * h);
    if (!richardson || i < 2 * w || i + 2 * w >= F.size()) {
        return d1;
    }
    const double d2 = (F[i + 2 * w] - F[i - 2 * w]) / (4.0 * h);
    return (4.0 * d1 - d2) / 3.0;
}

OutputRecord make_record(const MapState& f, const Scenario& s, int M) {
    OutputRecord rec{f, make_action_report(f, M, s.cusp_threshold), 0.0, {}, {}, 0.0, 0.0, std::nullopt};
    rec.area = area(f);
    const auto moments = richardson_moments(f, 2, M);
    rec.M1 = moments[0];
    rec.M2 = moments[1];
    rec.min_abs_fprime = cusp_indicator(f, M);
    rec.pg_residual = pg_residual(f, pg_rhs(f, M, s.cusp_threshold), M);
    rec.report.residuals["pg_residual"] = rec.pg_residual;
    if (s.driver.kind == Driver::Kind::Custom) {
        const double t = f.t();
        const VectorFieldS1 nu =
            VectorFieldS1::from_function(M, [&](double theta) { return s.driver.nu(theta, t); });
        rec.conjecture_rhs = rec.report.curv_sq_integral + omega_pairing(f, nu).real();
    }
    return rec;
}

} // namespace

Trajectory run(const Scenario& s) {
    s.validate();
    const int M = s.grid();
    const double t0 = s.initial.t();
    const long n_steps = std::max(1L, static_cast<long>(std::ceil((s.t_end - t0) / s.dt - 1e-9)));

    Trajectory traj;
    traj.dt = s.dt;
    traj.states.reserve(static_cast<std::size_t>(std::min(n_steps, s.max_steps)) + 1);
    traj.states.push_back(s.initial);

    const RhsFn rhs = make_rhs(s.driver, M, s.cusp_threshold);
    auto record = [&](const MapState& f) { traj.outputs.push_back(make_record(f, s, M)); };

    try {
        record(s.initial);
        for (long i = 0; i < n_steps; ++i) {
            if (i >= s.max_steps) {
                traj.status = Status::Error;
                traj.message = "max_steps reached before t_end";
                break;
            }
            const MapState& f = traj.states.back();
            if (cusp_indicator(f, M) <= s.cusp_threshold) {
                traj.status = Status::CuspStop;
                traj.message = "min |f'| fell below the cusp threshold at t = " + std::to_string(f.t());
                break;
            }
            if (s.driver.kind == Driver::Kind::LaplacianGrowth) {
                traj.max_data_tail =
                    std::max(traj.max_data_tail, pg_rhs_with_tail(f, M, s.cusp_threshold).data_tail);
            }
            // Step times are t0 + i dt exactly; the last step lands on t_end.
            const double t_next = (i + 1 == n_steps) ? s.t_end : t0 + static_cast<double>(i + 1) * s.dt;
            MapState next = step(f, t_next - f.t(), rhs).with_time(t_next);
            traj.max_map_tail = std::max(traj.max_map_tail, map_tail_fraction(next.series()));
            traj.states.push_back(std::move(next));
            if ((i + 1) % s.output_stride == 0 || i + 1 == n_steps) {
                record(traj.states.back());
            }
        }
    } catch (const Error& e) {
        if (e.code() == ErrorCode::CuspProximity) {
            traj.status = Status::CuspStop;
        } else {
            traj.status = Status::Error;
        }
        traj.message = e.what();
    }
    traj.spectral_underresolved = traj.max_data_tail > kSpectralTailLimit || traj.max_map_tail > kMapTailLimit;

    // Finite-difference route for d(S+E)/dt.
    std::vector<double> F;
    F.reserve(traj.states.size());
    for (const auto& st : traj.states) {
        F.push_back(log_action(st) + energy(st));
    }
    const double h = s.fd_h > 0.0 ? s.fd_h : 10.0 * s.dt;
    const auto w = static_cast<std::size_t>(std::lround(h / s.dt));
    for (auto& rec : traj.outputs) {
        if (const auto idx = traj.index_of(rec.state.t()); idx && w > 0) {
            // The shortened final step breaks uniform spacing.
            const bool uniform = *idx + 2 * w < traj.states.size() - 1 ||
                                 std::abs((s.t_end - t0) / s.dt - static_cast<double>(n_steps)) < 1e-9;
            rec.report.dSE_dt_fd =
                uniform ? stencil_rate(F, *idx, w, static_cast<double>(w) * s.dt, s.fd_richardson)
                        : std::numeric_limits<double>::quiet_NaN();
        }
    }
    return traj;
}

// --- exact quadratic solution -----------------------------------------------

namespace {

struct QuadraticState {
    double u; // a^2
    double m; // a^2 b
    double A; // a^2 + 2 b^2
};

QuadraticState solve_quadratic(double a0, double b0, double t) {
    if (!(a0 > 0.0) || !(2.0 * std::abs(b0) < a0)) {
        throw Error(ErrorCode::CuspReached, "initial quadratic map is not locally univalent on the circle");
    }
    const double m = a0 * a0 * b0;
    const double A = a0 * a0 + 2.0 * b0 * b0 + 2.0 * t;
    auto g = [&](double u) { return u * u * u - A * u * u + 2.0 * m * m; };
    // g has its local minimum at u = 2A/3; the physical branch is the largest root.
    if (!(A > 0.0) || g(2.0 * A / 3.0) > 0.0) {
        throw Error(ErrorCode::CuspReached, "no admissible quadratic solution at t = " + std::to_string(t));
    }
    double u = A;
    for (int it = 0; it < 200; ++it) {
        const double du = g(u) / (3.0 * u * u - 2.0 * A * u);
        u -= du;
        if (std::abs(du) <= 1e-17 * u) {
            break;
        }
    }
    const double a = std::sqrt(u);
    if (!(2.0 * std::abs(m / u) < a)) {
        throw Error(ErrorCode::CuspReached, "cusp reached at t = " + std::to_string(t));
    }
    return {u, m, A};
}

} // namespace

MapState exact_quadratic(double a0, double b0, double t, int degree) {
    if (t == 0.0) {
        solve_quadratic(a0, b0, t);
        return MapState::from_coeffs({a0, b0}, std::max(degree, 2), t);
    }
    const QuadraticState q = solve_quadratic(a0, b0, t);
    return MapState::from_coeffs({std::sqrt(q.u), q.m / q.u}, std::max(degree, 2), t);
}

PowerSeries exact_quadratic_rate(double a0, double b0, double t, int degree) {
    const QuadraticState q = solve_quadratic(a0, b0, t);
    // Differentiating the cubic with dA/dt = 2.
    const double du = 2.0 * q.u / (3.0 * q.u - 2.0 * q.A);
    PowerSeries out(std::max(degree, 2));
    out[1] = du / (2.0 * std::sqrt(q.u));
    out[2] = -q.m * du / (q.u * q.u);
    return out;
}

double fd_rate(const Trajectory& traj, const Functional& functional, double t, double h, bool richardson) {
    if (traj.dt > 0.0 && h < 10.0 * traj.dt * (1.0 - 1e-9)) {
        throw Error(ErrorCode::OutOfRange, "fd half-width must be at least 10 dt");
    }
    auto at = [&](double tt) {
        const auto idx = traj.index_of(tt);
        if (!idx) {
            throw Error(ErrorCode::OutOfRange, "no stored state at t = " + std::to_string(tt));
        }
        return functional(traj.states[*idx]);
    };
    const double d1 = (at(t + h) - at(t - h)) / (2.0 * h);
    if (!richardson) {
        return d1;
    }
    const double d2 = (at(t + 2.0 * h) - at(t - 2.0 * h)) / (4.0 * h);
    return (4.0 * d1 - d2) / 3.0;
}

int subordination_violations(const Trajectory& traj, int M) {
    int bad = 0;
    auto check = [&](const MapState& inner, const MapState& outer) {
        const auto outer_curve = boundary_curve(outer, M);
        for (const cplx z : boundary_curve(inner, M)) {
            if (winding_number(outer_curve, z) != 1) {
                ++bad;
            }
        }
    };
    const auto& out = traj.outputs;
    for (std::size_t i = 1; i < out.size(); ++i) {
        check(out[i - 1].state, out[i].state);
    }
    if (out.size() > 2) {
        check(out.front().state, out.back().state);
    }
    return bad;
}

} // namespace lgrowth
