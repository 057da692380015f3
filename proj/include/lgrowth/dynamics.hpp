#pragma once

// Time evolution of the map f(z, t): the Polubarinova-Galin flow written as a
// Loewner-Kufarev equation fdot = z f' p(z, t), a generic Loewner-Kufarev flow
// with a user driver, and the classical RK4 integrator that advances either.

#include "lgrowth/actions.hpp"
#include "lgrowth/circlegrid.hpp"
#include "lgrowth/map_state.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace lgrowth {

/// fdot = z f' p with p the Herglotz extension of 1/|f'|^2.
/// Throws CuspProximity if min |f'| <= eps_cusp.
PowerSeries pg_rhs(const MapState& f, int M, double eps_cusp = kCuspThreshold);

struct PgRhsResult {
    PowerSeries fdot;
    /// Spectral tail of 1/|f'|^2 beyond mode N.
    double data_tail;
};
PgRhsResult pg_rhs_with_tail(const MapState& f, int M, double eps_cusp = kCuspThreshold);

/// max_theta |Re(fdot conj(z f')) - 1| on the grid.
double pg_residual(const MapState& f, const PowerSeries& fdot, int M);

inline constexpr double kHerglotzTolerance = 1e-12;

/// fdot = z f' p with p = lk_driver(nu, p0). Throws NonHerglotzDriver when
/// p0 <= 0 or min Re p < -kHerglotzTolerance p0 on the grid of nu.
PowerSeries lk_rhs(const MapState& f, const VectorFieldS1& nu, double p0);

using RhsFn = std::function<PowerSeries(const MapState&)>;

/// One classical RK4 step; stage states carry their stage times. The result
/// has c_0 cleared and its phase re-gauged so that c_1 > 0.
MapState step(const MapState& f, double dt, const RhsFn& rhs);

/// Driver of the flow: Laplacian growth, or a user Loewner-Kufarev driver
/// nu(theta, t) with p0(t).
struct Driver {
    enum class Kind { LaplacianGrowth, Custom };
    Kind kind = Kind::LaplacianGrowth;
    std::function<double(double theta, double t)> nu;
    std::function<double(double t)> p0;

    static Driver laplacian_growth() { return {}; }
    static Driver custom(std::function<double(double, double)> nu, std::function<double(double)> p0) {
        return {Kind::Custom, std::move(nu), std::move(p0)};
    }
};

/// rhs for the driver on an M grid.
RhsFn make_rhs(const Driver& driver, int M, double eps_cusp = kCuspThreshold);

struct Scenario {
    MapState initial{PowerSeries::monomial(16, 1)};
    int M = 0;           ///< 0 selects default_grid_size(N)
    double dt = 1e-3;
    double t_end = 1.0;
    Driver driver;
    double cusp_threshold = kCuspThreshold;
    long max_steps = 10'000'000;
    int output_stride = 1;
    /// Finite-difference half-width for dSE_dt_fd; 0 selects 10 dt.
    double fd_h = 0.0;
    bool fd_richardson = true;

    int degree() const { return initial.degree(); }
    int grid() const;
    /// Throws InvalidScenario.
    void validate() const;
};

enum class Status { Completed, CuspStop, Error };
std::string to_string(Status s);

struct OutputRecord {
    MapState state;
    ActionReport report;
    double area = 0.0;
    cplx M1{};
    cplx M2{};
    double min_abs_fprime = 0.0;
    double pg_residual = 0.0;
    /// 2 int kappa^2 + Re (Omega, nu) with the driver's nu (custom drivers only).
    std::optional<double> conjecture_rhs;
};

struct Trajectory {
    std::vector<MapState> states; ///< every accepted step, initial state first
    std::vector<OutputRecord> outputs;
    Status status = Status::Completed;
    std::string message;
    double dt = 0.0;
    double max_data_tail = 0.0;
    double max_map_tail = 0.0;
    bool spectral_underresolved = false;

    double t_final() const { return states.back().t(); }
    /// Index of the state at time t (within 1e-9 dt), if any.
    std::optional<std::size_t> index_of(double t) const;
};

/// Integrates until t_end, a cusp stop, or an error; deterministic.
Trajectory run(const Scenario& s);

/// Tail energy of the map series beyond degree N - 4 above this fraction
/// flags the run as spectrally under-resolved.
inline constexpr double kMapTailLimit = 1e-8;

/// Exact Laplacian growth from a0 z + b0 z^2 at time t: a^2 b is conserved and
/// a^2 + 2 b^2 = a0^2 + 2 b0^2 + 2 t; a^2 is the largest root of the cubic
/// u^3 - A u^2 + 2 m^2 = 0. Throws CuspReached once 2|b| >= a.
MapState exact_quadratic(double a0, double b0, double t, int degree = 2);

/// Analytic time derivative of exact_quadratic().
PowerSeries exact_quadratic_rate(double a0, double b0, double t, int degree = 2);

using Functional = std::function<double(const MapState&)>;

/// (F(t+h) - F(t-h)) / 2h along stored states, or the Richardson combination
/// (4 D(h) - D(2h)) / 3. Throws OutOfRange if t, t +- h (t +- 2h) are not
/// stored steps or h < 10 dt.
double fd_rate(const Trajectory& traj, const Functional& functional, double t, double h,
               bool richardson = false);

/// Number of sampled boundary points of f(., s) that are not strictly inside
/// f(S^1, t), over consecutive output pairs and the first/last pair.
int subordination_violations(const Trajectory& traj, int M);

} // namespace lgrowth
