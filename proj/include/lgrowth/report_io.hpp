#pragma once

// Run reports: timeseries.csv, boundary_XXXX.csv snapshots and summary.json.
//
// timeseries.csv columns, in order:
//   t, alpha, E, S, dE_dt, dSE_dt_theorem, dSE_dt_fd, dSE_dt_omega,
//   curv_sq_integral, area, M1_re, M1_im, M2_re, M2_im, min_abs_fprime,
//   pg_residual
// boundary_XXXX.csv columns: theta, x, y, kappa (XXXX is the output index).
// Floats are written with 17 significant digits; NaN is written as "nan".

#include "lgrowth/config.hpp"
#include "lgrowth/dynamics.hpp"

#include <filesystem>
#include <map>
#include <ostream>
#include <string>

namespace lgrowth {

inline constexpr int kSummarySchemaVersion = 1;

/// Shortest form with 17 significant digits ("%.17g" semantics).
std::string format_double(double x);

void write_timeseries(const Trajectory& traj, std::ostream& out);
void write_boundary(const MapState& f, int points, std::ostream& out);

struct CheckOutcome {
    double value;
    double tolerance;
    bool passed;
};

struct Summary {
    Status status = Status::Completed;
    std::string message;
    double t_final = 0.0;
    std::size_t steps = 0;
    bool spectral_underresolved = false;
    bool alpha_increasing = true;
    /// pg_residual, theorem_vs_omega, theorem_vs_fd, proof_identity, and for
    /// circular initial data circle_dE_dt / circle_dSE_dt; conjecture_i for
    /// custom drivers.
    std::map<std::string, double> max_residuals;
    /// Laplacian growth only: area_slope (relative to 2 pi), M1, M2.
    std::map<std::string, double> drifts;
    std::map<std::string, CheckOutcome> checks;
};

Summary summarize(const Trajectory& traj, const Scenario& s, const CheckOptions& checks = {});
std::string summary_json(const Summary& summary);

/// Writes the enabled formats into `dir` (created if missing). Throws Error(Io).
void write_outputs(const Trajectory& traj, const RunConfig& cfg, const std::filesystem::path& dir);

} // namespace lgrowth
