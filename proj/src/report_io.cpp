#include "lgrowth/report_io.hpp"

#include "lgrowth/error.hpp"
#include "lgrowth/geometry.hpp"

#include "json.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>

namespace lgrowth {

std::string format_double(double x) {
    if (std::isnan(x)) {
        return "nan";
    }
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

void write_timeseries(const Trajectory& traj, std::ostream& out) {
    out << "t,alpha,E,S,dE_dt,dSE_dt_theorem,dSE_dt_fd,dSE_dt_omega,curv_sq_integral,area,"
           "M1_re,M1_im,M2_re,M2_im,min_abs_fprime,pg_residual\n";
    for (const OutputRecord& r : traj.outputs) {
        const double row[] = {r.state.t(),          r.state.alpha(),         r.report.E,
                              r.report.S,           r.report.dE_dt,          r.report.dSE_dt_theorem,
                              r.report.dSE_dt_fd,   r.report.dSE_dt_omega,   r.report.curv_sq_integral,
                              r.area,               r.M1.real(),             r.M1.imag(),
                              r.M2.real(),          r.M2.imag(),             r.min_abs_fprime,
                              r.pg_residual};
        bool first = true;
        for (const double v : row) {
            out << (first ? "" : ",") << format_double(v);
            first = false;
        }
        out << '\n';
    }
}

void write_boundary(const MapState& f, int points, std::ostream& out) {
    int M = std::max(points, default_grid_size(f.degree()));
    while (!is_power_of_two(M)) {
        ++M;
    }
    const std::vector<cplx> z = boundary_curve(f, M);
    std::vector<double> kappa(static_cast<std::size_t>(M), std::numeric_limits<double>::quiet_NaN());
    try {
        const CircleSamples k = curvature(f, M);
        for (int j = 0; j < M; ++j) {
            kappa[static_cast<std::size_t>(j)] = k[j].real();
        }
    } catch (const Error&) {
        // Cusped boundary: curvature left undefined.
    }
    out << "theta,x,y,kappa\n";
    for (int j = 0; j < M; ++j) {
        const auto sj = static_cast<std::size_t>(j);
        out << format_double(kTwoPi * j / M) << ',' << format_double(z[sj].real()) << ','
            << format_double(z[sj].imag()) << ',' << format_double(kappa[sj]) << '\n';
    }
}

namespace {

bool is_circle(const MapState& f) {
    for (int k = 2; k <= f.degree(); ++k) {
        if (f.series()[k] != cplx{}) {
            return false;
        }
    }
    return true;
}

void track_max(std::map<std::string, double>& m, const std::string& key, double v) {
    if (std::isnan(v)) {
        return;
    }
    auto [it, inserted] = m.emplace(key, v);
    if (!inserted) {
        it->second = std::max(it->second, v);
    }
}

} // namespace

Summary summarize(const Trajectory& traj, const Scenario& s, const CheckOptions& checks) {
    Summary out;
    out.status = traj.status;
    out.message = traj.message;
    out.t_final = traj.t_final();
    out.steps = traj.states.size() - 1;
    out.spectral_underresolved = traj.spectral_underresolved;
    for (std::size_t i = 1; i < traj.states.size(); ++i) {
        if (!(traj.states[i].alpha() > traj.states[i - 1].alpha())) {
            out.alpha_increasing = false;
        }
    }

    const bool lg = s.driver.kind == Driver::Kind::LaplacianGrowth;
    const bool circle = lg && is_circle(s.initial);
    const double t0 = s.initial.t();
    const double a0sq = s.initial.alpha() * s.initial.alpha();
    auto& res = out.max_residuals;
    for (const OutputRecord& r : traj.outputs) {
        const ActionReport& a = r.report;
        track_max(res, "pg_residual", r.pg_residual);
        track_max(res, "theorem_vs_omega", std::abs(a.dSE_dt_theorem - a.dSE_dt_omega));
        track_max(res, "theorem_vs_fd", std::abs(a.dSE_dt_fd - a.dSE_dt_theorem));
        track_max(res, "proof_identity", a.residuals.at("proof_identity"));
        if (circle) {
            // alpha^2 = alpha_0^2 + 2 (t - t0) exactly; pi/t when alpha_0^2 = 2 t0.
            const double asq = a0sq + 2.0 * (a.t - t0);
            track_max(res, "circle_dE_dt", std::abs(a.dE_dt - kTwoPi / asq));
            track_max(res, "circle_dSE_dt", std::abs(a.dSE_dt_theorem - 2.0 * kTwoPi / asq));
        }
        if (r.conjecture_rhs) {
            track_max(res, "conjecture_i", std::abs(a.dSE_dt_fd - *r.conjecture_rhs));
        }
    }

    if (lg && !traj.outputs.empty()) {
        const OutputRecord& first = traj.outputs.front();
        const double scale1 = std::max(std::abs(first.M1), 1.0);
        const double scale2 = std::max(std::abs(first.M2), 1.0);
        for (const OutputRecord& r : traj.outputs) {
            const double dt = r.state.t() - first.state.t();
            if (dt > 0.0) {
                const double slope = (r.area - first.area) / dt;
                track_max(out.drifts, "area_slope", std::abs(slope - kTwoPi) / kTwoPi);
            }
            track_max(out.drifts, "M1", std::abs(r.M1 - first.M1) / scale1);
            track_max(out.drifts, "M2", std::abs(r.M2 - first.M2) / scale2);
        }
    }

    for (const auto& [name, tol] : checks.tolerances) {
        double value = std::numeric_limits<double>::quiet_NaN();
        if (const auto it = res.find(name); it != res.end()) {
            value = it->second;
        } else if (const auto jt = out.drifts.find(name); jt != out.drifts.end()) {
            value = jt->second;
        }
        out.checks[name] = {value, tol, value <= tol};
    }
    return out;
}

std::string summary_json(const Summary& summary) {
    using json = nlohmann::ordered_json;
    json doc;
    doc["schema_version"] = kSummarySchemaVersion;
    doc["status"] = to_string(summary.status);
    doc["message"] = summary.message;
    doc["t_final"] = summary.t_final;
    doc["steps"] = summary.steps;
    doc["spectral_underresolved"] = summary.spectral_underresolved;
    doc["alpha_increasing"] = summary.alpha_increasing;
    doc["max_residuals"] = json::object();
    for (const auto& [k, v] : summary.max_residuals) {
        doc["max_residuals"][k] = v;
    }
    doc["drifts"] = json::object();
    for (const auto& [k, v] : summary.drifts) {
        doc["drifts"][k] = v;
    }
    doc["checks"] = json::object();
    for (const auto& [k, c] : summary.checks) {
        doc["checks"][k] = {{"value", c.value}, {"tolerance", c.tolerance}, {"passed", c.passed}};
    }
    return doc.dump(2) + "\n";
}

namespace {

std::ofstream open_out(const std::filesystem::path& p) {
    std::ofstream out(p, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw Error(ErrorCode::Io, "cannot write " + p.string());
    }
    return out;
}

void finish(std::ofstream& out, const std::filesystem::path& p) {
    out.flush();
    if (!out) {
        throw Error(ErrorCode::Io, "write failed for " + p.string());
    }
}

} // namespace

void write_outputs(const Trajectory& traj, const RunConfig& cfg, const std::filesystem::path& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) {
        throw Error(ErrorCode::Io, "cannot create " + dir.string() + ": " + ec.message());
    }
    const OutputOptions& o = cfg.outputs;
    if (o.timeseries) {
        const auto p = dir / "timeseries.csv";
        auto out = open_out(p);
        write_timeseries(traj, out);
        finish(out, p);
    }
    if (o.boundary && !traj.outputs.empty()) {
        const std::size_t n = traj.outputs.size();
        for (std::size_t i = 0; i < n; ++i) {
            const bool take = i == 0 || i + 1 == n ||
                              (o.boundary_every > 0 && i % static_cast<std::size_t>(o.boundary_every) == 0);
            if (!take) {
                continue;
            }
            char name[48];
            std::snprintf(name, sizeof name, "boundary_%04zu.csv", i);
            const auto p = dir / name;
            auto out = open_out(p);
            write_boundary(traj.outputs[i].state, o.boundary_points, out);
            finish(out, p);
        }
    }
    if (o.summary) {
        const auto p = dir / "summary.json";
        auto out = open_out(p);
        out << summary_json(summarize(traj, cfg.scenario, cfg.checks));
        finish(out, p);
    }
}

} // namespace lgrowth
