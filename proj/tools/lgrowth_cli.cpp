// lgrowth: batch runs of Laplacian growth scenarios and identity checks.
//
//   lgrowth run <config.json>... [--out DIR] [--stride K] [--jobs N]
//   lgrowth check <suite|all>
//
// Exit codes: 0 success, 1 config/IO error or unknown suite, 2 cusp stop,
// 3 integration error (for example an inadmissible driver), 4 failed check.

#include "lgrowth/checks.hpp"
#include "lgrowth/config.hpp"
#include "lgrowth/error.hpp"
#include "lgrowth/report_io.hpp"

#include "CLI11.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace {

using namespace lgrowth;

struct RunJob {
    std::string config;
    std::filesystem::path out;
    int exit_code = 0;
    std::string log;
};

void execute(RunJob& job, int stride_override, const std::optional<std::filesystem::path>& out_override,
             bool several) {
    try {
        RunConfig cfg = load_config(job.config);
        if (stride_override > 0) {
            cfg.outputs.stride = stride_override;
            cfg.scenario.output_stride = stride_override;
        }
        std::filesystem::path dir = cfg.outputs.directory;
        if (out_override) {
            dir = several ? *out_override / std::filesystem::path(job.config).stem() : *out_override;
        }
        job.out = dir;
        const Trajectory traj = run(cfg.scenario);
        write_outputs(traj, cfg, dir);
        job.log = job.config + ": " + to_string(traj.status) + " at t = " + format_double(traj.t_final()) +
                  (traj.message.empty() ? "" : " (" + traj.message + ")") + " -> " + dir.string();
        switch (traj.status) {
        case Status::Completed: job.exit_code = 0; break;
        case Status::CuspStop: job.exit_code = 2; break;
        case Status::Error: job.exit_code = 3; break;
        }
    } catch (const Error& e) {
        job.log = job.config + ": " + e.what();
        job.exit_code = (e.code() == ErrorCode::Config || e.code() == ErrorCode::Io) ? 1 : 3;
    }
}

int cmd_run(const std::vector<std::string>& configs, int stride, const std::optional<std::filesystem::path>& out,
            int jobs) {
    std::vector<RunJob> work;
    for (const auto& c : configs) {
        work.push_back({c, {}, 0, {}});
    }
    const bool several = work.size() > 1;
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < work.size(); i = next++) {
            execute(work[i], stride, out, several);
        }
    };
    const int n = std::clamp(jobs, 1, static_cast<int>(work.size()));
    std::vector<std::thread> pool;
    for (int i = 1; i < n; ++i) {
        pool.emplace_back(worker);
    }
    worker();
    for (auto& t : pool) {
        t.join();
    }

    int code = 0;
    for (const RunJob& j : work) {
        (j.exit_code == 0 ? std::cout : std::cerr) << j.log << '\n';
        // Precedence: config/IO errors, then cusp stops, then other failures.
        auto rank = [](int c) { return c == 1 ? 3 : c == 2 ? 2 : c == 3 ? 1 : 0; };
        if (rank(j.exit_code) > rank(code)) {
            code = j.exit_code;
        }
    }
    return code;
}

int cmd_check(const std::string& suite) {
    std::vector<SuiteResult> results;
    try {
        results = run_check(suite);
    } catch (const Error& e) {
        std::cerr << e.what() << "\navailable suites: all";
        for (const auto& s : suite_names()) {
            std::cerr << ' ' << s;
        }
        std::cerr << '\n';
        return 1;
    }
    bool ok = true;
    for (const SuiteResult& r : results) {
        std::cout << format_table(r);
        ok = ok && r.passed();
    }
    std::cout << (ok ? "all checks passed\n" : "some checks FAILED\n");
    return ok ? 0 : 4;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Laplacian growth simulator and identity checks"};
    app.require_subcommand(1);

    std::optional<std::filesystem::path> out;
    int stride = 0;
    int jobs = 1;
    std::vector<std::string> configs;
    std::string suite;

    auto* run = app.add_subcommand("run", "Integrate one or more scenario configs");
    run->add_option("configs", configs, "Config JSON files")->required()->check(CLI::ExistingFile);
    run->add_option("--out", out, "Output directory (per-config subdirectories when several)");
    run->add_option("--stride", stride, "Output stride in steps (overrides the config)")->check(CLI::PositiveNumber);
    run->add_option("--jobs", jobs, "Worker threads for several configs")->check(CLI::PositiveNumber);

    auto* check = app.add_subcommand("check", "Run an identity suite");
    check->add_option("suite", suite, "theorem1 | corollary1 | virasoro | neretin | proof-identity | conjecture-i | all")
        ->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }
    if (*run) {
        return cmd_run(configs, stride, out, jobs);
    }
    return cmd_check(suite);
}
