#include "doctest.h"

#include "lgrowth/config.hpp"
#include "lgrowth/error.hpp"

#include "json.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

using namespace lgrowth;
namespace fs = std::filesystem;

namespace {

struct Result {
    int code;
    std::string output;
};

fs::path scratch(const std::string& name) {
    const fs::path p = fs::temp_directory_path() / ("lgrowth_test_cli_" + std::to_string(::getpid())) / name;
    fs::remove_all(p);
    fs::create_directories(p.parent_path());
    return p;
}

Result cli(const std::string& args) {
    const fs::path log = scratch("log.txt");
    const std::string cmd = std::string("\"") + LGROWTH_CLI + "\" " + args + " > \"" + log.string() + "\" 2>&1";
    const int status = std::system(cmd.c_str());
    std::ifstream in(log);
    std::stringstream ss;
    ss << in.rdbuf();
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, ss.str()};
}

std::string example(const std::string& name) {
    return std::string("\"") + LGROWTH_EXAMPLES + "/" + name + "\"";
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

nlohmann::json summary(const fs::path& dir) {
    return nlohmann::json::parse(slurp(dir / "summary.json"));
}

} // namespace

TEST_CASE("run circle example") {
    const fs::path out = scratch("circle");
    const Result r = cli("run " + example("circle.json") + " --out \"" + out.string() + "\"");
    REQUIRE(r.code == 0);
    const nlohmann::json s = summary(out);
    CHECK(s["status"] == "Completed");
    CHECK(s["max_residuals"]["circle_dE_dt"].get<double>() < 1e-6);
    CHECK(s["max_residuals"]["circle_dSE_dt"].get<double>() < 1e-6);
    CHECK(s["alpha_increasing"] == true);
    CHECK(fs::exists(out / "timeseries.csv"));
    CHECK(fs::exists(out / "boundary_0000.csv"));

    std::ifstream ts(out / "timeseries.csv");
    std::string header;
    std::getline(ts, header);
    CHECK(header ==
          "t,alpha,E,S,dE_dt,dSE_dt_theorem,dSE_dt_fd,dSE_dt_omega,curv_sq_integral,area,M1_re,M1_im,M2_re,M2_im,"
          "min_abs_fprime,pg_residual");
}

TEST_CASE("run cardioid example: conserved quantities") {
    const fs::path out = scratch("cardioid");
    const Result r = cli("run " + example("cardioid.json") + " --out \"" + out.string() + "\"");
    REQUIRE(r.code == 0);
    const nlohmann::json s = summary(out);
    CHECK(s["drifts"]["area_slope"].get<double>() < 1e-6);
    CHECK(s["drifts"]["M1"].get<double>() < 1e-6);
    CHECK(s["drifts"]["M2"].get<double>() < 1e-6);
    CHECK(s["max_residuals"]["theorem_vs_fd"].get<double>() < 1e-5);
    for (const auto& [name, c] : s["checks"].items()) {
        CHECK_MESSAGE(c["passed"] == true, name);
    }
}

TEST_CASE("repeated runs are byte-identical") {
    const fs::path a = scratch("repeat_a");
    const fs::path b = scratch("repeat_b");
    REQUIRE(cli("run " + example("quadratic.json") + " --out \"" + a.string() + "\"").code == 0);
    REQUIRE(cli("run " + example("quadratic.json") + " --out \"" + b.string() + "\"").code == 0);
    CHECK(slurp(a / "timeseries.csv") == slurp(b / "timeseries.csv"));
    CHECK(slurp(a / "summary.json") == slurp(b / "summary.json"));
}

TEST_CASE("several configs with --out go into subdirectories") {
    const fs::path out = scratch("multi");
    const Result r =
        cli("run " + example("circle.json") + " " + example("quadratic.json") + " --jobs 2 --out \"" + out.string() + "\"");
    REQUIRE(r.code == 0);
    CHECK(fs::exists(out / "circle" / "summary.json"));
    CHECK(fs::exists(out / "quadratic" / "summary.json"));
}

TEST_CASE("backward time step is a config error") {
    const fs::path dir = scratch("bad");
    fs::create_directories(dir);
    const fs::path cfg = dir / "bad.json";
    std::ofstream(cfg) << R"({"schema_version": 1, "scenario": {"initial": [[1, 0]], "N": 8, "dt": -1e-3, "t_end": 0.1}})";
    const Result r = cli("run \"" + cfg.string() + "\" --out \"" + (dir / "out").string() + "\"");
    CHECK(r.code == 1);
    CHECK(r.output.find("scenario.dt") != std::string::npos);
}

TEST_CASE("missing config file") {
    const Result r = cli("run /nonexistent/lgrowth.json");
    CHECK(r.code == 1);
}

TEST_CASE("check suites") {
    for (const char* suite : {"theorem1", "virasoro", "neretin", "corollary1", "proof-identity"}) {
        const Result r = cli(std::string("check ") + suite);
        CHECK_MESSAGE(r.code == 0, suite);
        CHECK(r.output.find("FAIL") == std::string::npos);
    }
    const Result bad = cli("check no-such-suite");
    CHECK(bad.code == 1);
    CHECK(bad.output.find("no-such-suite") != std::string::npos);
}

TEST_CASE("parse_config: defaults and fields") {
    const RunConfig c = parse_config(R"({
        "schema_version": 1,
        "name": "demo",
        "scenario": {"initial": [[1.2, 0], [0.1, 0.05]], "t0": 0.25, "N": 24, "dt": 2e-3, "t_end": 0.5,
                     "driver": {"kind": "custom", "nu_cos": [1.0, 0.5], "nu_sin": [0.0, 0.25], "p0": 2.0},
                     "stops": {"cusp_threshold": 1e-4, "max_steps": 1000},
                     "fd": {"h": 0.04, "richardson": false}},
        "outputs": {"stride": 5, "formats": ["summary"], "boundary_points": 64},
        "checks": {"tolerances": {"pg_residual": 1e-9}}
    })");
    CHECK(c.name == "demo");
    CHECK(c.scenario.initial.degree() == 24);
    CHECK(c.scenario.initial.t() == 0.25);
    CHECK(c.scenario.initial.alpha() == 1.2);
    CHECK(c.scenario.initial.series()[2] == cplx(0.1, 0.05));
    CHECK(c.scenario.dt == 2e-3);
    CHECK(c.scenario.driver.kind == Driver::Kind::Custom);
    CHECK(c.scenario.driver.p0(0.0) == 2.0);
    CHECK(c.scenario.driver.nu(0.0, 0.0) == doctest::Approx(1.5));
    CHECK(c.scenario.cusp_threshold == 1e-4);
    CHECK(c.scenario.max_steps == 1000);
    CHECK(c.scenario.fd_h == 0.04);
    CHECK_FALSE(c.scenario.fd_richardson);
    CHECK(c.scenario.output_stride == 5);
    CHECK(c.outputs.summary);
    CHECK_FALSE(c.outputs.timeseries);
    CHECK_FALSE(c.outputs.boundary);
    CHECK(c.outputs.boundary_points == 64);
    CHECK(c.checks.tolerances.at("pg_residual") == 1e-9);

    const RunConfig d = parse_config(R"({"schema_version": 1, "scenario": {"initial": [[1, 0]], "N": 8, "dt": 0.01, "t_end": 0.1}})");
    CHECK(d.scenario.driver.kind == Driver::Kind::LaplacianGrowth);
    CHECK(d.scenario.initial.t() == 0.0);
    CHECK(d.outputs.timeseries);
    CHECK(d.outputs.directory == "out");
}

TEST_CASE("parse_config: rejections") {
    const char* bad[] = {
        "not json",
        R"({"schema_version": 2, "scenario": {"initial": [[1, 0]], "N": 8, "dt": 0.01, "t_end": 0.1}})",
        R"({"schema_version": 1, "scenario": {"initial": [[1, 0]], "N": 8, "dt": 0.0, "t_end": 0.1}})",
        R"({"schema_version": 1, "scenario": {"initial": [[1, 0]], "N": 8, "dt": 0.01, "t_end": 0.1, "extra": 1}})",
        R"({"schema_version": 1, "scenario": {"initial": [[-1, 0]], "N": 8, "dt": 0.01, "t_end": 0.1}})",
        R"({"schema_version": 1, "scenario": {"initial": [[1, 0]], "N": 8, "M": 16, "dt": 0.01, "t_end": 0.1}})",
        R"({"schema_version": 1, "scenario": {"initial": [[1, 0]], "N": 8, "dt": 0.01, "t_end": 0.1, "driver": {"kind": "magic"}}})",
        R"({"schema_version": 1, "scenario": {"initial": [[1, 0]], "N": 8, "dt": 0.01, "t_end": 0.1}, "outputs": {"formats": ["pdf"]}})",
    };
    for (const char* text : bad) {
        CHECK_THROWS_AS(parse_config(text), Error);
    }
    try {
        parse_config(bad[2]);
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::Config);
        CHECK(std::string(e.what()).find("scenario.dt") != std::string::npos);
    }
    CHECK_THROWS_AS(load_config("/nonexistent/lgrowth.json"), Error);
}
