#pragma once

// Run configuration: one JSON document describing a scenario, its outputs,
// and the residual tolerances reported in summary.json.

#include "lgrowth/dynamics.hpp"

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace lgrowth {

inline constexpr int kConfigSchemaVersion = 1;

struct OutputOptions {
    int stride = 1;
    std::filesystem::path directory = "out";
    bool timeseries = true;
    bool boundary = true;
    bool summary = true;
    /// A boundary snapshot every this many output records (0: first and last only).
    int boundary_every = 0;
    int boundary_points = 256;
};

struct CheckOptions {
    /// Residual name -> tolerance; names as in summary.json max_residuals/drifts.
    std::map<std::string, double> tolerances;
};

struct RunConfig {
    std::string name;
    Scenario scenario;
    OutputOptions outputs;
    CheckOptions checks;
};

/// Throws Error(Config) with a path-qualified message on schema violations.
RunConfig parse_config(std::string_view json_text);

/// Throws Error(Io) if the file cannot be read, Error(Config) if it is invalid.
RunConfig load_config(const std::filesystem::path& path);

} // namespace lgrowth
