#pragma once

// Named identity suites run by `lgrowth check <suite>`.

#include "lgrowth/dynamics.hpp"

#include <string>
#include <vector>

namespace lgrowth {

struct CheckRow {
    std::string name;
    double value;
    double tolerance;
    bool report_only = false;
    /// NaN values fail.
    bool passed() const { return value <= tolerance; }
};

struct SuiteResult {
    std::string suite;
    std::vector<CheckRow> rows;
    double seconds = 0.0;
    /// Report-only rows never fail a suite.
    bool passed() const;
};

/// theorem1, corollary1, virasoro, neretin, proof-identity, conjecture-i.
const std::vector<std::string>& suite_names();

/// Runs one suite, or every suite for "all". Throws Error(Config) for an
/// unknown name.
std::vector<SuiteResult> run_check(const std::string& suite);

std::string format_table(const SuiteResult& r);

/// Circle alpha = sqrt(2t) from t = 0.5 to 1 (N = 16, M = 128, dt = 1e-3).
Scenario circle_scenario();
/// z + 0.3 z^2 on [0, 0.4] (N = 32, dt = 1e-4, output every 50 steps).
Scenario cardioid_scenario();
/// z, z + 0.3 z^2, z + 0.2 z^2 + 0.05 z^3 at degree `degree`.
std::vector<MapState> test_maps(int degree = 16);

} // namespace lgrowth
