#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace subspace_round::verify {

struct PropertyResult {
    std::string name;
    std::size_t trials = 0;
    std::size_t failures = 0;
    double worst = 0.0;    // largest observed violation margin (≤ 0 means satisfied)
    std::string witness;   // description of the worst case
    bool flag_only = false; // reported, never counted as a failure

    bool failed() const { return !flag_only && failures > 0; }
};

struct SweepTable {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

struct SuiteReport {
    std::string suite;
    std::vector<PropertyResult> properties;
    SweepTable sweep;

    bool passed() const;
};

struct SuiteOptions {
    std::uint64_t seed = 1;
    std::size_t trials = 0; // 0 selects each property's default count
    std::vector<double> eps_sweep;
};

SuiteReport run_linalg_suite(const SuiteOptions& options);
SuiteReport run_similarity_suite(const SuiteOptions& options);
SuiteReport run_round_suite(const SuiteOptions& options);
SuiteReport run_unravel_suite(const SuiteOptions& options);
SuiteReport run_pipeline_suite(const SuiteOptions& options);
SuiteReport run_graph_suite(const SuiteOptions& options);

const std::vector<std::string>& suite_names();
/// Throws std::invalid_argument for an unknown suite name.
SuiteReport run_suite(const std::string& name, const SuiteOptions& options);

/// Least-squares slope of log y against log x over the points with both
/// coordinates positive; NaN when fewer than two such points exist.
double log_log_slope(const std::vector<double>& x, const std::vector<double>& y);

} // namespace subspace_round::verify
