#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "qgdshock/time_marcher.hpp"

namespace qgdshock::cli {

// Process exit statuses. solve reports the run outcome; sweep and grid-study
// report the worst member outcome; compare uses kToleranceExceeded when the
// --tolerance gate trips.
inline constexpr int kOk = 0;
inline constexpr int kUsageError = 1;
inline constexpr int kNotConverged = 2;
inline constexpr int kDiverged = 3;
inline constexpr int kToleranceExceeded = 4;

// Option values gathered from the command line; unset fields fall back to
// the config file and then to the built-in defaults.
struct ConfigOverrides {
    std::optional<std::string> gas;
    std::optional<double> mach;
    std::optional<std::string> model;
    std::optional<int> n_x;
    std::optional<double> h_x;
    std::optional<double> a;
    std::optional<double> eps;
    std::optional<double> max_steps; // double so 1e7 notation parses
    std::optional<std::uint64_t> log_stride;
};

// defaults < config file < command-line flags.
SolverConfig resolve_config(const std::optional<std::filesystem::path>& config_file,
                            const ConfigOverrides& overrides);

struct CommandContext {
    std::filesystem::path out_dir = ".";
    std::optional<std::filesystem::path> config_file;
    ConfigOverrides overrides;
};

int run_solve(const CommandContext& ctx);

struct SweepOptions {
    std::vector<double> mach_list;
    std::vector<std::string> models = {"qgd", "ns"};
    unsigned jobs = 1;
};
int run_sweep(const CommandContext& ctx, const SweepOptions& opts);

struct GridStudyOptions {
    int levels = 2;
};
int run_grid_study(const CommandContext& ctx, const GridStudyOptions& opts);

struct CompareOptions {
    std::filesystem::path sweep_csv;
    std::filesystem::path reference_csv;
    std::optional<double> tolerance;
};
int run_compare(const CommandContext& ctx, const CompareOptions& opts);

} // namespace qgdshock::cli
