#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "qgdshock/gas_model.hpp"
#include "qgdshock/qgd_operator.hpp"

namespace qgdshock {

struct SolverConfig {
    double mach = 2.0;
    GasSpec gas = argon();
    Model model = Model::QGD;
    int n_x = 1200;     // node count
    double h_x = 0.25;  // spacing, upstream mean free paths
    double a = 0.001;   // time-step safety factor, h_t = a h_x / max(sqrt(T)+|u|)
    double eps = 1e-3;  // convergence tolerance on max |rho^ - rho| / h_t
    std::uint64_t max_steps = 100'000'000;
    std::uint64_t residual_log_stride = 1000;
};

// Throws std::invalid_argument on Ma < 1, n_x < 5, h_x <= 0, a outside
// (0, 1], eps <= 0, or an invalid gas spec.
void validate_config(const SolverConfig& cfg);

// One residual-history sample. Only the density rate gates convergence; the
// momentum and energy rates are logged alongside it.
struct ResidualSample {
    std::uint64_t step;
    double rho_rate;
    double mom_rate;
    double energy_rate;
};

struct RunStats {
    std::uint64_t steps_taken = 0;
    bool converged = false;
    double final_residual = 0.0; // max |rho^ - rho| / h_t at the last step
    std::vector<ResidualSample> residual_history;
    double wall_time = 0.0; // seconds
};

struct ShockSolution {
    FlowField field;
    SolverConfig cfg;
    RunStats stats;
};

// Rankine-Hugoniot step initial condition: the domain spans
// [-n_x h_x/2, n_x h_x/2), nodes with x < 0 carry the upstream state and
// nodes with x >= 0 the downstream state. The outermost kBoundaryLayers
// nodes per side stay fixed for the whole run.
FlowField init_step_field(const SolverConfig& cfg);

// h_t = a h_x / max_i(sqrt(T_i) + |u_i|).
double stable_time_step(const FlowField& field, const SolverConfig& cfg);

// One forward-Euler step over the unpinned interior; returns
// max_i |rho^_i - rho_i| / h_t. Throws divergence_error on non-finite
// updates.
double advance_euler(FlowField& field, const SolverConfig& cfg, double h_t);

// Explicit march from the step initial condition until the density-rate
// criterion max |rho^ - rho| / h_t < eps holds or max_steps is exhausted.
// h_t is refreshed from the current field every step. Exhausting the budget
// is a reported outcome (converged = false), not an error; blow-ups raise
// divergence_error.
ShockSolution run_to_steady(const SolverConfig& cfg);

} // namespace qgdshock
