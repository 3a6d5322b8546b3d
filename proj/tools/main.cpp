#include <exception>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "cli_commands.hpp"
#include "qgdshock/version.hpp"

namespace {

using namespace qgdshock;

void add_common_options(CLI::App& cmd, cli::CommandContext& ctx) {
    cmd.add_option("--gas", ctx.overrides.gas, "Preset gas: argon, helium, nitrogen");
    cmd.add_option("--Ma", ctx.overrides.mach, "Shock Mach number (>= 1)");
    cmd.add_option("--model", ctx.overrides.model, "Dissipative closure: qgd or ns");
    cmd.add_option("--nx", ctx.overrides.n_x, "Grid node count");
    cmd.add_option("--hx", ctx.overrides.h_x, "Grid spacing in upstream mean free paths");
    cmd.add_option("--a", ctx.overrides.a, "Time-step safety factor");
    cmd.add_option("--eps", ctx.overrides.eps, "Convergence tolerance on max|drho|/h_t");
    cmd.add_option("--max-steps", ctx.overrides.max_steps, "Step budget (1e7 notation ok)");
    cmd.add_option("--log-stride", ctx.overrides.log_stride,
                   "Steps between residual-history samples");
    cmd.add_option("--config", ctx.config_file,
                   "JSON config file; keys mirror the solver configuration");
    cmd.add_option("--out-dir", ctx.out_dir, "Output directory (created if missing)");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"1D shock wave structure via the quasi-gasdynamic and "
                 "Navier-Stokes equations"};
    app.set_version_flag("--version", qgdshock::kVersion);
    app.require_subcommand(1);

    cli::CommandContext solve_ctx;
    auto* solve = app.add_subcommand("solve", "March one shock to steady state and write "
                                              "profile.csv + summary.txt");
    add_common_options(*solve, solve_ctx);

    cli::CommandContext sweep_ctx;
    cli::SweepOptions sweep_opts;
    auto* sweep = app.add_subcommand("sweep", "Reciprocal-thickness table over a Mach list");
    add_common_options(*sweep, sweep_ctx);
    sweep->add_option("--Ma-list", sweep_opts.mach_list, "Mach numbers to run")
        ->required()
        ->delimiter(',');
    sweep->add_option("--models", sweep_opts.models, "Models to run (default: qgd,ns)")
        ->delimiter(',');
    sweep->add_option("--jobs", sweep_opts.jobs, "Concurrent member runs");

    cli::CommandContext grid_ctx;
    cli::GridStudyOptions grid_opts;
    auto* grid = app.add_subcommand("grid-study", "Grid-convergence study: halve h_x per level");
    add_common_options(*grid, grid_ctx);
    grid->add_option("--levels", grid_opts.levels, "Refinement levels (>= 2)");

    cli::CommandContext compare_ctx;
    cli::CompareOptions compare_opts;
    auto* compare = app.add_subcommand("compare", "Compare a sweep against a reference CSV");
    compare->add_option("--sweep", compare_opts.sweep_csv, "sweep.csv from the sweep command")
        ->required();
    compare->add_option("--reference", compare_opts.reference_csv,
                        "Reference CSV (header: Ma,recip_thickness)")
        ->required();
    compare->add_option("--tolerance", compare_opts.tolerance,
                        "Fail (exit 4) when max |relative deviation| exceeds this");
    compare->add_option("--out-dir", compare_ctx.out_dir, "Output directory");

    CLI11_PARSE(app, argc, argv);

    try {
        if (solve->parsed()) return cli::run_solve(solve_ctx);
        if (sweep->parsed()) return cli::run_sweep(sweep_ctx, sweep_opts);
        if (grid->parsed()) return cli::run_grid_study(grid_ctx, grid_opts);
        if (compare->parsed()) return cli::run_compare(compare_ctx, compare_opts);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return cli::kUsageError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return cli::kUsageError;
    }
    return cli::kUsageError;
}
