#include "cli_commands.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <ctime>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>
#include <variant>

#include "json.hpp"

#include "qgdshock/diagnostics.hpp"
#include "qgdshock/errors.hpp"
#include "qgdshock/format.hpp"
#include "qgdshock/reference_io.hpp"
#include "qgdshock/version.hpp"

namespace qgdshock::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

// ---------------------------------------------------------------------------
// Manifest support
// ---------------------------------------------------------------------------

std::uint64_t fnv1a64(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path.string());
    std::uint64_t hash = 0xcbf29ce484222325ull;
    char buf[4096];
    while (in.read(buf, sizeof buf) || in.gcount() > 0) {
        for (std::streamsize i = 0; i < in.gcount(); ++i) {
            hash ^= static_cast<unsigned char>(buf[i]);
            hash *= 0x100000001b3ull;
        }
    }
    return hash;
}

std::string hex64(std::uint64_t v) {
    char buf[19];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

std::string utc_timestamp() {
    const std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

json gas_to_json(const GasSpec& gas) {
    json j{{"name", gas.name},
           {"gamma", gas.gamma},
           {"omega", gas.omega},
           {"prandtl", gas.prandtl},
           {"schmidt", gas.schmidt}};
    if (gas.rotational) {
        j["z_inf"] = gas.rotational->z_inf;
        j["t_star"] = gas.rotational->t_star;
        j["t_upstream_kelvin"] = gas.rotational->t_upstream_kelvin;
    }
    return j;
}

json config_to_json(const SolverConfig& cfg) {
    return json{{"gas", gas_to_json(cfg.gas)},
                {"Ma", cfg.mach},
                {"model", to_string(cfg.model)},
                {"n_x", cfg.n_x},
                {"h_x", cfg.h_x},
                {"a", cfg.a},
                {"eps", cfg.eps},
                {"max_steps", cfg.max_steps},
                {"residual_log_stride", cfg.residual_log_stride}};
}

// One manifest per command invocation; outputs are reproducible from the
// recorded merged configuration alone (the timestamp is informational).
void write_manifest(const CommandContext& ctx, const std::string& command,
                    const json& command_config, const std::vector<fs::path>& inputs,
                    const std::vector<std::string>& outputs) {
    json m{{"artifact", "qgdshock"},
           {"version", kVersion},
           {"timestamp_utc", utc_timestamp()},
           {"command", command},
           {"config", command_config}};
    m["inputs"] = json::array();
    if (ctx.config_file) {
        m["inputs"].push_back({{"path", ctx.config_file->string()},
                               {"fnv1a64", hex64(fnv1a64(*ctx.config_file))}});
    }
    for (const auto& p : inputs)
        m["inputs"].push_back({{"path", p.string()}, {"fnv1a64", hex64(fnv1a64(p))}});
    m["outputs"] = outputs;

    std::ofstream out(ctx.out_dir / "manifest.json");
    out << m.dump(2) << "\n";
    if (!out) throw std::runtime_error("cannot write manifest.json");
}

// ---------------------------------------------------------------------------
// Config file handling
// ---------------------------------------------------------------------------

GasSpec gas_from_json(const json& j) {
    if (j.is_string()) return preset_gas(j.get<std::string>());
    if (!j.is_object())
        throw std::runtime_error("config: 'gas' must be a preset name or an object");
    GasSpec gas;
    gas.name = j.value("name", "custom");
    gas.gamma = j.at("gamma").get<double>();
    gas.omega = j.at("omega").get<double>();
    gas.prandtl = j.at("prandtl").get<double>();
    gas.schmidt = j.at("schmidt").get<double>();
    const bool has_rot = j.contains("z_inf") || j.contains("t_star") ||
                         j.contains("t_upstream_kelvin");
    if (has_rot) {
        RotationalParams rot{};
        rot.z_inf = j.at("z_inf").get<double>();
        rot.t_star = j.at("t_star").get<double>();
        rot.t_upstream_kelvin = j.at("t_upstream_kelvin").get<double>();
        gas.rotational = rot;
    }
    for (const auto& [key, value] : j.items()) {
        (void)value;
        static const char* known[] = {"name", "gamma", "omega", "prandtl", "schmidt",
                                      "z_inf", "t_star", "t_upstream_kelvin"};
        if (std::find(std::begin(known), std::end(known), key) == std::end(known))
            throw std::runtime_error("config: unknown gas key '" + key + "'");
    }
    validate_gas(gas);
    return gas;
}

void apply_config_file(SolverConfig& cfg, const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file " + path.string());
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw std::runtime_error("config file " + path.string() + ": " + e.what());
    }
    for (const auto& [key, value] : j.items()) {
        if (key == "gas") cfg.gas = gas_from_json(value);
        else if (key == "Ma") cfg.mach = value.get<double>();
        else if (key == "model") cfg.model = model_from_string(value.get<std::string>());
        else if (key == "n_x") cfg.n_x = value.get<int>();
        else if (key == "h_x") cfg.h_x = value.get<double>();
        else if (key == "a") cfg.a = value.get<double>();
        else if (key == "eps") cfg.eps = value.get<double>();
        else if (key == "max_steps") cfg.max_steps = static_cast<std::uint64_t>(value.get<double>());
        else if (key == "residual_log_stride")
            cfg.residual_log_stride = static_cast<std::uint64_t>(value.get<double>());
        else throw std::runtime_error("config: unknown key '" + key + "'");
    }
}

// ---------------------------------------------------------------------------
// Output writers
// ---------------------------------------------------------------------------

void write_profile_csv(const fs::path& path, const ProfileTable& table) {
    std::ofstream out(path);
    out << "x,rho,u,p,T,f_rho,f_u,f_T,jm,Pi_xx,q\n";
    for (const auto& r : table.rows) {
        out << format_double(r.x) << ',' << format_double(r.rho) << ','
            << format_double(r.u) << ',' << format_double(r.p) << ','
            << format_double(r.T) << ',' << format_double(r.f_rho) << ','
            << format_double(r.f_u) << ',' << format_double(r.f_T) << ','
            << format_double(r.jm) << ',' << format_double(r.pi_xx) << ','
            << format_double(r.q) << '\n';
    }
    if (!out) throw std::runtime_error("cannot write " + path.string());
}

enum class Outcome { converged, not_converged, diverged };

const char* outcome_name(Outcome o) {
    switch (o) {
        case Outcome::converged: return "converged";
        case Outcome::not_converged: return "not_converged";
        default: return "diverged";
    }
}

struct RunResult {
    Outcome outcome = Outcome::diverged;
    std::uint64_t steps = 0;
    std::optional<double> thickness;
    std::optional<OscillationMetrics> oscillation;
    double final_residual = 0.0;
    double wall_time = 0.0;
    std::string error;
    std::optional<ShockSolution> solution;
};

RunResult execute(const SolverConfig& cfg, bool keep_solution) {
    RunResult res;
    try {
        ShockSolution sol = run_to_steady(cfg);
        res.steps = sol.stats.steps_taken;
        res.final_residual = sol.stats.final_residual;
        res.wall_time = sol.stats.wall_time;
        res.outcome = sol.stats.converged ? Outcome::converged : Outcome::not_converged;
        if (sol.stats.converged && cfg.mach > 1.0) {
            res.thickness = reciprocal_thickness(sol);
            res.oscillation = oscillation_amplitude(sol);
        }
        if (keep_solution) res.solution = std::move(sol);
    } catch (const divergence_error& e) {
        res.outcome = Outcome::diverged;
        res.steps = e.step();
        res.error = e.what();
    }
    return res;
}

void write_summary(const fs::path& path, const SolverConfig& cfg, const RunResult& res) {
    std::ofstream out(path);
    out << "gas=" << cfg.gas.name << "\n"
        << "Ma=" << format_double(cfg.mach) << "\n"
        << "model=" << to_string(cfg.model) << "\n"
        << "n_x=" << cfg.n_x << "\n"
        << "h_x=" << format_double(cfg.h_x) << "\n"
        << "a=" << format_double(cfg.a) << "\n"
        << "eps=" << format_double(cfg.eps) << "\n"
        << "outcome=" << outcome_name(res.outcome) << "\n"
        << "steps=" << res.steps << "\n"
        << "final_residual=" << format_double(res.final_residual) << "\n";
    if (res.thickness) out << "recip_thickness=" << format_double(*res.thickness) << "\n";
    if (res.oscillation) {
        out << "oscillation_amplitude=" << format_double(res.oscillation->amplitude) << "\n"
            << "oscillation_alternation_fraction="
            << format_double(res.oscillation->alternation_fraction) << "\n";
    }
    out << "wall_time_s=" << format_double(res.wall_time) << "\n";
    if (!res.error.empty()) out << "error=" << res.error << "\n";
    if (!out) throw std::runtime_error("cannot write " + path.string());
}

int outcome_exit_code(Outcome o) {
    switch (o) {
        case Outcome::converged: return kOk;
        case Outcome::not_converged: return kNotConverged;
        default: return kDiverged;
    }
}

} // namespace

SolverConfig resolve_config(const std::optional<fs::path>& config_file,
                            const ConfigOverrides& o) {
    SolverConfig cfg; // built-in defaults
    if (config_file) apply_config_file(cfg, *config_file);
    if (o.gas) cfg.gas = preset_gas(*o.gas);
    if (o.mach) cfg.mach = *o.mach;
    if (o.model) cfg.model = model_from_string(*o.model);
    if (o.n_x) cfg.n_x = *o.n_x;
    if (o.h_x) cfg.h_x = *o.h_x;
    if (o.a) cfg.a = *o.a;
    if (o.eps) cfg.eps = *o.eps;
    if (o.max_steps) cfg.max_steps = static_cast<std::uint64_t>(*o.max_steps);
    if (o.log_stride) cfg.residual_log_stride = *o.log_stride;
    validate_config(cfg);
    return cfg;
}

int run_solve(const CommandContext& ctx) {
    const SolverConfig cfg = resolve_config(ctx.config_file, ctx.overrides);
    fs::create_directories(ctx.out_dir);

    const RunResult res = execute(cfg, /*keep_solution=*/true);

    std::vector<std::string> outputs{"summary.txt"};
    if (res.outcome == Outcome::converged && cfg.mach > 1.0) {
        write_profile_csv(ctx.out_dir / "profile.csv", normalized_profiles(*res.solution));
        outputs.insert(outputs.begin(), "profile.csv");
    }
    write_summary(ctx.out_dir / "summary.txt", cfg, res);
    write_manifest(ctx, "solve", config_to_json(cfg), {}, outputs);

    std::cout << "solve: " << cfg.gas.name << " Ma=" << format_double(cfg.mach) << " "
              << to_string(cfg.model) << " -> " << outcome_name(res.outcome)
              << " steps=" << res.steps;
    if (res.thickness) std::cout << " recip_thickness=" << format_double(*res.thickness);
    std::cout << "\n";
    if (!res.error.empty()) std::cerr << res.error << "\n";
    return outcome_exit_code(res.outcome);
}

int run_sweep(const CommandContext& ctx, const SweepOptions& opts) {
    if (opts.mach_list.empty())
        throw std::runtime_error("sweep: --Ma-list must name at least one Mach number");
    if (opts.models.empty()) throw std::runtime_error("sweep: --models must not be empty");

    // Validate every member configuration before spending time on any run.
    std::vector<SolverConfig> members;
    for (double mach : opts.mach_list) {
        for (const auto& model : opts.models) {
            ConfigOverrides o = ctx.overrides;
            o.mach = mach;
            o.model = model;
            members.push_back(resolve_config(ctx.config_file, o));
        }
    }

    std::vector<RunResult> results(members.size());
    const unsigned jobs = std::max(1u, opts.jobs);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next.fetch_add(1); i < members.size(); i = next.fetch_add(1))
            results[i] = execute(members[i], /*keep_solution=*/false);
    };
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < std::min<std::size_t>(jobs, members.size()); ++t)
            pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    fs::create_directories(ctx.out_dir);
    std::ofstream out(ctx.out_dir / "sweep.csv");
    out << "gas,Ma,model,recip_thickness,steps,converged\n";
    int exit_code = kOk;
    for (std::size_t i = 0; i < members.size(); ++i) {
        const auto& cfg = members[i];
        const auto& res = results[i];
        out << cfg.gas.name << ',' << format_double(cfg.mach) << ','
            << to_string(cfg.model) << ','
            << (res.thickness ? format_double(*res.thickness) : std::string{}) << ','
            << res.steps << ','
            << (res.outcome == Outcome::converged
                    ? "true"
                    : res.outcome == Outcome::not_converged ? "false" : "diverged")
            << '\n';
        exit_code = std::max(exit_code, outcome_exit_code(res.outcome));
    }
    if (!out) throw std::runtime_error("cannot write sweep.csv");
    out.close();

    json cfg_json = config_to_json(members.front());
    cfg_json.erase("Ma");
    cfg_json.erase("model");
    json sweep_json{{"base", cfg_json}, {"Ma_list", opts.mach_list}, {"models", opts.models}};
    write_manifest(ctx, "sweep", sweep_json, {}, {"sweep.csv"});

    std::cout << "sweep: " << members.size() << " runs -> " << (ctx.out_dir / "sweep.csv").string()
              << "\n";
    return exit_code;
}

int run_grid_study(const CommandContext& ctx, const GridStudyOptions& opts) {
    if (opts.levels < 2) throw std::runtime_error("grid-study: --levels must be at least 2");
    const SolverConfig base = resolve_config(ctx.config_file, ctx.overrides);

    fs::create_directories(ctx.out_dir);
    std::ofstream out(ctx.out_dir / "grid_study.csv");
    out << "level,n_x,h_x,a,recip_thickness,steps,converged,rel_change\n";

    int exit_code = kOk;
    std::optional<double> previous;
    for (int level = 0; level < opts.levels; ++level) {
        SolverConfig cfg = base;
        const double factor = std::pow(2.0, level);
        cfg.n_x = static_cast<int>(base.n_x * factor);
        cfg.h_x = base.h_x / factor;
        cfg.a = base.a / factor; // keep h_t / h_x^2 fixed across levels
        const RunResult res = execute(cfg, /*keep_solution=*/false);

        out << level << ',' << cfg.n_x << ',' << format_double(cfg.h_x) << ','
            << format_double(cfg.a) << ','
            << (res.thickness ? format_double(*res.thickness) : std::string{}) << ','
            << res.steps << ','
            << (res.outcome == Outcome::converged
                    ? "true"
                    : res.outcome == Outcome::not_converged ? "false" : "diverged");
        if (res.thickness && previous) {
            out << ',' << format_double(std::abs(*res.thickness - *previous) / *previous);
        } else {
            out << ',';
        }
        out << '\n';
        if (res.thickness) previous = res.thickness;
        exit_code = std::max(exit_code, outcome_exit_code(res.outcome));
    }
    if (!out) throw std::runtime_error("cannot write grid_study.csv");
    out.close();

    json j = config_to_json(base);
    j["levels"] = opts.levels;
    write_manifest(ctx, "grid-study", j, {}, {"grid_study.csv"});
    std::cout << "grid-study: " << opts.levels << " levels -> "
              << (ctx.out_dir / "grid_study.csv").string() << "\n";
    return exit_code;
}

namespace {

// Extract (Ma, thickness) pairs from a sweep.csv produced by run_sweep.
std::vector<std::pair<double, double>> read_sweep_points(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error(path.string() + ": empty file");
    if (line != "gas,Ma,model,recip_thickness,steps,converged")
        throw std::runtime_error(path.string() + ": not a sweep.csv (unexpected header)");

    std::vector<std::pair<double, double>> points;
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string gas, mach, model, thickness, steps, converged;
        std::getline(ss, gas, ',');
        std::getline(ss, mach, ',');
        std::getline(ss, model, ',');
        std::getline(ss, thickness, ',');
        std::getline(ss, steps, ',');
        std::getline(ss, converged, ',');
        if (converged != "true" || thickness.empty()) continue;
        try {
            points.emplace_back(std::stod(mach), std::stod(thickness));
        } catch (const std::exception&) {
            throw std::runtime_error(path.string() + ":" + std::to_string(line_no) +
                                     ": malformed row");
        }
    }
    if (points.empty())
        throw std::runtime_error(path.string() + ": no converged rows with a thickness");
    return points;
}

} // namespace

int run_compare(const CommandContext& ctx, const CompareOptions& opts) {
    const auto model_points = read_sweep_points(opts.sweep_csv);
    const ReferenceDataset ref = load_reference_csv(opts.reference_csv);
    const ComparisonReport report = compare_thickness(model_points, ref);

    fs::create_directories(ctx.out_dir);
    std::ofstream out(ctx.out_dir / "comparison.csv");
    out << "Ma,model_value,ref_value,relative_deviation\n";
    for (const auto& p : report.points)
        out << format_double(p.mach) << ',' << format_double(p.model_value) << ','
            << format_double(p.ref_value) << ',' << format_double(p.relative_deviation)
            << '\n';
    if (!out) throw std::runtime_error("cannot write comparison.csv");
    out.close();

    json j{{"sweep_csv", opts.sweep_csv.string()},
           {"reference_csv", opts.reference_csv.string()},
           {"max_abs_relative", report.max_abs_relative},
           {"rms_relative", report.rms_relative},
           {"points_compared", report.points.size()},
           {"points_out_of_range", report.out_of_range.size()}};
    if (opts.tolerance) j["tolerance"] = *opts.tolerance;
    write_manifest(ctx, "compare", j, {opts.sweep_csv, opts.reference_csv},
                   {"comparison.csv"});

    std::cout << "compare: " << report.points.size() << " points"
              << " max|dev|=" << format_double(report.max_abs_relative)
              << " rms=" << format_double(report.rms_relative);
    if (!report.out_of_range.empty())
        std::cout << " (skipped " << report.out_of_range.size() << " outside the reference range)";
    std::cout << "\n";

    if (opts.tolerance && report.max_abs_relative > *opts.tolerance) {
        std::cerr << "maximum relative deviation " << format_double(report.max_abs_relative)
                  << " exceeds tolerance " << format_double(*opts.tolerance) << "\n";
        return kToleranceExceeded;
    }
    return kOk;
}

} // namespace qgdshock::cli
