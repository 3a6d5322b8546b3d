#include "qgdshock/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "qgdshock/jump_conditions.hpp"

namespace qgdshock {

namespace {

void require_converged(const ShockSolution& sol, const char* op) {
    if (!sol.stats.converged)
        throw std::logic_error(std::string(op) + ": solution did not converge, "
                                                 "diagnostic would be meaningless");
    if (!(sol.cfg.mach > 1.0))
        throw std::logic_error(std::string(op) + ": no shock at Ma = 1");
}

// Shock center by the f_rho = 0.5 crossing nearest the steepest density
// gradient; returns the linearly interpolated x.
double center_coordinate(const FlowField& field, double rho1, double rho2) {
    const int n = field.n();
    const double jump = rho2 - rho1;

    int steepest = 1;
    double max_slope = -std::numeric_limits<double>::infinity();
    for (int i = 1; i < n - 1; ++i) {
        const double slope = field.rho[i + 1] - field.rho[i - 1];
        if (slope > max_slope) {
            max_slope = slope;
            steepest = i;
        }
    }

    int best = -1;
    for (int i = 0; i < n - 1; ++i) {
        const double a = (field.rho[i] - rho1) / jump - 0.5;
        const double b = (field.rho[i + 1] - rho1) / jump - 0.5;
        if (a * b <= 0.0 && a != b) {
            if (best < 0 || std::abs(i - steepest) < std::abs(best - steepest)) best = i;
        }
    }
    if (best < 0)
        throw std::logic_error("profile never crosses the density half-rise");

    const double fa = (field.rho[best] - rho1) / jump;
    const double fb = (field.rho[best + 1] - rho1) / jump;
    return field.x(best) + field.h_x * (0.5 - fa) / (fb - fa);
}

} // namespace

double reciprocal_thickness(const ShockSolution& sol) {
    require_converged(sol, "reciprocal_thickness");
    const FlowField& f = sol.field;
    const double gamma = sol.cfg.gas.gamma;
    const double rho1 = upstream_state(sol.cfg.mach, gamma).rho;
    const double rho2 = downstream_state(sol.cfg.mach, gamma).rho;

    const double inv2h = 1.0 / (2.0 * f.h_x);
    double max_slope = -std::numeric_limits<double>::infinity();
    for (int i = 1; i < f.n() - 1; ++i)
        max_slope = std::max(max_slope, (f.rho[i + 1] - f.rho[i - 1]) * inv2h);
    return max_slope / (rho2 - rho1);
}

ProfileTable normalized_profiles(const ShockSolution& sol) {
    require_converged(sol, "normalized_profiles");
    const FlowField& f = sol.field;
    const double gamma = sol.cfg.gas.gamma;
    const UniformState s1 = upstream_state(sol.cfg.mach, gamma);
    const UniformState s2 = downstream_state(sol.cfg.mach, gamma);
    const double t1 = s1.p / s1.rho;
    const double t2 = s2.p / s2.rho;

    const Primitives prim = primitives(f, gamma);
    const NodeTerms terms = qgd_node_terms(f, sol.cfg.gas, sol.cfg.model);

    ProfileTable table;
    table.x_shift = center_coordinate(f, s1.rho, s2.rho);
    table.rows.reserve(f.n());
    for (int i = 0; i < f.n(); ++i) {
        ProfileRow row;
        row.x = f.x(i) - table.x_shift;
        row.rho = f.rho[i];
        row.u = prim.u[i];
        row.p = prim.p[i];
        row.T = prim.T[i];
        row.f_rho = (f.rho[i] - s1.rho) / (s2.rho - s1.rho);
        row.f_u = (prim.u[i] - s2.u) / (s1.u - s2.u);
        row.f_T = (prim.T[i] - t1) / (t2 - t1);
        row.jm = terms.jm[i];
        row.pi_xx = terms.pi_xx[i];
        row.q = terms.q[i];
        if (row.f_rho < -0.05 || row.f_rho > 1.05) table.overshoot_flagged = true;
        table.rows.push_back(row);
    }
    return table;
}

OscillationMetrics oscillation_amplitude(const ShockSolution& sol, double window_offset) {
    require_converged(sol, "oscillation_amplitude");
    const FlowField& f = sol.field;
    const double gamma = sol.cfg.gas.gamma;
    const double rho1 = upstream_state(sol.cfg.mach, gamma).rho;
    const double rho2 = downstream_state(sol.cfg.mach, gamma).rho;
    const double center = center_coordinate(f, rho1, rho2);

    const int n = f.n();
    const double x_lo = center + window_offset;
    int first = static_cast<int>(std::ceil((x_lo - f.x0) / f.h_x));
    int last = n - 1 - 5; // stay clear of the pinned right rim
    first = std::max(first, 1);
    last = std::min(last, n - 2);
    if (first > last)
        throw std::invalid_argument("oscillation_amplitude: empty downstream window");

    OscillationMetrics m;
    for (int i = first; i <= last; ++i) {
        const double dev =
            std::abs(f.rho[i] - 0.5 * (f.rho[i - 1] + f.rho[i + 1])) / 2.0;
        if (dev > m.amplitude) m.amplitude = dev;
    }

    int alternations = 0;
    int pairs = 0;
    for (int i = first; i < last - 1; ++i) {
        const double d0 = f.rho[i + 1] - f.rho[i];
        const double d1 = f.rho[i + 2] - f.rho[i + 1];
        ++pairs;
        if (d0 * d1 < 0.0) ++alternations;
    }
    m.alternation_fraction = pairs > 0 ? static_cast<double>(alternations) / pairs : 0.0;
    return m;
}

std::vector<ReportRow> convergence_report(std::span<const ShockSolution> solutions) {
    if (solutions.empty())
        throw std::invalid_argument("convergence_report: need at least one solution");

    std::vector<ReportRow> rows;
    rows.reserve(solutions.size());
    for (const auto& sol : solutions) {
        ReportRow row;
        row.gas = sol.cfg.gas.name;
        row.mach = sol.cfg.mach;
        row.model = sol.cfg.model;
        row.steps = sol.stats.steps_taken;
        row.converged = sol.stats.converged;
        if (sol.stats.converged && sol.cfg.mach > 1.0) {
            row.recip_thickness = reciprocal_thickness(sol);
            row.oscillation = oscillation_amplitude(sol).amplitude;
        }
        rows.push_back(row);
    }

    // Step ratios for NS/QGD pairs sharing (gas, Ma); attached to the NS row.
    for (auto& ns_row : rows) {
        if (ns_row.model != Model::NS || !ns_row.converged) continue;
        for (const auto& other : rows) {
            if (other.model == Model::QGD && other.converged && other.gas == ns_row.gas &&
                other.mach == ns_row.mach && other.steps > 0) {
                ns_row.step_ratio =
                    static_cast<double>(ns_row.steps) / static_cast<double>(other.steps);
                break;
            }
        }
    }
    return rows;
}

} // namespace qgdshock
