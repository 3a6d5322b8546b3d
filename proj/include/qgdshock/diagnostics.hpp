#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qgdshock/time_marcher.hpp"

namespace qgdshock {

// Reciprocal shock thickness lambda/delta computed from the maximum central
// density derivative: max_i((rho_{i+1} - rho_{i-1}) / 2 h_x) / (rho2 - rho1),
// with rho1, rho2 the Rankine-Hugoniot plateau values. Since the grid unit
// is the upstream mean free path the value is directly lambda/delta.
// Requires a converged solution with Ma > 1.
double reciprocal_thickness(const ShockSolution& sol);

struct ProfileRow {
    double x; // shifted so the density half-rise sits at x = 0
    double rho;
    double u;
    double p;
    double T;
    double f_rho; // (rho - rho1) / (rho2 - rho1)
    double f_u;   // (u - u2) / (u1 - u2)
    double f_T;   // (T - T1) / (T2 - T1)
    double jm;
    double pi_xx;
    double q;
};

struct ProfileTable {
    std::vector<ProfileRow> rows;
    double x_shift = 0.0;           // amount subtracted from the grid coordinates
    bool overshoot_flagged = false; // f_rho left [-0.05, 1.05] somewhere
};

// Normalized profiles of a converged solution, centered so that the linear
// interpolation of f_rho crosses 0.5 exactly at x = 0.
ProfileTable normalized_profiles(const ShockSolution& sol);

struct OscillationMetrics {
    double amplitude = 0.0;            // node-period zigzag amplitude in density
    double alternation_fraction = 0.0; // share of the window with alternating slope signs
};

// Zigzag metrics over the downstream window
// [x_center + window_offset, x_right - 5 h_x]. The amplitude is half the
// largest second difference, max_i |rho_i - (rho_{i-1} + rho_{i+1})/2| / 2,
// so an exact zigzag rho_i = c + (-1)^i d reports d. Throws when the window
// is empty.
OscillationMetrics oscillation_amplitude(const ShockSolution& sol,
                                         double window_offset = 10.0);

struct ReportRow {
    std::string gas;
    double mach = 0.0;
    Model model = Model::QGD;
    std::uint64_t steps = 0;
    bool converged = false;
    std::optional<double> recip_thickness;
    std::optional<double> oscillation;
    // steps(NS) / steps(QGD) for the matching (gas, Ma) pair; set on the NS
    // row when both runs converged.
    std::optional<double> step_ratio;
};

// One row per solution, in input order, plus NS/QGD step ratios for pairs
// that share gas and Mach number. Diagnostics that need convergence are
// omitted on non-converged rows.
std::vector<ReportRow> convergence_report(std::span<const ShockSolution> solutions);

} // namespace qgdshock
