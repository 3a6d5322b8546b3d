#pragma once

namespace qgdshock {

// Uniform (plateau) flow state in sound-speed units: density scaled by the
// upstream density, velocity by the upstream sound speed, pressure by
// rho1 * c1^2. The upstream state is therefore (1, Ma, 1/gamma).
struct UniformState {
    double rho;
    double u;
    double p;
};

// State ahead of the shock. Requires Ma >= 1.
UniformState upstream_state(double mach, double gamma);

// State behind the shock from the normal-shock Rankine-Hugoniot relations.
// Requires Ma >= 1; Ma = 1 returns the upstream state.
UniformState downstream_state(double mach, double gamma);

struct FluxResidual {
    double mass;     // [rho u]
    double momentum; // [rho u^2 + p]
    double energy;   // [(E + p) u],  E = rho u^2/2 + p/(gamma - 1)
};

// Differences of the three conserved fluxes between two uniform states.
// Vanishes exactly when the states satisfy the jump conditions.
FluxResidual jump_flux_residual(const UniformState& left, const UniformState& right,
                                double gamma);

} // namespace qgdshock
