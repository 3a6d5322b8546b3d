#include "qgdshock/jump_conditions.hpp"

#include <stdexcept>

namespace qgdshock {

namespace {

void require_supersonic(double mach) {
    if (!(mach >= 1.0))
        throw std::invalid_argument("shock Mach number must be at least 1");
}

} // namespace

UniformState upstream_state(double mach, double gamma) {
    require_supersonic(mach);
    return {1.0, mach, 1.0 / gamma};
}

UniformState downstream_state(double mach, double gamma) {
    require_supersonic(mach);
    const double m2 = mach * mach;
    const double rho = (gamma + 1.0) * m2 / ((gamma - 1.0) * m2 + 2.0);
    const double u = mach / rho;
    const double p = (1.0 / gamma) * (2.0 * gamma * m2 - (gamma - 1.0)) / (gamma + 1.0);
    return {rho, u, p};
}

FluxResidual jump_flux_residual(const UniformState& left, const UniformState& right,
                                double gamma) {
    auto fluxes = [gamma](const UniformState& s) {
        const double mass = s.rho * s.u;
        const double momentum = s.rho * s.u * s.u + s.p;
        const double energy_density = 0.5 * s.rho * s.u * s.u + s.p / (gamma - 1.0);
        const double energy = (energy_density + s.p) * s.u;
        return FluxResidual{mass, momentum, energy};
    };
    const FluxResidual l = fluxes(left);
    const FluxResidual r = fluxes(right);
    return {l.mass - r.mass, l.momentum - r.momentum, l.energy - r.energy};
}

} // namespace qgdshock
