#include "qgdshock/gas_model.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qgdshock {

namespace {

[[noreturn]] void fail(const std::string& msg) { throw std::invalid_argument(msg); }

} // namespace

void validate_gas(const GasSpec& gas) {
    if (!(gas.gamma > 1.0)) fail("gas '" + gas.name + "': gamma must exceed 1");
    if (!(gas.omega >= 0.5 && gas.omega <= 1.0))
        fail("gas '" + gas.name + "': omega must lie in [0.5, 1]");
    if (!(gas.prandtl > 0.0)) fail("gas '" + gas.name + "': Prandtl number must be positive");
    if (!(gas.schmidt > 0.0)) fail("gas '" + gas.name + "': Schmidt number must be positive");
    if (gas.rotational) {
        const auto& r = *gas.rotational;
        if (!(r.z_inf > 0.0 && r.t_star > 0.0 && r.t_upstream_kelvin > 0.0))
            fail("gas '" + gas.name + "': rotational parameters must be positive");
    }
}

GasSpec argon() { return {"argon", 5.0 / 3.0, 0.81, 2.0 / 3.0, 0.752, std::nullopt}; }

GasSpec helium() { return {"helium", 5.0 / 3.0, 0.66, 2.0 / 3.0, 0.7575, std::nullopt}; }

GasSpec nitrogen() {
    return {"nitrogen", 7.0 / 5.0, 0.74, 14.0 / 19.0, 0.746,
            RotationalParams{23.0, 91.5, 273.0}};
}

GasSpec preset_gas(std::string_view name) {
    if (name == "argon") return argon();
    if (name == "helium") return helium();
    if (name == "nitrogen") return nitrogen();
    fail("unknown gas '" + std::string(name) + "' (presets: argon, helium, nitrogen)");
}

std::vector<std::string> preset_gas_names() { return {"argon", "helium", "nitrogen"}; }

RotationalRelaxation rotational_relaxation(const GasSpec& gas, double t_translational,
                                           double tau) {
    if (!gas.rotational)
        fail("rotational_relaxation: gas '" + gas.name + "' has no rotational parameters");
    if (!(t_translational > 0.0))
        fail("rotational_relaxation: temperature must be positive");
    constexpr double pi = std::numbers::pi;
    const auto& rot = *gas.rotational;
    const double t_kelvin = t_translational * rot.t_upstream_kelvin;
    const double ratio = rot.t_star / t_kelvin;
    const double denom =
        1.0 + 0.5 * std::pow(pi, 1.5) * std::sqrt(ratio) + (pi + 0.25 * pi * pi) * ratio;
    const double z = rot.z_inf / denom;
    const double tau_c = tau / omega_factor(gas.omega);
    return {z, tau_c, z * tau_c};
}

} // namespace qgdshock
