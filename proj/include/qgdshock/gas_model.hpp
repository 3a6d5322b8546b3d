#pragma once

#include <cmath>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace qgdshock {

// Parameters of Parker's rotational collision number formula. Temperatures
// are in kelvin; everything else in this library is dimensionless.
struct RotationalParams {
    double z_inf;             // limiting collision number at high temperature
    double t_star;            // characteristic rotational temperature [K]
    double t_upstream_kelvin; // upstream temperature used to dimensionalize T
};

// Molecular model constants of one gas (variable-hard-sphere viscosity,
// constant Prandtl and Schmidt numbers).
struct GasSpec {
    std::string name;
    double gamma;   // specific heat ratio
    double omega;   // viscosity temperature exponent, eta ~ T^omega
    double prandtl;
    double schmidt;
    std::optional<RotationalParams> rotational;
};

// Throws std::invalid_argument if the spec violates gamma > 1,
// 0.5 <= omega <= 1, prandtl > 0, or schmidt > 0.
void validate_gas(const GasSpec& gas);

GasSpec argon();
GasSpec helium();
GasSpec nitrogen();

// Preset lookup by name ("argon", "helium", "nitrogen"); throws
// std::invalid_argument for unknown names.
GasSpec preset_gas(std::string_view name);
std::vector<std::string> preset_gas_names();

struct TransportCoefficients {
    double eta;   // shear viscosity
    double kappa; // heat conductivity
    double tau;   // relaxation parameter
};

struct RotationalRelaxation {
    double z;     // Parker collision number
    double tau_c; // collisional time, tau / Omega
    double tau_r; // rotational relaxation time, Z * tau_c
};

// Parker's rotational collision number and the relaxation times derived from
// a local relaxation parameter tau. The translational temperature is given
// in units of the upstream temperature and is dimensionalized with
// rotational->t_upstream_kelvin. Throws std::invalid_argument when called on
// a gas without rotational parameters.
RotationalRelaxation rotational_relaxation(const GasSpec& gas, double t_translational,
                                           double tau);

// VHS correction factor Omega = 30/((7-2w)(5-2w)) linking viscosity to the
// mean free path. Requires omega < 2.5.
inline double omega_factor(double omega) {
    const double f1 = 7.0 - 2.0 * omega;
    const double f2 = 5.0 - 2.0 * omega;
    if (!(f1 > 0.0 && f2 > 0.0))
        throw std::invalid_argument("omega_factor: omega must be below 2.5");
    return 30.0 / (f1 * f2);
}

// Dimensionless viscosity at T = 1 that makes the mean free path of the
// state (rho = 1, T = 1) exactly one: eta_ref = Omega * sqrt(2 pi) / 4.
inline double reference_viscosity(const GasSpec& gas) {
    return omega_factor(gas.omega) * std::sqrt(2.0 * std::numbers::pi) / 4.0;
}

// VHS transport closures with the gas constant fixed to 1 and the viscosity
// law referenced to T = 1:
//   eta   = eta_ref * T^omega
//   kappa = gamma * eta / ((gamma - 1) * Pr)
//   tau   = eta / (p * Sc)
// The temperature argument is measured in units of the upstream temperature.
inline TransportCoefficients transport_coefficients(const GasSpec& gas, double temperature,
                                                    double pressure) {
    if (!(temperature > 0.0))
        throw std::invalid_argument("transport_coefficients: temperature must be positive");
    if (!(pressure > 0.0))
        throw std::invalid_argument("transport_coefficients: pressure must be positive");
    const double eta = reference_viscosity(gas) * std::pow(temperature, gas.omega);
    const double kappa = gas.gamma * eta / ((gas.gamma - 1.0) * gas.prandtl);
    const double tau = eta / (pressure * gas.schmidt);
    return {eta, kappa, tau};
}

// Mean free path lambda = 4 eta / (Omega * rho * sqrt(2 pi R T)), R = 1.
inline double mean_free_path(const GasSpec& gas, double eta, double rho,
                             double temperature) {
    if (!(eta > 0.0 && rho > 0.0 && temperature > 0.0))
        throw std::invalid_argument("mean_free_path: inputs must be positive");
    return 4.0 * eta /
           (omega_factor(gas.omega) * rho * std::sqrt(2.0 * std::numbers::pi * temperature));
}

// Transport closures evaluated at a node state of the solver, which works in
// sound-speed units (upstream p = 1/gamma, T = p/rho = 1/gamma). Equivalent
// to transport_coefficients(gas, gamma * T, p) with all three outputs divided
// by sqrt(gamma); the scaling converts viscosity from thermal-speed to
// sound-speed normalization so the upstream mean free path stays exactly 1.
inline TransportCoefficients sound_unit_transport(const GasSpec& gas, double temperature,
                                                  double pressure) {
    const TransportCoefficients tc =
        transport_coefficients(gas, gas.gamma * temperature, pressure);
    const double scale = 1.0 / std::sqrt(gas.gamma);
    return {tc.eta * scale, tc.kappa * scale, tc.tau * scale};
}

} // namespace qgdshock
