#include "doctest.h"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "qgdshock/gas_model.hpp"

using namespace qgdshock;

namespace {

// Independent route to the VHS mean free path: Bird's product form
// lambda = (2/15)(7-2w)(5-2w) eta / (rho sqrt(2 pi R T)), R = 1.
double bird_mean_free_path(double omega, double eta, double rho, double T) {
    return (2.0 / 15.0) * (7.0 - 2.0 * omega) * (5.0 - 2.0 * omega) * eta /
           (rho * std::sqrt(2.0 * std::numbers::pi * T));
}

// Solve bird_mean_free_path(eta, 1, 1) = 1 for eta by bisection; the oracle
// for reference_viscosity.
double solve_unit_mfp_viscosity(double omega) {
    double lo = 0.01, hi = 100.0;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        (bird_mean_free_path(omega, mid, 1.0, 1.0) < 1.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

} // namespace

TEST_CASE("presets carry the published molecular parameters") {
    const GasSpec ar = argon();
    CHECK(ar.gamma == 5.0 / 3.0);
    CHECK(ar.omega == 0.81);
    CHECK(ar.prandtl == 2.0 / 3.0);
    CHECK(ar.schmidt == 0.752);
    CHECK_FALSE(ar.rotational.has_value());

    const GasSpec he = helium();
    CHECK(he.gamma == 5.0 / 3.0);
    CHECK(he.omega == 0.66);
    CHECK(he.prandtl == 2.0 / 3.0);
    CHECK(he.schmidt == 0.7575);

    const GasSpec n2 = nitrogen();
    CHECK(n2.gamma == 7.0 / 5.0);
    CHECK(n2.omega == 0.74);
    CHECK(n2.prandtl == 14.0 / 19.0);
    CHECK(n2.schmidt == 0.746);
    REQUIRE(n2.rotational.has_value());
    CHECK(n2.rotational->z_inf == 23.0);
    CHECK(n2.rotational->t_star == 91.5);
    CHECK(n2.rotational->t_upstream_kelvin == 273.0);

    CHECK(preset_gas("argon").name == "argon");
    CHECK_THROWS_AS((void)preset_gas("xenon"), std::invalid_argument);
    CHECK(preset_gas_names().size() == 3);
}

TEST_CASE("omega_factor matches hand evaluation") {
    CHECK(omega_factor(0.5) == doctest::Approx(1.25).epsilon(1e-15));
    CHECK(omega_factor(0.81) == doctest::Approx(1.649765733266).epsilon(1e-9));
    CHECK(omega_factor(0.74) == doctest::Approx(1.543972332016).epsilon(1e-9));
    CHECK_THROWS_AS((void)omega_factor(2.5), std::invalid_argument);
    CHECK_THROWS_AS((void)omega_factor(3.0), std::invalid_argument);
}

TEST_CASE("omega_factor agrees with Bird's product form: 4/Omega = (2/15)(7-2w)(5-2w)") {
    for (double w = 0.5; w <= 1.0001; w += 0.05) {
        const double lhs = 4.0 / omega_factor(w);
        const double rhs = (2.0 / 15.0) * (7.0 - 2.0 * w) * (5.0 - 2.0 * w);
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-15));
    }
}

TEST_CASE("reference_viscosity solves lambda(eta, 1, 1) = 1") {
    // Bisection oracle, frozen values confirmed independently.
    CHECK(reference_viscosity(argon()) ==
          doctest::Approx(solve_unit_mfp_viscosity(0.81)).epsilon(1e-9));
    CHECK(reference_viscosity(argon()) == doctest::Approx(1.033837358380).epsilon(1e-9));

    GasSpec hard_sphere{"hs", 5.0 / 3.0, 0.5, 2.0 / 3.0, 0.75, std::nullopt};
    CHECK(reference_viscosity(hard_sphere) ==
          doctest::Approx(solve_unit_mfp_viscosity(0.5)).epsilon(1e-9));
    CHECK(reference_viscosity(hard_sphere) ==
          doctest::Approx(0.783321335822).epsilon(1e-9));
}

TEST_CASE("mean free path closure holds to machine precision for every preset") {
    for (const auto& name : preset_gas_names()) {
        const GasSpec gas = preset_gas(name);
        CHECK(mean_free_path(gas, reference_viscosity(gas), 1.0, 1.0) == 1.0);
    }
}

TEST_CASE("mean free path scales as 1/rho and follows the VHS formula") {
    const GasSpec gas = argon();
    const double eta_ref = reference_viscosity(gas);
    CHECK(mean_free_path(gas, eta_ref, 2.0, 1.0) == 0.5);

    const double eta_hot = eta_ref * std::pow(4.0, 0.81);
    CHECK(mean_free_path(gas, eta_hot, 1.0, 4.0) ==
          doctest::Approx(std::pow(4.0, 0.81) / 2.0).epsilon(1e-12));

    CHECK_THROWS_AS((void)mean_free_path(gas, eta_ref, -1.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS((void)mean_free_path(gas, eta_ref, 1.0, 0.0), std::invalid_argument);
}

TEST_CASE("transport coefficients at the upstream reference state") {
    const GasSpec gas = argon();
    const double gamma = gas.gamma;
    const double eta_ref = reference_viscosity(gas);
    const auto tc = transport_coefficients(gas, 1.0, 1.0 / gamma);
    CHECK(tc.eta == doctest::Approx(eta_ref).epsilon(1e-15));
    CHECK(tc.kappa ==
          doctest::Approx(gamma * eta_ref / ((gamma - 1.0) * gas.prandtl)).epsilon(1e-14));
    CHECK(tc.tau == doctest::Approx(eta_ref * gamma / gas.schmidt).epsilon(1e-14));
}

TEST_CASE("viscosity power law") {
    for (const auto& name : preset_gas_names()) {
        const GasSpec gas = preset_gas(name);
        CHECK(transport_coefficients(gas, 1.0, 0.3).eta ==
              doctest::Approx(reference_viscosity(gas)).epsilon(1e-15));
    }
    CHECK(transport_coefficients(argon(), 4.0, 0.3).eta / reference_viscosity(argon()) ==
          doctest::Approx(std::pow(4.0, 0.81)).epsilon(1e-12));
}

TEST_CASE("transport coefficients increase with temperature") {
    const GasSpec gas = nitrogen();
    double prev_eta = 0.0, prev_kappa = 0.0, prev_tau = 0.0;
    for (double T = 0.2; T < 30.0; T *= 1.7) {
        const auto tc = transport_coefficients(gas, T, 0.9);
        CHECK(tc.eta > prev_eta);
        CHECK(tc.kappa > prev_kappa);
        CHECK(tc.tau > prev_tau);
        prev_eta = tc.eta;
        prev_kappa = tc.kappa;
        prev_tau = tc.tau;
    }
    CHECK_THROWS_AS((void)transport_coefficients(gas, -1.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS((void)transport_coefficients(gas, 1.0, 0.0), std::invalid_argument);
}

TEST_CASE("sound-unit transport equals the scaled thermal-unit closure") {
    const GasSpec gas = argon();
    const double gamma = gas.gamma;
    for (double T : {1.0 / gamma, 0.9, 4.2}) {
        for (double p : {1.0 / gamma, 2.5}) {
            const auto su = sound_unit_transport(gas, T, p);
            const auto th = transport_coefficients(gas, gamma * T, p);
            const double scale = 1.0 / std::sqrt(gamma);
            CHECK(su.eta == th.eta * scale);
            CHECK(su.kappa == th.kappa * scale);
            CHECK(su.tau == th.tau * scale);
        }
    }
    // The scaling exists to keep the upstream mean free path at exactly one
    // in solver units, where the upstream state is (rho, T) = (1, 1/gamma).
    for (const auto& name : preset_gas_names()) {
        const GasSpec g = preset_gas(name);
        const double t1 = 1.0 / g.gamma;
        const auto su = sound_unit_transport(g, t1, 1.0 / g.gamma);
        CHECK(mean_free_path(g, su.eta, 1.0, t1) == doctest::Approx(1.0).epsilon(1e-14));
    }
}

TEST_CASE("Parker rotational collision number") {
    const GasSpec n2 = nitrogen();

    // T_t = 273 K is dimensionless 1; frozen hand evaluation.
    const auto r = rotational_relaxation(n2, 1.0, 2.0);
    CHECK(r.z == doctest::Approx(5.120458463050).epsilon(1e-9));
    CHECK(r.tau_c == doctest::Approx(2.0 / omega_factor(0.74)).epsilon(1e-15));
    CHECK(r.tau_r == doctest::Approx(r.z * r.tau_c).epsilon(1e-15));
    CHECK(r.tau_c * omega_factor(n2.omega) == doctest::Approx(2.0).epsilon(1e-15));

    // High-temperature limit Z -> Z_inf = 23, monotone from below.
    CHECK(rotational_relaxation(n2, 1e9, 1.0).z == doctest::Approx(23.0).epsilon(1e-3));
    double prev = 0.0;
    for (double t = 0.1; t < 1e6; t *= 10.0) {
        const double z = rotational_relaxation(n2, t, 1.0).z;
        CHECK(z > prev);
        CHECK(z < 23.0);
        prev = z;
    }

    CHECK_THROWS_AS((void)rotational_relaxation(argon(), 1.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS((void)rotational_relaxation(n2, -1.0, 1.0), std::invalid_argument);
}

TEST_CASE("gas validation rejects out-of-range parameters") {
    GasSpec bad = argon();
    bad.gamma = 1.0;
    CHECK_THROWS_AS(validate_gas(bad), std::invalid_argument);
    bad = argon();
    bad.omega = 0.3;
    CHECK_THROWS_AS(validate_gas(bad), std::invalid_argument);
    bad = argon();
    bad.prandtl = 0.0;
    CHECK_THROWS_AS(validate_gas(bad), std::invalid_argument);
    bad = argon();
    bad.schmidt = -2.0;
    CHECK_THROWS_AS(validate_gas(bad), std::invalid_argument);
    CHECK_NOTHROW(validate_gas(nitrogen()));
}
