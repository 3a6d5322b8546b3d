#include "qgdshock/qgd_operator.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <stdexcept>

#include "qgdshock/errors.hpp"

namespace qgdshock {

Model model_from_string(std::string_view name) {
    std::string lower(name);
    std::transform(lower.begin(), lower.end(), lower.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (lower == "ns") return Model::NS;
    if (lower == "qgd") return Model::QGD;
    throw std::invalid_argument("unknown model '" + std::string(name) + "' (use ns or qgd)");
}

std::string to_string(Model model) { return model == Model::NS ? "ns" : "qgd"; }

namespace detail {

double eval_primitives(const FlowField& field, double gamma, Workspace& ws) {
    const int n = field.n();
    if (n < 5) throw std::invalid_argument("FlowField needs at least 5 nodes");
    if (static_cast<int>(field.mom.size()) != n || static_cast<int>(field.energy.size()) != n)
        throw std::invalid_argument("FlowField arrays must have equal length");

    auto& pr = ws.prim;
    pr.u.resize(n);
    pr.p.resize(n);
    pr.T.resize(n);
    pr.H.resize(n);

    const double gm1 = gamma - 1.0;
    double vmax = 0.0;
    for (int i = 0; i < n; ++i) {
        const double rho = field.rho[i];
        if (!(rho > 0.0))
            throw invalid_state_error("nonpositive density at node " + std::to_string(i), i);
        const double u = field.mom[i] / rho;
        const double p = gm1 * (field.energy[i] - 0.5 * field.mom[i] * u);
        if (!(p > 0.0))
            throw invalid_state_error("nonpositive pressure at node " + std::to_string(i), i);
        const double T = p / rho;
        pr.u[i] = u;
        pr.p[i] = p;
        pr.T[i] = T;
        pr.H[i] = (field.energy[i] + p) / rho;
        const double v = std::sqrt(T) + std::abs(u);
        if (v > vmax) vmax = v;
    }
    return vmax;
}

namespace {

// First derivatives of u, p, T, 1/rho, and rho u^2 + p at one node, by the
// second-order central formula inside and one-sided formulas at the ends.
struct NodeGradients {
    double du, dp, dT, dinv, dphi;
};

struct TermInputs {
    const double* u;
    const double* p;
    const double* T;
    const double* inv_rho;
    const double* phi; // rho u^2 + p
};

inline NodeGradients central_gradients(const TermInputs& in, int i, double inv2h) {
    return {(in.u[i + 1] - in.u[i - 1]) * inv2h, (in.p[i + 1] - in.p[i - 1]) * inv2h,
            (in.T[i + 1] - in.T[i - 1]) * inv2h,
            (in.inv_rho[i + 1] - in.inv_rho[i - 1]) * inv2h,
            (in.phi[i + 1] - in.phi[i - 1]) * inv2h};
}

// One-sided: (-3 v0 + 4 v1 - v2) / 2h at the left end, mirrored on the
// right, written in difference form so constant data gives an exact zero.
// Only diagnostics read these nodes.
inline NodeGradients onesided_gradients(const TermInputs& in, int i, int dir, double inv2h) {
    auto d = [&](const double* v) {
        return dir * (4.0 * (v[i + dir] - v[i]) - (v[i + 2 * dir] - v[i])) * inv2h;
    };
    return {d(in.u), d(in.p), d(in.T), d(in.inv_rho), d(in.phi)};
}

} // namespace

void eval_node_terms_with_tau(const FlowField& field, const GasSpec& gas,
                              std::span<const double> tau, Workspace& ws) {
    const int n = field.n();
    if (static_cast<int>(tau.size()) != n)
        throw std::invalid_argument("tau array length must match the field");
    if (static_cast<int>(ws.prim.u.size()) != n)
        throw std::logic_error("eval_node_terms_with_tau: primitives not current");

    ws.inv_rho.resize(n);
    ws.phi.resize(n);
    auto& t = ws.terms;
    t.w.resize(n);
    t.jm.resize(n);
    t.pi_xx.resize(n);
    t.q.resize(n);

    // Loop-invariant gas scalars, hoisted so the transport evaluation below
    // performs the operation sequence of sound_unit_transport.
    const double gamma = gas.gamma;
    const double omega = gas.omega;
    const double eta_ref = reference_viscosity(gas);
    const double kappa_den = (gamma - 1.0) * gas.prandtl;
    const double sound_scale = 1.0 / std::sqrt(gamma);
    const double gm1 = gamma - 1.0;
    const double inv2h = 1.0 / (2.0 * field.h_x);

    const double* rho = field.rho.data();
    const double* mom = field.mom.data();
    for (int i = 0; i < n; ++i) {
        ws.inv_rho[i] = 1.0 / rho[i];
        ws.phi[i] = mom[i] * ws.prim.u[i] + ws.prim.p[i];
    }

    const TermInputs in{ws.prim.u.data(), ws.prim.p.data(), ws.prim.T.data(),
                        ws.inv_rho.data(), ws.phi.data()};

    auto node = [&](int i, const NodeGradients& g) {
        const double u = in.u[i];
        const double p = in.p[i];
        const double T = in.T[i];
        const double tau_i = tau[i];

        const double eta_th = eta_ref * std::pow(gamma * T, omega);
        const double eta = eta_th * sound_scale;
        const double kappa = (gamma * eta_th / kappa_den) * sound_scale;

        const double w = tau_i * ws.inv_rho[i] * g.dphi;
        const double jm = rho[i] * (u - w);
        const double pi_xx = (4.0 / 3.0) * eta * g.du +
                             u * tau_i * (rho[i] * u * g.du + g.dp) +
                             tau_i * (u * g.dp + gamma * p * g.du);
        // q = q_ns - tau rho u [ u/(gamma-1) d(p/rho)/dx + p u d(1/rho)/dx ],
        // and d(p/rho)/dx is dT/dx since R = 1.
        const double q = -kappa * g.dT -
                         tau_i * rho[i] * u * ((u / gm1) * g.dT + p * u * g.dinv);

        t.w[i] = w;
        t.jm[i] = jm;
        t.pi_xx[i] = pi_xx;
        t.q[i] = q;
    };

    for (int i = 1; i < n - 1; ++i) node(i, central_gradients(in, i, inv2h));
    node(0, onesided_gradients(in, 0, +1, inv2h));
    node(n - 1, onesided_gradients(in, n - 1, -1, inv2h));
}

void eval_node_terms(const FlowField& field, const GasSpec& gas, Model model,
                     Workspace& ws) {
    const int n = field.n();
    ws.tau.resize(n);
    if (model == Model::NS) {
        std::fill(ws.tau.begin(), ws.tau.end(), 0.0);
    } else {
        // tau = eta / (p Sc) in sound-speed units, pointwise from (T, p).
        const double gamma = gas.gamma;
        const double omega = gas.omega;
        const double eta_ref = reference_viscosity(gas);
        const double schmidt = gas.schmidt;
        const double sound_scale = 1.0 / std::sqrt(gamma);
        for (int i = 0; i < n; ++i) {
            const double eta_th = eta_ref * std::pow(gamma * ws.prim.T[i], omega);
            ws.tau[i] = (eta_th / (ws.prim.p[i] * schmidt)) * sound_scale;
        }
    }
    eval_node_terms_with_tau(field, gas, ws.tau, ws);
}

void eval_residual(const FlowField& field, Workspace& ws) {
    const int n = field.n();
    auto& res = ws.residual;
    res.rho.assign(n, 0.0);
    res.mom.assign(n, 0.0);
    res.energy.assign(n, 0.0);

    const double inv2h = 1.0 / (2.0 * field.h_x);
    const double* u = ws.prim.u.data();
    const double* p = ws.prim.p.data();
    const double* H = ws.prim.H.data();
    const double* jm = ws.terms.jm.data();
    const double* pi = ws.terms.pi_xx.data();
    const double* q = ws.terms.q.data();

    for (int i = kBoundaryLayers; i < n - kBoundaryLayers; ++i) {
        const int l = i - 1, r = i + 1;
        res.rho[i] = -(jm[r] - jm[l]) * inv2h;
        res.mom[i] = -((jm[r] * u[r] - jm[l] * u[l]) + (p[r] - p[l]) -
                       (pi[r] - pi[l])) * inv2h;
        res.energy[i] = -((jm[r] * H[r] - jm[l] * H[l]) + (q[r] - q[l]) -
                          (pi[r] * u[r] - pi[l] * u[l])) * inv2h;
    }
}

} // namespace detail

Primitives primitives(const FlowField& field, double gamma) {
    detail::Workspace ws;
    detail::eval_primitives(field, gamma, ws);
    return std::move(ws.prim);
}

std::vector<double> central_diff(std::span<const double> values, double h_x) {
    const auto n = static_cast<int>(values.size());
    if (n < 3) throw std::invalid_argument("central_diff needs at least 3 values");
    const double inv2h = 1.0 / (2.0 * h_x);
    std::vector<double> d(n);
    for (int i = 1; i < n - 1; ++i) d[i] = (values[i + 1] - values[i - 1]) * inv2h;
    d[0] = (4.0 * (values[1] - values[0]) - (values[2] - values[0])) * inv2h;
    d[n - 1] = -(4.0 * (values[n - 2] - values[n - 1]) - (values[n - 3] - values[n - 1])) * inv2h;
    return d;
}

NodeTerms qgd_node_terms(const FlowField& field, const GasSpec& gas, Model model) {
    detail::Workspace ws;
    detail::eval_primitives(field, gas.gamma, ws);
    detail::eval_node_terms(field, gas, model, ws);
    return std::move(ws.terms);
}

NodeTerms node_terms_with_tau(const FlowField& field, const GasSpec& gas,
                              std::span<const double> tau) {
    detail::Workspace ws;
    detail::eval_primitives(field, gas.gamma, ws);
    detail::eval_node_terms_with_tau(field, gas, tau, ws);
    return std::move(ws.terms);
}

Residual spatial_residual(const FlowField& field, const GasSpec& gas, Model model) {
    detail::Workspace ws;
    detail::eval_primitives(field, gas.gamma, ws);
    detail::eval_node_terms(field, gas, model, ws);
    detail::eval_residual(field, ws);
    return std::move(ws.residual);
}

} // namespace qgdshock
