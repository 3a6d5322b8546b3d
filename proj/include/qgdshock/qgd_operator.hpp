#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qgdshock/gas_model.hpp"

namespace qgdshock {

// Which dissipative closure the spatial operator uses. NS is the QGD
// operator with the relaxation parameter tau forced to zero at every node.
enum class Model { NS, QGD };

Model model_from_string(std::string_view name); // "ns" | "qgd", case-insensitive
std::string to_string(Model model);

// Nodes per side whose values stay pinned to the initial condition. The
// nested central differences need a two-deep rim.
inline constexpr int kBoundaryLayers = 2;

// Conserved variables (rho, rho*u, E) on a uniform 1D grid. x(i) = x0 + i*h_x
// with h_x measured in upstream mean free paths.
struct FlowField {
    double h_x = 0.25;
    double x0 = 0.0;
    std::vector<double> rho;
    std::vector<double> mom;    // rho * u
    std::vector<double> energy; // rho u^2/2 + p/(gamma-1)

    int n() const { return static_cast<int>(rho.size()); }
    double x(int i) const { return x0 + i * h_x; }
};

// Primitive variables per node (structure-of-arrays).
struct Primitives {
    std::vector<double> u;
    std::vector<double> p;
    std::vector<double> T; // p / rho (gas constant fixed to 1)
    std::vector<double> H; // (E + p) / rho
};

// Decodes conserved variables; throws invalid_state_error naming the first
// node with nonpositive density or pressure. Requires n >= 5.
Primitives primitives(const FlowField& field, double gamma);

// Second-order first derivative: central in the interior, one-sided
// three-point formulas at the two endpoints. The one-sided values are for
// diagnostics only; the marching update never reads them.
std::vector<double> central_diff(std::span<const double> values, double h_x);

// Node-level QGD quantities: mass flux jm = rho(u - w), regularizing
// velocity w, shear stress Pi_xx, and heat flux q.
struct NodeTerms {
    std::vector<double> w;
    std::vector<double> jm;
    std::vector<double> pi_xx;
    std::vector<double> q;
};

NodeTerms qgd_node_terms(const FlowField& field, const GasSpec& gas, Model model);

// Same computation with a caller-supplied tau per node. qgd_node_terms is
// exactly this with tau from the transport closure (QGD) or all zeros (NS);
// the shared path is what makes the NS reduction bitwise.
NodeTerms node_terms_with_tau(const FlowField& field, const GasSpec& gas,
                              std::span<const double> tau);

// Time derivatives of the conserved variables. Entries are filled on
// [kBoundaryLayers, n-1-kBoundaryLayers) and zero on the pinned rim.
struct Residual {
    std::vector<double> rho;
    std::vector<double> mom;
    std::vector<double> energy;
};

Residual spatial_residual(const FlowField& field, const GasSpec& gas, Model model);

namespace detail {

// Reusable buffers for the marching hot loop; all evaluation routines write
// into these instead of allocating.
struct Workspace {
    Primitives prim;
    std::vector<double> tau;
    std::vector<double> inv_rho;
    std::vector<double> phi; // rho u^2 + p
    NodeTerms terms;
    Residual residual;
};

// Fill ws.prim; returns max_i(sqrt(T_i) + |u_i|) over all nodes.
double eval_primitives(const FlowField& field, double gamma, Workspace& ws);

// Fill ws.tau from the transport closure (zeros under NS), then ws.terms.
// Requires ws.prim current.
void eval_node_terms(const FlowField& field, const GasSpec& gas, Model model,
                     Workspace& ws);
void eval_node_terms_with_tau(const FlowField& field, const GasSpec& gas,
                              std::span<const double> tau, Workspace& ws);

// Fill ws.residual. Requires ws.prim and ws.terms current.
void eval_residual(const FlowField& field, Workspace& ws);

} // namespace detail

} // namespace qgdshock
