#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace qgdshock {

// A flow field carries a nonphysical state (nonpositive density, pressure,
// or temperature) at some node.
class invalid_state_error : public std::runtime_error {
  public:
    invalid_state_error(std::string what, int node)
        : std::runtime_error(std::move(what)), node_(node) {}

    int node() const noexcept { return node_; }

  private:
    int node_;
};

// The explicit time march blew up: non-finite values or sustained residual
// growth. Carries the step at which the blow-up was detected.
class divergence_error : public std::runtime_error {
  public:
    divergence_error(std::string what, std::uint64_t step)
        : std::runtime_error(std::move(what)), step_(step) {}

    std::uint64_t step() const noexcept { return step_; }

  private:
    std::uint64_t step_;
};

} // namespace qgdshock
