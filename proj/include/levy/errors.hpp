#pragma once

#include <stdexcept>
#include <string>

namespace levy {

// Invalid argument / violated precondition.
struct DomainError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Adaptive quadrature failed to reach the requested tolerance.
struct QuadratureError : std::runtime_error {
  QuadratureError(const std::string& what, double achieved)
      : std::runtime_error(what), achieved_error(achieved) {}
  double achieved_error;
};

// Simulation or encoding would exceed a resolution guard (jump-count
// overflow, dyadic precision underflow).
struct ResolutionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Bitstream or container cannot be parsed.
struct MalformedStream : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace levy
