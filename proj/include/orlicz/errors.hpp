#ifndef ORLICZ_ERRORS_HPP
#define ORLICZ_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace orlicz {

// Bad parameters, grids that cannot support the requested estimate,
// malformed run configuration.
struct config_error : std::invalid_argument {
  explicit config_error(const std::string& what) : std::invalid_argument(what) {}
};

// Input data violates a structural requirement (non-monotone samples,
// zero-length groups, inconsistent tables).
struct data_error : std::runtime_error {
  explicit data_error(const std::string& what) : std::runtime_error(what) {}
};

// The requested evaluation cannot be resolved at the configured
// discretization (quadrature grid too coarse, radius too close to 1).
struct resolution_error : std::runtime_error {
  explicit resolution_error(const std::string& what) : std::runtime_error(what) {}
};

// Mesh assembly produced a degenerate element.
struct construction_error : std::runtime_error {
  explicit construction_error(const std::string& what) : std::runtime_error(what) {}
};

// A differential has nonpositive jacobian.
struct orientation_error : std::runtime_error {
  explicit orientation_error(const std::string& what) : std::runtime_error(what) {}
};

// An operation's analytic precondition does not hold for the given inputs.
struct precondition_error : std::runtime_error {
  explicit precondition_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace orlicz

#endif
