#pragma once

#include <stdexcept>

namespace rdec {

/// Invalid user-supplied parameters: bad order, malformed flags, empty input.
struct ConfigError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// A run cannot be continued: nonpositive relaxation factor or a non-finite
/// state vector.
struct NumericalAbort : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A scalar root solve failed: no bracket, no convergence, or no admissible
/// root.
struct SolverFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace rdec
