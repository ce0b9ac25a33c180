#pragma once

#include <stdexcept>
#include <string>

namespace dkpew {

/// Point outside a solution family's domain guard, or a bad parameter.
struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};

/// Hodograph solution at (or numerically at) its breaking point.
struct CausticError : DomainError {
  using DomainError::DomainError;
};

/// A quantity that must be nonzero vanished (u_x = 0, u_xx = 0, singular metric, ...).
struct DegenerateError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Time step could not be brought under the stability bounds.
struct CflError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A solver produced NaN or infinity.
struct NonFiniteError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Iteration failed to converge.
struct ConvergenceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Malformed user configuration (unknown key, bad family id, negative tolerance).
struct ConfigError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

}  // namespace dkpew
