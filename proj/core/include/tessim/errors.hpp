#pragma once

#include <stdexcept>
#include <string>

namespace tessim {

/// Base class for every error thrown by the library.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// An operation precondition was violated (bad argument value or range).
class InvalidInput : public Error {
public:
  using Error::Error;
};

/// Geometric precondition violated (radii ordering, non-positive dimension).
class InvalidGeometry : public InvalidInput {
public:
  using InvalidInput::InvalidInput;
};

/// Requested hydration level is not present in the sorbent record.
class UnknownHydrate : public InvalidInput {
public:
  using InvalidInput::InvalidInput;
};

/// Configuration parse or validation failure. Carries the offending line
/// number when one is known (0 otherwise).
class ConfigError : public Error {
public:
  explicit ConfigError(const std::string& what, int line = 0)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  int line() const { return line_; }

private:
  int line_;
};

/// The transient integrator diverged (NaN state, non-physical temperature,
/// or the step size collapsed without acceptance).
class SolverError : public Error {
public:
  using Error::Error;
};

/// An iterative numeric routine failed to converge. Carries the residual
/// norm at the point of failure.
class NumericError : public Error {
public:
  NumericError(const std::string& what, double residual)
      : Error(what), residual_(residual) {}
  double residual() const { return residual_; }

private:
  double residual_;
};

/// Comparison preconditions violated (mismatched volumes, label counts, ...).
class InvalidComparison : public Error {
public:
  using Error::Error;
};

}  // namespace tessim
