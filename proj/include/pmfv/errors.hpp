#pragma once

#include <stdexcept>
#include <string>

namespace pmfv {

/// Base class for all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Invalid or inconsistent geometry (degenerate boxes, broken meshes).
struct GeometryError : Error {
  using Error::Error;
};

/// Text-input parse failure; message carries the line number.
struct ParseError : Error {
  using Error::Error;
};

/// Point outside the computational domain.
struct OutOfDomainError : Error {
  using Error::Error;
};

/// Structural failure in the time-differentiation algebra (singular matrix,
/// wrong shapes, unsupported grid).
struct StructuralError : Error {
  using Error::Error;
};

/// Nonlinear solve did not converge; message carries the last residual.
struct SolveError : Error {
  SolveError(const std::string& msg, double last_residual)
      : Error(msg), residual(last_residual) {}
  double residual;
};

/// Run-configuration problem (missing key, bad value).
struct ConfigError : Error {
  using Error::Error;
};

}  // namespace pmfv
