#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace qspec {

// Base class for all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Shape or finiteness violations (dimension mismatch, non-finite input).
struct StructuralError : Error {
  using Error::Error;
};

// Operation needs structure the space does not carry (e.g. the algebra product).
struct UnsupportedError : Error {
  using Error::Error;
};

// Argument outside a pairing's domain restriction.
struct DomainError : Error {
  using Error::Error;
};

struct PreconditionError : Error {
  using Error::Error;
};

// Iteration budget exhausted; carries the offending point and last residual.
struct NonConvergenceError : Error {
  NonConvergenceError(const std::string& what, std::vector<double> point,
                      double residual)
      : Error(what), point(std::move(point)), residual(residual) {}
  std::vector<double> point;
  double residual = 0.0;
};

// A spectral value fell outside the interval the caller supplied.
struct BracketError : Error {
  using Error::Error;
};

// Form representation failed (residual above tolerance).
struct NotRepresentableError : Error {
  using Error::Error;
};

// Form representation hypothesis (boundedness) failed.
struct HypothesisError : Error {
  using Error::Error;
};

// Config file parse/validation failure.
struct ConfigError : Error {
  using Error::Error;
};

}  // namespace qspec
