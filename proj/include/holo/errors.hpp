#pragma once

#include <stdexcept>
#include <string>

namespace holo {

/// Base class for all toolkit errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A structural invariant (Hermiticity, unitarity, idempotency,
/// orthonormality) is violated beyond the structural tolerance.
struct StructuralError : Error {
  double magnitude = 0.0;
  StructuralError(const std::string& what, double mag)
      : Error(what + " (magnitude " + std::to_string(mag) + ")"), magnitude(mag) {}
  explicit StructuralError(const std::string& what) : Error(what) {}
};

/// Incompatible or under-resolved time grids.
struct GridError : Error {
  using Error::Error;
};

/// Rank deficiency or a vanishing denominator.
struct DegeneracyError : Error {
  double magnitude = 0.0;
  DegeneracyError(const std::string& what, double mag)
      : Error(what + " (magnitude " + std::to_string(mag) + ")"), magnitude(mag) {}
  explicit DegeneracyError(const std::string& what) : Error(what) {}
};

/// A vector passed as tangent is not tangent at the given frame.
struct TangencyError : Error {
  double magnitude = 0.0;
  TangencyError(const std::string& what, double mag)
      : Error(what + " (magnitude " + std::to_string(mag) + ")"), magnitude(mag) {}
};

/// A subspace path that must close fails to close.
struct OpenLoopError : Error {
  double defect = 0.0;
  OpenLoopError(const std::string& what, double d)
      : Error(what + " (defect " + std::to_string(d) + ")"), defect(d) {}
};

/// Ambient dimension too small for the requested construction.
struct CodimensionError : Error {
  using Error::Error;
};

/// A protocol verification clause failed.
struct VerificationError : Error {
  using Error::Error;
};

/// Unreadable or malformed input files / options (CLI layer).
struct InputError : Error {
  using Error::Error;
};

}  // namespace holo
