#pragma once

#include <stdexcept>
#include <string>

namespace rotopulse {

/// Base class for every error thrown by this library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Input point cannot be rescaled onto the requested manifold
/// (non-positive norm on the sphere, wrong sign or lower sheet on the
/// hyperboloid).
struct NotProjectable : Error {
  using Error::Error;
};

/// Container sizes passed to one call disagree.
struct LengthMismatch : Error {
  using Error::Error;
};

/// A state violates the manifold constraint, the tangency constraint,
/// or the sheet condition beyond tolerance.
struct OffManifold : Error {
  using Error::Error;
};

/// A size parameter that must be positive (or a radius that must stay
/// away from a degenerate limit) is not.
struct DegenerateSize : Error {
  using Error::Error;
};

/// A scalar argument is outside the mathematical domain of the call.
struct DomainError : Error {
  using Error::Error;
};

/// An operation that requires a hyperbolic-class trajectory was given
/// something else.
struct NotHyperbolicClass : Error {
  using Error::Error;
};

/// The adaptive integrator cannot satisfy the error tolerance without
/// shrinking the step below the configured minimum.
struct StepUnderflow : Error {
  using Error::Error;
};

/// Two bodies are at (or numerically indistinguishable from) a
/// configuration where the pairwise force diverges.
struct SingularConfiguration : Error {
  int i, j;
  SingularConfiguration(int i_, int j_, const std::string& what)
      : Error(what), i(i_), j(j_) {}
};

/// A pairwise quantity (chord denominator) degenerates for bodies i, j.
struct SingularPair : Error {
  int i, j;
  SingularPair(int i_, int j_, const std::string& what)
      : Error(what), i(i_), j(j_) {}
};

}  // namespace rotopulse
