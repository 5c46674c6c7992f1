#pragma once

#include <stdexcept>
#include <string>

namespace helico {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed arguments: non-unit vectors, off-manifold points, bad JSON fields.
class InvalidInput : public Error {
 public:
  using Error::Error;
};

// Operation not defined for the requested curvature or parameter range.
class Unsupported : public Error {
 public:
  using Error::Error;
};

class PlannerFailure : public Error {
 public:
  using Error::Error;
};

// Consecutive plan pieces do not chain.
class BrokenPlan : public Error {
 public:
  using Error::Error;
};

// Ruled surface with vanishing ruling velocity at the requested parameter.
class CylindricalInput : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

// Screw parameters with eta in {0, pi} and a nonzero rho*theta.
class SingularCotangent : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

}  // namespace helico
