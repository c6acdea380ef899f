#pragma once

#include <stdexcept>
#include <string>

namespace junction {

/// Malformed or out-of-contract input data (bad JSON, out-of-range densities,
/// wrong vector lengths). The CLI maps these to exit status 1.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A mathematical precondition does not hold for otherwise well-formed data.
/// The CLI maps every subclass to exit status 2.
class PreconditionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DomainError : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

class InfeasibleFluxError : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

class InadmissibleFluxError : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

class TopologyError : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

class InvalidMatrixError : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

class DegeneracyError : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

class UnbalancedError : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

class FaceMismatchError : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

class CflError : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

}  // namespace junction
