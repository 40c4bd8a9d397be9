#pragma once

#include <stdexcept>
#include <string>

namespace psipoint {

/// Raised when an internal identity that must hold exactly does not: a
/// failed exact division, an oracle mismatch, a broken invariant.
class ConsistencyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NonExactDivision : public ConsistencyError {
 public:
  using ConsistencyError::ConsistencyError;
};

class SingularGrid : public ConsistencyError {
 public:
  using ConsistencyError::ConsistencyError;
};

class OracleNotValidated : public ConsistencyError {
 public:
  using ConsistencyError::ConsistencyError;
};

/// A kernel evaluation point with some pair (a_p, a_q) = (0, 0).
class DegenerateA : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace psipoint
