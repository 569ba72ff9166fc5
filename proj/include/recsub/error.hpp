#pragma once

#include <stdexcept>
#include <string>

namespace recsub {

/// Base for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input data: out-of-range endpoints, invalid subgraphs, bad
/// parameter combinations.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Solver or parameter configuration that cannot be honored (e.g. a > c for
/// the partition solver, size guard on the exact oracle).
class ConfigError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace recsub
