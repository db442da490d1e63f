#pragma once

#include <stdexcept>
#include <string>

namespace wflow {

/// A run configuration is malformed or internally inconsistent.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An integration diagnostic shows the truncated Fock space can no longer
/// represent the state faithfully (trace drift, top-level occupancy).
class TruncationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// File could not be read or written.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace wflow
