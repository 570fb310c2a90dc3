#pragma once

#include <stdexcept>
#include <string>

namespace gwcone {

/// Caller violated a documented precondition (mismatched truncations, bad indices).
class ContractError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Invalid user-facing configuration: unknown target, malformed presentation, bad window.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A z-exponent fell outside the configured window. Never silently truncated.
class WindowOverflow : public ConfigError {
 public:
  WindowOverflow(int exponent, int z_min, int z_max);
  int exponent() const { return exponent_; }

 private:
  int exponent_;
};

/// Requested correlator lies outside the stable range.
class StabilityError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// The target has no backend for the requested evaluation.
class CapabilityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace gwcone
