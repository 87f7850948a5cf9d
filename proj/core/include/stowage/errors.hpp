#pragma once

#include <stdexcept>
#include <string>

namespace stowage {

// Raised when a caller breaks an operation's precondition (empty-slot extraction,
// floating placement, stepping a finished episode, ...).
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Raised for malformed scenario specs, instances, or experiment configs.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace stowage
