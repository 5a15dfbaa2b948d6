#pragma once

#include <stdexcept>
#include <string>

namespace polycap {

/// Malformed or out-of-domain input (CLI exit code 2).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Request refused because it exceeds a size cap (CLI exit code 3).
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A guaranteed inequality or identity failed to hold. Always an
/// implementation bug or a violated caller-asserted precondition.
class CheckFailure : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace polycap
