#pragma once

#include <stdexcept>

namespace gapscan {

/// A violated precondition or a contradictory configuration.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Index outside the stored coefficient prefix.
class IndexError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// Malformed or unreadable input document.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An iterative numerical procedure failed to reach its tolerance.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace gapscan
