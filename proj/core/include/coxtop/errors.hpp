#pragma once

#include <stdexcept>
#include <string>

namespace coxtop {

/// Malformed or unsupported input supplied by a caller (bad type string,
/// dimension mismatch, inconsistent generator images, ...).
class InputError : public std::invalid_argument {
 public:
  explicit InputError(const std::string& what) : std::invalid_argument(what) {}
};

/// A computation that could not reach a definite answer within its
/// configured limits. Never used to report a wrong answer.
class UndecidedError : public std::runtime_error {
 public:
  explicit UndecidedError(const std::string& what) : std::runtime_error(what) {}
};

/// Broken internal invariant; indicates a bug upstream of the caller.
class InternalError : public std::logic_error {
 public:
  explicit InternalError(const std::string& what) : std::logic_error(what) {}
};

}  // namespace coxtop
