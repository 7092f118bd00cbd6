#pragma once

#include <stdexcept>
#include <string>

namespace kirchhoff {

/// Precondition on an argument does not hold (bad grid size, α ≤ −2, ...).
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Input data is malformed (non-finite samples, boundary value ≠ 0).
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The fiber derivative has no positive root inside the scan bracket.
class NoRootError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NonconvergenceError : public std::runtime_error {
 public:
  NonconvergenceError(const std::string& what, std::string trace)
      : std::runtime_error(what), trace_(std::move(trace)) {}
  const std::string& trace() const noexcept { return trace_; }

 private:
  std::string trace_;
};

/// Mountain-pass geometry could not be established (no negative endpoint).
class GeometryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace kirchhoff
