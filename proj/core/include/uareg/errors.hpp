#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace uareg {

/// Precondition violated by the caller (bad exponent, bad size, bad name).
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Malformed text input. Carries the 1-based line number when known (0 otherwise).
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line = 0)
      : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Requested object would exceed a size guard.
class ResourceLimit : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// A kernel was read on the diagonal, where it is undefined.
class DiagonalAccess : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class AssemblyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SolveError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An experiment refused to run because a measured hypothesis did not hold.
/// The measurements that failed are attached.
class HypothesisError : public std::runtime_error {
 public:
  HypothesisError(const std::string& what, std::vector<double> measured)
      : std::runtime_error(what), measured_(std::move(measured)) {}
  const std::vector<double>& measured() const noexcept { return measured_; }

 private:
  std::vector<double> measured_;
};

}  // namespace uareg
