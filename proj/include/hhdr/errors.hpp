#pragma once

#include <stdexcept>
#include <string>

namespace hhdr {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A value handed to the library violates a documented invariant.
class InvalidInput : public Error {
 public:
  using Error::Error;
};

/// A precondition on the shape or extent of the data does not hold.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// A matrix that must be inverted is (numerically) singular.
class DegeneracyError : public Error {
 public:
  DegeneracyError(const std::string& what, double magnitude)
      : Error(what), magnitude_(magnitude) {}
  /// |det| or comparable measure that triggered the failure.
  double magnitude() const { return magnitude_; }

 private:
  double magnitude_;
};

/// An iterative procedure did not converge.
class NonConvergence : public Error {
 public:
  NonConvergence(const std::string& what, double last_residual)
      : Error(what), last_residual_(last_residual) {}
  double last_residual() const { return last_residual_; }

 private:
  double last_residual_;
};

/// An eigen-solver or comparable numeric kernel reported failure.
class NumericError : public Error {
 public:
  using Error::Error;
};

/// Malformed configuration text. Carries the 1-based line number (0 when
/// the error is not tied to a line).
class ConfigError : public Error {
 public:
  ConfigError(const std::string& what, int line)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

}  // namespace hhdr
