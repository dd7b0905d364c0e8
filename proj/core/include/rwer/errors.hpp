#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace rwer {

// Base class for everything thrown by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid arguments, bad flag values, out-of-range parameters.
class UsageError : public Error {
 public:
  using Error::Error;
};

class DimensionError : public UsageError {
 public:
  using UsageError::UsageError;
};

// Unreadable files, malformed input data.
class IoError : public Error {
 public:
  using Error::Error;
};

class ParseError : public IoError {
 public:
  ParseError(const std::string& what, std::size_t line)
      : IoError(what + " (line " + std::to_string(line) + ")"), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// A solver failed to produce a trustworthy result.
class NumericalError : public Error {
 public:
  using Error::Error;
};

class NonConvergence : public NumericalError {
 public:
  NonConvergence(const std::string& what, std::size_t iterations, double residual)
      : NumericalError(what + " after " + std::to_string(iterations) +
                       " iterations, residual " + std::to_string(residual)),
        iterations_(iterations),
        residual_(residual) {}

  std::size_t iterations() const noexcept { return iterations_; }
  double residual() const noexcept { return residual_; }

 private:
  std::size_t iterations_;
  double residual_;
};

class SingularMatrix : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class DenseLimitExceeded : public UsageError {
 public:
  using UsageError::UsageError;
};

}  // namespace rwer
