#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace dualfgm {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Caller violated a precondition (dimension mismatch, bad parameter).
class UsageError : public Error {
 public:
  using Error::Error;
};

/// Input data failed a structural check (out-of-range index, non-stochastic row).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Malformed text input. `line()` is 1-based, 0 when unknown.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : Error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// A solver produced a non-finite value. `iteration()` is -1 outside a loop.
class NumericError : public Error {
 public:
  NumericError(const std::string& what, std::int64_t iteration)
      : Error(iteration >= 0 ? what + " (iteration " + std::to_string(iteration) + ")" : what),
        iteration_(iteration) {}
  std::int64_t iteration() const noexcept { return iteration_; }

 private:
  std::int64_t iteration_;
};

}  // namespace dualfgm
