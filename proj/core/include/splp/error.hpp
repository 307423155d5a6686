#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace splp {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Caller supplied data that violates a documented precondition.
class InvalidInput : public Error {
 public:
  using Error::Error;
};

/// An iterative method hit its iteration cap. Carries the best residual seen.
class ConvergenceFailure : public Error {
 public:
  ConvergenceFailure(const std::string& what, double best_residual)
      : Error(what), best_residual_(best_residual) {}

  double best_residual() const noexcept { return best_residual_; }

 private:
  double best_residual_;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : Error(line == 0 ? what : "line " + std::to_string(line) + ": " + what),
        line_(line) {}

  /// 1-based line number, 0 when the error is not tied to a line.
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace splp
