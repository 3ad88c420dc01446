#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace sphinterp {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on an argument was violated (bad degree, empty set, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Malformed input file. Carries the source name and the 1-based line.
class ParseError : public Error {
 public:
  ParseError(std::string source, std::size_t line, const std::string& message)
      : Error(source + ":" + std::to_string(line) + ": " + message),
        source_(std::move(source)),
        line_(line) {}

  const std::string& source() const noexcept { return source_; }
  std::size_t line() const noexcept { return line_; }

 private:
  std::string source_;
  std::size_t line_;
};

/// The symmetric eigensolver did not converge.
class EigenSolverError : public Error {
 public:
  using Error::Error;
};

/// The discrete Gram matrix is singular (or eta >= 1): the rule cannot
/// support a degree-n hyperinterpolant.
class RankDeficientError : public Error {
 public:
  using Error::Error;
};

}  // namespace sphinterp
