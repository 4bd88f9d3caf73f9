#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace infcomm {

// Base for every error raised by the library. The CLI maps these to exit
// code 3; usage errors are handled by the front end itself.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// Argument outside the mathematical domain of an operation (negative weight,
// empty vertex set, gamma outside (2,3), ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

// Balanced density with a non-positive denominator.
class SingularityError : public DomainError {
 public:
  using DomainError::DomainError;
};

// Precondition of an operation was violated by the caller.
class ContractError : public Error {
 public:
  using Error::Error;
};

// Algorithm invoked with an aggregation it cannot handle correctly.
class UnsupportedFunction : public Error {
 public:
  using Error::Error;
};

// Enumeration guard tripped (input too large for an exponential algorithm).
class Refusal : public Error {
 public:
  using Error::Error;
};

}  // namespace infcomm
