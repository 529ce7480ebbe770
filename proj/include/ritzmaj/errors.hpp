#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ritzmaj {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Non-finite entries or otherwise malformed numerical input.
class InputDomainError : public Error {
 public:
  using Error::Error;
};

/// A precondition stated by an operation was violated by the caller.
class ContractError : public Error {
 public:
  using Error::Error;
};

/// An iterative kernel failed to converge.
class NumericalFailure : public Error {
 public:
  NumericalFailure(const std::string& what, int iterations)
      : Error(what + " (after " + std::to_string(iterations) + " sweeps)"), iterations_(iterations) {}
  int iterations() const noexcept { return iterations_; }

 private:
  int iterations_;
};

/// Input matrix does not have full column rank.
class RankError : public Error {
 public:
  RankError(const std::string& what, double smallest_singular_value)
      : Error(what), smallest_(smallest_singular_value) {}
  double smallest_singular_value() const noexcept { return smallest_; }

 private:
  double smallest_;
};

/// Not enough room in the orthogonal complement for the requested angles.
class CapacityError : public Error {
 public:
  using Error::Error;
};

/// A hard-coded reproduction did not produce the expected values.
class ReproductionFailure : public Error {
 public:
  using Error::Error;
};

/// Malformed matrix text file.
class ParseError : public Error {
 public:
  ParseError(const std::string& source, std::size_t line, const std::string& what)
      : Error(source + ":" + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace ritzmaj
