#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pho {

// Input lies outside the region where a formula or model is defined.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// <1/r^4> (and everything built from it) diverges for lambda <= 1.
class SingularMomentError : public DomainError {
 public:
  using DomainError::DomainError;
};

// The 1/gamma expansion is requested for gamma below its guard.
class ExpansionDomainError : public DomainError {
 public:
  using DomainError::DomainError;
};

// A numerical kernel produced or received a non-finite value.
class EvaluationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The finite-difference oracle could not produce an accepted solution.
class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Grid too coarse for the requested accuracy of the quartic term.
class DiscretizationError : public SolverError {
 public:
  using SolverError::SolverError;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace pho
