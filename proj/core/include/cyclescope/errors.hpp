#pragma once

#include <stdexcept>
#include <string>

namespace cyclescope {

// Base for every error the library raises. The CLI maps subclasses to exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input outside an operation's mathematical domain (h outside (0,1), bad indices, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

// Evaluation too close to the singular locus 1 + 2xy = 0.
class SingularLocusError : public DomainError {
 public:
  using DomainError::DomainError;
};

// A numerical kernel failed to reach its tolerance.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

// Least-squares system too ill-conditioned to trust.
class RankDeficiencyError : public ConvergenceError {
 public:
  using ConvergenceError::ConvergenceError;
};

// An internal identity check (witness test, dual-form check) failed.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Malformed input file or argument.
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace cyclescope
