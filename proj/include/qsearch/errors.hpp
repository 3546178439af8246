#pragma once

#include <stdexcept>
#include <string>

namespace qsearch {

// Base for everything this library throws on bad input or a violated
// precondition. The CLI maps ValidationError (and subclasses) to exit
// code 2 and RefusalError to exit code 3.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

// Malformed arguments: indices out of range, dimension mismatches,
// non-unitary gates, non-bijective permutations.
class ArgumentError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

// Source and target sets overlap without an explicit override.
class DegenerateSpecError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

// The target set is unreachable through U (coupling below threshold).
class NoCouplingError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

// A source set whose size must be a power of two is not.
class UnsupportedCardinalityError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

// Pairwise source-target couplings disagree where agreement is required.
class AsymmetricCouplingError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

// Per-source amplitudes cancel: the composite map cannot reach the target.
class DestructiveInterferenceError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

// The request is declined rather than failed: resource guards (dense matrix
// of a large program) and problem variants with no known construction.
class RefusalError : public std::runtime_error {
 public:
  explicit RefusalError(const std::string& what) : std::runtime_error(what) {}
};

// A self-test operation found the framework itself inconsistent.
class FrameworkBugError : public std::logic_error {
 public:
  explicit FrameworkBugError(const std::string& what) : std::logic_error(what) {}
};

}  // namespace qsearch
