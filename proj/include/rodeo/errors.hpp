#pragma once

#include <stdexcept>
#include <string>

namespace rodeo {

/// Input outside the mathematical domain of an operation (non-finite value,
/// zero ground-state weight, target suppression >= 1, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Caller misuse: empty schedules, malformed files, invalid flag values.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A numerical procedure (root bracket, quadrature, rescale search) failed.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace rodeo

namespace rodeo {

/// The post-selected branch being followed has zero norm.
class DegenerateBranchError : public NumericError {
 public:
  using NumericError::NumericError;
};

}  // namespace rodeo
