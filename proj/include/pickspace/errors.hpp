#pragma once

#include <stdexcept>
#include <string>

namespace pickspace {

// Base of everything thrown by this library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Bad input: wrong shapes, indices out of range, violated preconditions.
// The CLI maps these to exit code 2.
struct ValidationError : Error {
  using Error::Error;
};

// The computation itself cannot proceed (singular, degenerate, ...).
// The CLI maps these to exit code 3.
struct NumericalError : Error {
  using Error::Error;
};

struct SingularGramError : NumericalError {
  using NumericalError::NumericalError;
};

// A Gram matrix with a (numerically) zero entry; the ratio-based
// algorithms require every entry to be nonzero.
struct DegenerateGramError : NumericalError {
  using NumericalError::NumericalError;
};

struct NotCompletePickError : NumericalError {
  using NumericalError::NumericalError;
};

struct ZeroPivotError : NumericalError {
  using NumericalError::NumericalError;
};

struct DimensionMismatchError : ValidationError {
  using ValidationError::ValidationError;
};

struct SizeMismatchError : ValidationError {
  using ValidationError::ValidationError;
};

struct DuplicatePointsError : ValidationError {
  using ValidationError::ValidationError;
};

struct BoundaryPointError : ValidationError {
  using ValidationError::ValidationError;
};

struct IndexOverlapError : ValidationError {
  using ValidationError::ValidationError;
};

struct InvalidWitnessError : ValidationError {
  using ValidationError::ValidationError;
};

struct NotOrthogonalError : ValidationError {
  using ValidationError::ValidationError;
};

}  // namespace pickspace
