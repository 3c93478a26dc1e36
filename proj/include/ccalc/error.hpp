#pragma once

#include <stdexcept>
#include <string>

namespace ccalc {

// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Non-finite entries, shape mismatches, malformed exchange files.
class InvalidInput : public Error {
 public:
  using Error::Error;
};

// Schatten index p < 1 (or NaN).
class InvalidIndex : public Error {
 public:
  using Error::Error;
};

// Zero or otherwise unusable dimension.
class InvalidDimension : public Error {
 public:
  using Error::Error;
};

// An operation was called outside its documented domain, e.g. a polynomial
// whose degree is too large for the requested quadrature grid.
class PreconditionViolation : public Error {
 public:
  using Error::Error;
};

// A verified claim did not hold. The message names the claim.
class ClaimFailure : public Error {
 public:
  using Error::Error;
};

}  // namespace ccalc
