#pragma once

#include <stdexcept>
#include <string>

namespace homeuler {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Arguments outside the mathematical domain (x <= 0 under a fractional
/// power, lambda == 1, no elliptic region for the given sign of B, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Adaptive step or quadrature control could not reach the requested accuracy.
class ToleranceNotMet : public Error {
 public:
  using Error::Error;
};

/// Pressure level outside the open elliptic range.
class NoEllipticOrbit : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Pressure level too close to an end of the elliptic range.
class DegenerateOrbit : public DomainError {
 public:
  using DomainError::DomainError;
};

/// No 2*pi/n periodic orbit exists for the requested winding.
class NoSolution : public Error {
 public:
  using Error::Error;
};

/// Isochronous case: every level is periodic, the caller must choose one.
class ContinuumCase : public Error {
 public:
  using Error::Error;
};

/// The reconstructed profile did not return to its starting point.
class ClosureFailure : public Error {
 public:
  using Error::Error;
};

}  // namespace homeuler
