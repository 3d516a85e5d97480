#pragma once

#include <stdexcept>
#include <string>

namespace wyd {

/// Root of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input: non-finite entries, non-Hermitian data, bad traces.
class InputError : public Error {
 public:
  using Error::Error;
};

/// Shape or tensor-factor bookkeeping mismatch.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// A parameter (p, t, lambda, regime) outside the supported range.
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// A scalar function evaluated outside its domain.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Support/kernel convention violated, e.g. ker B not contained in ker A.
class KernelError : public Error {
 public:
  using Error::Error;
};

/// Inputs that were required to commute do not.
class CommutationError : public Error {
 public:
  using Error::Error;
};

/// Operator norm above one where a contraction is required.
class ContractionError : public Error {
 public:
  using Error::Error;
};

/// Instance too large for the dense desk-scale routines.
class SizeError : public Error {
 public:
  using Error::Error;
};

/// Quadrature, optimizer or eigensolver failed to reach its accuracy target.
class NumericalError : public Error {
 public:
  NumericalError(const std::string& what, double estimate = 0.0)
      : Error(what), estimate_(estimate) {}
  double estimate() const noexcept { return estimate_; }

 private:
  double estimate_;
};

}  // namespace wyd
