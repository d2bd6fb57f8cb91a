#pragma once

#include <stdexcept>
#include <string>

namespace dhb {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent input (asymmetric tensor, wrong lengths, parse failures).
class InvalidInput : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

class SingularMap : public Error {
 public:
  using Error::Error;
};

/// Arithmetic that has no value (0/0 cross ratios, division by zero).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A rational potential that cannot be written in the pole/chain form.
class NotRepresentable : public Error {
 public:
  using Error::Error;
};

class NotGdhb : public Error {
 public:
  using Error::Error;
};

class ClearanceViolation : public Error {
 public:
  using Error::Error;
};

/// y1 vanished on the path; a perturbed path is needed.
class ResampleRequired : public Error {
 public:
  using Error::Error;
};

/// The integrator ran out of step size or produced non-finite values.
class IntegrationFailure : public Error {
 public:
  using Error::Error;
};

}  // namespace dhb
