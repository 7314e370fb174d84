#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace diamond7 {

/// Base of every error raised by the engine. Mathematical check failures are
/// reported through Report values, not exceptions; exceptions signal that a
/// computation could not be carried out at all.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A caller violated an operation's precondition (bad index, modulus < 2, ...).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Coefficient access beyond the window a series is known to be correct on.
class PrecisionError : public Error {
 public:
  using Error::Error;
};

class NonUnitLeading : public Error {
 public:
  using Error::Error;
};

class FractionalExponent : public Error {
 public:
  using Error::Error;
};

class IntegralityViolation : public Error {
 public:
  using Error::Error;
};

class DivisibilityViolation : public Error {
 public:
  using Error::Error;
};

class SchemaError : public Error {
 public:
  using Error::Error;
};

class CoverageError : public Error {
 public:
  using Error::Error;
};

class ShapeViolation : public Error {
 public:
  using Error::Error;
};

class VerificationFailure : public Error {
 public:
  using Error::Error;
};

class NoSolution : public Error {
 public:
  using Error::Error;
};

class NonIntegralSolution : public Error {
 public:
  using Error::Error;
};

class UnderdeterminedWindow : public Error {
 public:
  using Error::Error;
};

class AnchorOrderViolation : public Error {
 public:
  using Error::Error;
};

/// A q-series computation would need more input terms than the configured
/// budget allows. `required()` is the input window that would be needed.
class InsufficientPrecision : public Error {
 public:
  InsufficientPrecision(const std::string& what, std::int64_t required)
      : Error(what), required_(required) {}
  std::int64_t required() const noexcept { return required_; }

 private:
  std::int64_t required_;
};

}  // namespace diamond7
