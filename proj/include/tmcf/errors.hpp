#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tmcf {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DivisionByZero : public Error {
 public:
  DivisionByZero() : Error("division by zero") {}
};

/// Raised when a series operation needs a coefficient that lies below the
/// trusted horizon.
class PrecisionExhausted : public Error {
 public:
  using Error::Error;
};

class NotASquare : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

class SizeLimit : public Error {
 public:
  using Error::Error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A linear search for a relation found nothing of the requested shape.
class EmptyKernel : public Error {
 public:
  using Error::Error;
};

/// More than one relation survives degree minimisation.
class AmbiguousKernel : public Error {
 public:
  using Error::Error;
};

/// Raised when a certified identity fails in a way that can only mean an
/// arithmetic or construction bug (e.g. a non-unit denominator where the
/// construction guarantees constant term 1).
class ConstructionError : public Error {
 public:
  using Error::Error;
};

}  // namespace tmcf
