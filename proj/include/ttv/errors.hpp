#pragma once

#include <stdexcept>

namespace ttv {

/// Base class for all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Operand shapes are inconsistent with each other or with the operation.
struct ShapeError : Error {
  using Error::Error;
};

/// Invalid numeric data: division by zero, NaN/Inf where finite values are required.
struct NumericError : Error {
  using Error::Error;
};

/// A configuration or argument value is out of range.
struct ParamError : Error {
  using Error::Error;
};

/// File format or filesystem failure.
struct IoError : Error {
  using Error::Error;
};

}  // namespace ttv
