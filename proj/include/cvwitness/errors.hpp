#pragma once

#include <stdexcept>
#include <string>

namespace cvw {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InvalidCutoffError : Error { using Error::Error; };
struct LabelCollisionError : Error { using Error::Error; };
struct ModeNotFoundError : Error { using Error::Error; };
struct CutoffTooSmallError : Error { using Error::Error; };
struct IllDefinedStateError : Error { using Error::Error; };
struct NonUnitaryError : Error { using Error::Error; };
struct NumericalInconsistencyError : Error { using Error::Error; };
struct OptimizationUndefinedError : Error { using Error::Error; };
struct TooLargeError : Error { using Error::Error; };
struct InvalidArgumentError : Error { using Error::Error; };

}  // namespace cvw
