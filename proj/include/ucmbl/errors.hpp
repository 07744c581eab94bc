#pragma once

#include <stdexcept>
#include <string>

namespace ucmbl {

/// Base class for all errors raised by the library.
struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct NotPsdError : Error { using Error::Error; };
struct DegenerateC22Error : Error { using Error::Error; };
struct ZeroLambdaError : Error { using Error::Error; };
struct SigmaTooLargeError : Error { using Error::Error; };
struct CflViolationError : Error { using Error::Error; };
struct NonFiniteStateError : Error { using Error::Error; };
struct CompatibilityViolationError : Error { using Error::Error; };
struct DegenerateMapError : Error { using Error::Error; };
struct InsufficientSnapshotsError : Error { using Error::Error; };
struct ParseError : Error { using Error::Error; };
struct ValidationError : Error { using Error::Error; };

}  // namespace ucmbl
