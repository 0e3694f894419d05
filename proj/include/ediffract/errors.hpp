#pragma once

#include <stdexcept>
#include <string>

namespace ediffract {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// bad argument to a formula (n < 1, p <= 0, x3 <= 0, ...)
struct DomainError : Error { using Error::Error; };
struct SingularityError : Error { using Error::Error; };
struct ConfigError : Error { using Error::Error; };
// command and configuration do not fit together
struct UsageError : Error { using Error::Error; };
struct PathError : Error { using Error::Error; };
struct SplitError : Error { using Error::Error; };
struct UnsupportedOrderError : Error { using Error::Error; };
struct AccuracyError : Error { using Error::Error; };

}  // namespace ediffract
