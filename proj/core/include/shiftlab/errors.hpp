#pragma once

#include <stdexcept>
#include <string>

namespace shiftlab {

/// Base class for all shiftlab errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Caller broke a precondition (mixed-group operands, invalid level, ...).
struct UsageError : Error {
  using Error::Error;
};

/// A configured resource cap was exceeded (ball size, state count, ...).
/// Distinct from search-budget exhaustion, which is reported in-band.
struct ResourceError : Error {
  using Error::Error;
};

/// Requested a Folner window for a group that has none.
struct NonAmenableGroupError : UsageError {
  using UsageError::UsageError;
};

/// Input file could not be parsed or validated; carries a 1-based line.
struct ParseError : Error {
  ParseError(std::string message, int line_number)
      : Error("line " + std::to_string(line_number) + ": " + message),
        line(line_number) {}
  int line;
};

}  // namespace shiftlab
