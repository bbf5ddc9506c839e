#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace cec {

// Base class for all toolkit errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid values or a broken type invariant (non-finite input, non-positive
// weight, duplicate tags, ...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Input too small to fit, e.g. fewer than two distinct x values.
class DegenerateInputError : public Error {
 public:
  using Error::Error;
};

// Malformed external input. Carries the 1-based row for tabular formats or
// the byte offset for text grammars; the message always spells the location
// out as well.
class ParseError : public Error {
 public:
  explicit ParseError(const std::string& msg) : Error(msg) {}

  static ParseError at_row(const std::string& msg, std::size_t row) {
    ParseError e(msg + " (row " + std::to_string(row) + ")");
    e.row_ = row;
    return e;
  }

  static ParseError at_offset(const std::string& msg, std::size_t offset) {
    ParseError e(msg + " (byte offset " + std::to_string(offset) + ")");
    e.offset_ = offset;
    return e;
  }

  std::optional<std::size_t> row() const { return row_; }
  std::optional<std::size_t> byte_offset() const { return offset_; }

 private:
  std::optional<std::size_t> row_;
  std::optional<std::size_t> offset_;
};

}  // namespace cec
