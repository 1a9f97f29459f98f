#pragma once

#include <stdexcept>
#include <string>

namespace leosim {

// Base for every error raised by the library. Callers that only care about
// "something went wrong with the inputs" catch this.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid values supplied by the caller (ranges, unknown names, frames).
class InputError : public Error {
 public:
  using Error::Error;
};

// Numerical failure inside an otherwise valid computation.
class ComputationError : public Error {
 public:
  using Error::Error;
};

// TLE problems. FormatError covers structural defects (length, line tags,
// catalog mismatch), ChecksumError a bad column-69 digit and FieldError an
// unparsable fixed-column field.
class TleError : public InputError {
 public:
  using InputError::InputError;
};

class FormatError : public TleError {
 public:
  using TleError::TleError;
};

class ChecksumError : public TleError {
 public:
  ChecksumError(int line, int expected, int found)
      : TleError("TLE line " + std::to_string(line) + " checksum mismatch: expected " +
                 std::to_string(expected) + ", found " + std::to_string(found)),
        line_(line),
        expected_(expected) {}

  int line() const noexcept { return line_; }
  int expected_digit() const noexcept { return expected_; }

 private:
  int line_;
  int expected_;
};

class FieldError : public TleError {
 public:
  FieldError(int line, int first_column, int last_column, const std::string& what)
      : TleError("TLE line " + std::to_string(line) + " columns " + std::to_string(first_column) +
                 "-" + std::to_string(last_column) + ": " + what),
        first_(first_column),
        last_(last_column) {}

  int first_column() const noexcept { return first_; }
  int last_column() const noexcept { return last_; }

 private:
  int first_;
  int last_;
};

}  // namespace leosim
