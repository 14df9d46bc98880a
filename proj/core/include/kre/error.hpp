#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace kre {

/// Base class of every exception thrown by the engine.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

struct LineError {
  std::size_t line = 0;  // 1-based
  std::string message;
};

/// Input that could not be parsed. For corpus ingestion this carries every
/// per-line failure collected before the malformed-line threshold tripped.
class ParseError : public Error {
 public:
  explicit ParseError(const std::string& what, std::vector<LineError> lines = {})
      : Error(what), lines_(std::move(lines)) {}

  const std::vector<LineError>& lines() const noexcept { return lines_; }

 private:
  std::vector<LineError> lines_;
};

struct FieldViolation {
  std::string field;
  std::string message;
};

/// A request or option set that violates one or more field constraints.
class ValidationError : public Error {
 public:
  explicit ValidationError(std::vector<FieldViolation> violations);
  ValidationError(std::string field, std::string message)
      : ValidationError(std::vector<FieldViolation>{{std::move(field), std::move(message)}}) {}

  const std::vector<FieldViolation>& violations() const noexcept { return violations_; }

 private:
  std::vector<FieldViolation> violations_;
};

class InvalidRange : public Error {
 public:
  using Error::Error;
};

class InvalidParameter : public Error {
 public:
  using Error::Error;
};

/// The service has no corpus snapshot to answer from.
class NotReady : public Error {
 public:
  using Error::Error;
};

class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace kre
