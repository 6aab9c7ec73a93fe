#pragma once

#include <stdexcept>
#include <string>

namespace relaynet {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A precondition on an argument was violated (index out of range, negative
// capacity, bad dimensions, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// A document or constructed object violates a declared invariant. `field`
// names the offending field.
class ValidationError : public Error {
 public:
  ValidationError(std::string field, const std::string& what)
      : Error(field + ": " + what), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

// An exhaustive routine was asked to run beyond its enumeration cap.
class LimitExceeded : public Error {
 public:
  using Error::Error;
};

// No source-to-destination path exists through nonzero links.
class DisconnectedError : public Error {
 public:
  using Error::Error;
};

}  // namespace relaynet
