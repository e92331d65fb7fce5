#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace ricker {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on the inputs does not hold (log of zero, negative rate,
/// violated matching condition, improper quadratic, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// An exponent exceeded the configured cap before exponentiation.
/// `index` is the time index whose update overflowed.
class OverflowError : public Error {
 public:
  OverflowError(const std::string& what, std::int64_t index)
      : Error(what + " (at index " + std::to_string(index) + ")"), index_(index) {}

  [[nodiscard]] std::int64_t index() const noexcept { return index_; }

 private:
  std::int64_t index_;
};

/// A numerical procedure finished but its self-check failed
/// (e.g. an eigensequence that does not close up after one period).
class NumericalError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace ricker
