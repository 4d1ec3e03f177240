#pragma once

#include <stdexcept>
#include <string>

namespace torihull {

// Numeric values double as CLI exit codes.
enum class ErrorKind {
  numerical = 1,
  input = 2,
  cap_exceeded = 3,
  margin = 4,
  assumption = 5,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class InputError : public Error {
 public:
  explicit InputError(const std::string& what) : Error(ErrorKind::input, what) {}
};

class CapExceededError : public Error {
 public:
  explicit CapExceededError(const std::string& what) : Error(ErrorKind::cap_exceeded, what) {}
};

class MarginError : public Error {
 public:
  explicit MarginError(const std::string& what) : Error(ErrorKind::margin, what) {}
};

class AssumptionError : public Error {
 public:
  explicit AssumptionError(const std::string& what) : Error(ErrorKind::assumption, what) {}
};

class NumericalError : public Error {
 public:
  explicit NumericalError(const std::string& what) : Error(ErrorKind::numerical, what) {}
};

}  // namespace torihull
