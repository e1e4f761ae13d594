#pragma once

#include <stdexcept>
#include <string>

namespace manypoints {

enum class ErrorKind {
  InvalidField,
  DivisionByZero,
  FieldMismatch,
  InvalidInput,
  Parse,
  Singular,
  Unsupported,
  Inconsistent,
  Validation,
};

/// Base exception for everything the library throws on purpose.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace manypoints
