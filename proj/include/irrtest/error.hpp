#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace irrtest {

enum class ErrorKind {
  NonPrimeCharacteristic,
  ReducibleModulus,
  OrderOverflow,
  DivisionByZero,
  SyntaxError,
  UnknownVariable,
  ArityMismatch,
  FieldMismatch,
  EmptyList,
  UnsupportedSize,
  RangeError,
  TooLarge,
  InfeasibleOrder,
  DomainTooLarge,
  InvalidArgument,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library carries one of the kinds above so
/// callers (and the CLI exit-code mapping) can branch on it.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message),
        kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Syntax errors from the polynomial and matrix readers; position is a
/// 0-based byte offset into the input text.
class ParseError : public Error {
 public:
  ParseError(ErrorKind kind, std::size_t position, const std::string& message)
      : Error(kind, message + " at position " + std::to_string(position)),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

}  // namespace irrtest
