#include "irrtest/error.hpp"

namespace irrtest {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NonPrimeCharacteristic: return "NonPrimeCharacteristic";
    case ErrorKind::ReducibleModulus: return "ReducibleModulus";
    case ErrorKind::OrderOverflow: return "OrderOverflow";
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::UnknownVariable: return "UnknownVariable";
    case ErrorKind::ArityMismatch: return "ArityMismatch";
    case ErrorKind::FieldMismatch: return "FieldMismatch";
    case ErrorKind::EmptyList: return "EmptyList";
    case ErrorKind::UnsupportedSize: return "UnsupportedSize";
    case ErrorKind::RangeError: return "RangeError";
    case ErrorKind::TooLarge: return "TooLarge";
    case ErrorKind::InfeasibleOrder: return "InfeasibleOrder";
    case ErrorKind::DomainTooLarge: return "DomainTooLarge";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Error";
}

}  // namespace irrtest
