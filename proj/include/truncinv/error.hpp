#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace truncinv {

enum class ErrorCode {
  NotPrime,
  FieldTooLarge,
  DivisionByZero,
  FieldMismatch,
  ArityMismatch,
  NotInjective,
  NotSquare,
  NotDivisible,
  ZeroPolynomial,
  NotPolynomial,
  EmptyIndexSet,
  IndexOutOfRange,
  SpecInvalid,
  SymmetryViolation,
  ArityViolation,
  InvalidIndex,
  CompositionInvalid,
  SizeBound,
  NotHomogeneous,
  ExponentOverflow,
  ParseError,
};

std::string_view to_string(ErrorCode code);

/// Every failure raised by the library carries one of the codes above so
/// callers (and tests) can branch on the kind rather than the message.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotPrime: return "NotPrime";
    case ErrorCode::FieldTooLarge: return "FieldTooLarge";
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::FieldMismatch: return "FieldMismatch";
    case ErrorCode::ArityMismatch: return "ArityMismatch";
    case ErrorCode::NotInjective: return "NotInjective";
    case ErrorCode::NotSquare: return "NotSquare";
    case ErrorCode::NotDivisible: return "NotDivisible";
    case ErrorCode::ZeroPolynomial: return "ZeroPolynomial";
    case ErrorCode::NotPolynomial: return "NotPolynomial";
    case ErrorCode::EmptyIndexSet: return "EmptyIndexSet";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::SpecInvalid: return "SpecInvalid";
    case ErrorCode::SymmetryViolation: return "SymmetryViolation";
    case ErrorCode::ArityViolation: return "ArityViolation";
    case ErrorCode::InvalidIndex: return "InvalidIndex";
    case ErrorCode::CompositionInvalid: return "CompositionInvalid";
    case ErrorCode::SizeBound: return "SizeBound";
    case ErrorCode::NotHomogeneous: return "NotHomogeneous";
    case ErrorCode::ExponentOverflow: return "ExponentOverflow";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

}  // namespace truncinv
