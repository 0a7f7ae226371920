#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace wittlab {

enum class ErrorCode {
  SyntaxError,
  NotLocal,
  TooLarge,
  NonUnit,
  DimensionMismatch,
  DegenerateSubspace,
  Degenerate,
  NotInMaximalIdeal,
  NotUnit,
  NotEqualModM,
  NotOrthogonalOverResidue,
  NotOrthogonal,
  ResidueFieldF2WithoutBFSResult,
  F2Unreachable,
  IsotropicPartialSum,
  FieldTooSmall,
  BadParameters,
  BudgetExceeded,
  InvalidInput,
  Overflow,
};

std::string_view error_code_name(ErrorCode code);

// Every library failure is reported through this type; code() identifies the
// condition, what() carries the human readable detail.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

inline std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::NotLocal: return "NotLocal";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::NonUnit: return "NonUnit";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::DegenerateSubspace: return "DegenerateSubspace";
    case ErrorCode::Degenerate: return "Degenerate";
    case ErrorCode::NotInMaximalIdeal: return "NotInMaximalIdeal";
    case ErrorCode::NotUnit: return "NotUnit";
    case ErrorCode::NotEqualModM: return "NotEqualModM";
    case ErrorCode::NotOrthogonalOverResidue: return "NotOrthogonalOverResidue";
    case ErrorCode::NotOrthogonal: return "NotOrthogonal";
    case ErrorCode::ResidueFieldF2WithoutBFSResult: return "ResidueFieldF2WithoutBFSResult";
    case ErrorCode::F2Unreachable: return "F2Unreachable";
    case ErrorCode::IsotropicPartialSum: return "IsotropicPartialSum";
    case ErrorCode::FieldTooSmall: return "FieldTooSmall";
    case ErrorCode::BadParameters: return "BadParameters";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::InvalidInput: return "InvalidInput";
    case ErrorCode::Overflow: return "Overflow";
  }
  return "Unknown";
}

}  // namespace wittlab
