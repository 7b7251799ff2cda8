#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ivt {

enum class ErrorCode {
  InvalidRadix,
  InvalidDigit,
  RadixMismatch,
  WidthTooSmall,
  IndexOutOfRange,
  OutOfStateSpace,
  SemanticsMismatch,
  StepBudgetExceeded,
  NotAFixedPoint,
  ClosureViolation,
  InvalidArgument,
};

constexpr std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidRadix: return "InvalidRadix";
    case ErrorCode::InvalidDigit: return "InvalidDigit";
    case ErrorCode::RadixMismatch: return "RadixMismatch";
    case ErrorCode::WidthTooSmall: return "WidthTooSmall";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::OutOfStateSpace: return "OutOfStateSpace";
    case ErrorCode::SemanticsMismatch: return "SemanticsMismatch";
    case ErrorCode::StepBudgetExceeded: return "StepBudgetExceeded";
    case ErrorCode::NotAFixedPoint: return "NotAFixedPoint";
    case ErrorCode::ClosureViolation: return "ClosureViolation";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

/// Every precondition violation in the library is reported with one of these.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace ivt
