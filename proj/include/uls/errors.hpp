#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace uls {

enum class ErrorCode {
  InvalidArgument,
  NotPurelyImaginary,
  OrderViolation,
  ModuleMismatch,
  RationallyDependent,
  FrequencyOutOfRange,
  GridMismatch,
  SupportExceeded,
  WindowExceedsTorus,
  QuadratureNotConverged,
  NoContraction,
  BoundViolated,
  UnknownCase,
};

std::string_view error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

inline std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::NotPurelyImaginary: return "NotPurelyImaginary";
    case ErrorCode::OrderViolation: return "OrderViolation";
    case ErrorCode::ModuleMismatch: return "ModuleMismatch";
    case ErrorCode::RationallyDependent: return "RationallyDependent";
    case ErrorCode::FrequencyOutOfRange: return "FrequencyOutOfRange";
    case ErrorCode::GridMismatch: return "GridMismatch";
    case ErrorCode::SupportExceeded: return "SupportExceeded";
    case ErrorCode::WindowExceedsTorus: return "WindowExceedsTorus";
    case ErrorCode::QuadratureNotConverged: return "QuadratureNotConverged";
    case ErrorCode::NoContraction: return "NoContraction";
    case ErrorCode::BoundViolated: return "BoundViolated";
    case ErrorCode::UnknownCase: return "UnknownCase";
  }
  return "Unknown";
}

}  // namespace uls
