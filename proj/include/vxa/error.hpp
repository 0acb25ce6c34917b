#pragma once

#include <stdexcept>
#include <string>

namespace vxa {

enum class ErrorCode {
  kModeMismatch,
  kNotInvertible,
  kNotInvertibleChange,
  kInvalidMode,
  kDomainError,
  kTruncationUnderflow,
  kWindowExhausted,
  kFlowNotRational,
  kArityMismatch,
  kNoConstant,
};

inline const char* error_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::kModeMismatch: return "ModeMismatch";
    case ErrorCode::kNotInvertible: return "NotInvertible";
    case ErrorCode::kNotInvertibleChange: return "NotInvertibleChange";
    case ErrorCode::kInvalidMode: return "InvalidMode";
    case ErrorCode::kDomainError: return "DomainError";
    case ErrorCode::kTruncationUnderflow: return "TruncationUnderflow";
    case ErrorCode::kWindowExhausted: return "WindowExhausted";
    case ErrorCode::kFlowNotRational: return "FlowNotRational";
    case ErrorCode::kArityMismatch: return "ArityMismatch";
    case ErrorCode::kNoConstant: return "NoConstant";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_name(code)) + ": " + what), code_(code) {}
  ErrorCode code() const { return code_; }

  /// Resource-bound errors map to CLI exit code 3.
  bool is_resource_bound() const {
    return code_ == ErrorCode::kTruncationUnderflow ||
           code_ == ErrorCode::kWindowExhausted ||
           code_ == ErrorCode::kFlowNotRational;
  }

 private:
  ErrorCode code_;
};

}  // namespace vxa
