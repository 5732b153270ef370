#include "nuframe/errors.hpp"

namespace nuframe {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::Overflow: return "Overflow";
    case ErrorCode::RejectNonPositiveN: return "RejectNonPositiveN";
    case ErrorCode::RejectEvenR: return "RejectEvenR";
    case ErrorCode::RejectNotCoprime: return "RejectNotCoprime";
    case ErrorCode::RejectRange: return "RejectRange";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::BadIndicatorBounds: return "BadIndicatorBounds";
    case ErrorCode::UnknownIdentifier: return "UnknownIdentifier";
    case ErrorCode::NodeLimitExceeded: return "NodeLimitExceeded";
    case ErrorCode::NegativeSqrt: return "NegativeSqrt";
    case ErrorCode::ZeroScale: return "ZeroScale";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::ThetaMissing: return "ThetaMissing";
    case ErrorCode::ThetaNotPositive: return "ThetaNotPositive";
    case ErrorCode::TooFewFilters: return "TooFewFilters";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::BadGrid: return "BadGrid";
    case ErrorCode::SupportViolation: return "SupportViolation";
    case ErrorCode::UepPreconditionFailed: return "UepPreconditionFailed";
    case ErrorCode::TruncationGuard: return "TruncationGuard";
    case ErrorCode::BadInterval: return "BadInterval";
    case ErrorCode::UnsupportedSignal: return "UnsupportedSignal";
  }
  return "Unknown";
}

namespace {

std::string format_message(ErrorCode code, const std::string& message,
                           std::optional<std::size_t> offset) {
  std::string out(to_string(code));
  if (offset) out += " at byte " + std::to_string(*offset);
  if (!message.empty()) out += ": " + message;
  return out;
}

}  // namespace

Error::Error(ErrorCode code, const std::string& message,
             std::optional<std::size_t> offset)
    : std::runtime_error(format_message(code, message, offset)),
      code_(code),
      offset_(offset) {}

}  // namespace nuframe
