#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace nuframe {

enum class ErrorCode {
  InvalidArgument,
  Overflow,
  // lattice
  RejectNonPositiveN,
  RejectEvenR,
  RejectNotCoprime,
  RejectRange,
  // symfunc
  SyntaxError,
  BadIndicatorBounds,
  UnknownIdentifier,
  NodeLimitExceeded,
  NegativeSqrt,
  ZeroScale,
  // setup
  IndexOutOfRange,
  ThetaMissing,
  ThetaNotPositive,
  TooFewFilters,
  // analysis
  LengthMismatch,
  BadGrid,
  SupportViolation,
  UepPreconditionFailed,
  TruncationGuard,
  // signals
  BadInterval,
  UnsupportedSignal,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Single exception type for the library. Parser failures carry the byte
/// offset of the offending input position.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message,
        std::optional<std::size_t> offset = std::nullopt);

  ErrorCode code() const noexcept { return code_; }
  std::optional<std::size_t> offset() const noexcept { return offset_; }

 private:
  ErrorCode code_;
  std::optional<std::size_t> offset_;
};

}  // namespace nuframe
