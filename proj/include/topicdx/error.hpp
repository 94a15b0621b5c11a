#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace topicdx {

/// Every failure the library reports. The CLI maps the category of a code
/// onto its exit status.
enum class ErrorCode {
  // input / parse
  MissingColumn,
  BadTimestamp,
  UnknownSpeaker,
  ColumnCountMismatch,
  NonMonotonicTimestamps,
  NonNumericCell,
  FileNotFound,
  BadFormat,
  // pipeline invariants
  InvalidWindow,
  EmptyDataset,
  EmptySegment,
  LayoutMismatch,
  LengthMismatch,
  DegenerateInput,
  EmptySubset,
  NoUsableFeatures,
  TooFewSamples,
  DegenerateLabels,
  KTooLarge,
  EmptyInput,
  NonFiniteFeature,
  DimensionMismatch,
  OverlapError,
  InvalidSpec,
  // output
  IoError,
};

enum class ErrorCategory { Input, Pipeline, Io };

constexpr ErrorCategory category_of(ErrorCode code) {
  switch (code) {
    case ErrorCode::MissingColumn:
    case ErrorCode::BadTimestamp:
    case ErrorCode::UnknownSpeaker:
    case ErrorCode::ColumnCountMismatch:
    case ErrorCode::NonMonotonicTimestamps:
    case ErrorCode::NonNumericCell:
    case ErrorCode::FileNotFound:
    case ErrorCode::BadFormat:
      return ErrorCategory::Input;
    case ErrorCode::IoError:
      return ErrorCategory::Io;
    default:
      return ErrorCategory::Pipeline;
  }
}

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }
  ErrorCategory category() const noexcept { return category_of(code_); }

 private:
  ErrorCode code_;
};

}  // namespace topicdx
