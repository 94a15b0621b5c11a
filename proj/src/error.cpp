#include "topicdx/error.hpp"

namespace topicdx {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::MissingColumn: return "MissingColumn";
    case ErrorCode::BadTimestamp: return "BadTimestamp";
    case ErrorCode::UnknownSpeaker: return "UnknownSpeaker";
    case ErrorCode::ColumnCountMismatch: return "ColumnCountMismatch";
    case ErrorCode::NonMonotonicTimestamps: return "NonMonotonicTimestamps";
    case ErrorCode::NonNumericCell: return "NonNumericCell";
    case ErrorCode::FileNotFound: return "FileNotFound";
    case ErrorCode::BadFormat: return "BadFormat";
    case ErrorCode::InvalidWindow: return "InvalidWindow";
    case ErrorCode::EmptyDataset: return "EmptyDataset";
    case ErrorCode::EmptySegment: return "EmptySegment";
    case ErrorCode::LayoutMismatch: return "LayoutMismatch";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::DegenerateInput: return "DegenerateInput";
    case ErrorCode::EmptySubset: return "EmptySubset";
    case ErrorCode::NoUsableFeatures: return "NoUsableFeatures";
    case ErrorCode::TooFewSamples: return "TooFewSamples";
    case ErrorCode::DegenerateLabels: return "DegenerateLabels";
    case ErrorCode::KTooLarge: return "KTooLarge";
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::NonFiniteFeature: return "NonFiniteFeature";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::OverlapError: return "OverlapError";
    case ErrorCode::InvalidSpec: return "InvalidSpec";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace topicdx
