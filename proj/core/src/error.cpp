#include "dlab/error.hpp"

namespace dlab {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NegativeWeight: return "NegativeWeight";
    case ErrorCode::SelfLoop: return "SelfLoop";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::SizeMismatch: return "SizeMismatch";
    case ErrorCode::EmptySubset: return "EmptySubset";
    case ErrorCode::DuplicateVertex: return "DuplicateVertex";
    case ErrorCode::NonPositiveMeasure: return "NonPositiveMeasure";
    case ErrorCode::SizeOverflow: return "SizeOverflow";
    case ErrorCode::IsolatedVertex: return "IsolatedVertex";
    case ErrorCode::NonIncreasingSequence: return "NonIncreasingSequence";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ConvergenceFailure: return "ConvergenceFailure";
    case ErrorCode::IncompleteSpectrum: return "IncompleteSpectrum";
    case ErrorCode::SingularForm: return "SingularForm";
    case ErrorCode::WrongKind: return "WrongKind";
    case ErrorCode::BadEnumeration: return "BadEnumeration";
    case ErrorCode::MissingEstimate: return "MissingEstimate";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::ConfigError: return "ConfigError";
  }
  return "Unknown";
}

}  // namespace dlab
