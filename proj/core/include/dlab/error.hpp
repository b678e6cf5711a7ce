#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace dlab {

enum class ErrorCode {
  NegativeWeight,
  SelfLoop,
  IndexOutOfRange,
  SizeMismatch,
  EmptySubset,
  DuplicateVertex,
  NonPositiveMeasure,
  SizeOverflow,
  IsolatedVertex,
  NonIncreasingSequence,
  InvalidArgument,
  ConvergenceFailure,
  IncompleteSpectrum,
  SingularForm,
  WrongKind,
  BadEnumeration,
  MissingEstimate,
  ParseError,
  ConfigError,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Single exception type for the library; `code()` identifies the failure class.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  [[nodiscard]] ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace dlab
