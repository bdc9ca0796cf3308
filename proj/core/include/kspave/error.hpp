#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace kspave {

enum class ErrorCode {
  NonSquare,
  NotHermitian,
  NotPSD,
  NotFinite,
  IndexOutOfRange,
  DimensionMismatch,
  NotAFrame,
  NotParseval,
  NotAProjection,
  BadPartition,
  TooLarge,
  NotIdentityResolution,
  NotEtaTight,
  NotUnitNorm,
  HypothesisFails,
  NotSelfAdjoint,
  NormExceedsOne,
  NonZeroDiagonal,
  NotSingleInterval,
  EmptySet,
  NotLarge,
  DependentBasis,
  InvalidArgument,
  Parse,
  GenerationFailed,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every precondition violation in the library surfaces as this exception.
/// The code is stable and is what tests and the CLI dispatch on.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace kspave
