#include "kspave/error.hpp"

namespace kspave {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NonSquare: return "NonSquare";
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::NotPSD: return "NotPSD";
    case ErrorCode::NotFinite: return "NotFinite";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NotAFrame: return "NotAFrame";
    case ErrorCode::NotParseval: return "NotParseval";
    case ErrorCode::NotAProjection: return "NotAProjection";
    case ErrorCode::BadPartition: return "BadPartition";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::NotIdentityResolution: return "NotIdentityResolution";
    case ErrorCode::NotEtaTight: return "NotEtaTight";
    case ErrorCode::NotUnitNorm: return "NotUnitNorm";
    case ErrorCode::HypothesisFails: return "HypothesisFails";
    case ErrorCode::NotSelfAdjoint: return "NotSelfAdjoint";
    case ErrorCode::NormExceedsOne: return "NormExceedsOne";
    case ErrorCode::NonZeroDiagonal: return "NonZeroDiagonal";
    case ErrorCode::NotSingleInterval: return "NotSingleInterval";
    case ErrorCode::EmptySet: return "EmptySet";
    case ErrorCode::NotLarge: return "NotLarge";
    case ErrorCode::DependentBasis: return "DependentBasis";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::Parse: return "Parse";
    case ErrorCode::GenerationFailed: return "GenerationFailed";
  }
  return "Unknown";
}

}  // namespace kspave
