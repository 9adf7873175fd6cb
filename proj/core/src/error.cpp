#include "gaborlab/error.hpp"

namespace gaborlab {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::NonAlignedShift: return "NonAlignedShift";
    case ErrorCode::AliasedFrequency: return "AliasedFrequency";
    case ErrorCode::GridMismatch: return "GridMismatch";
    case ErrorCode::NonAlignedGrid: return "NonAlignedGrid";
    case ErrorCode::GridTooCoarse: return "GridTooCoarse";
    case ErrorCode::GridTooSmall: return "GridTooSmall";
    case ErrorCode::SupportOutOfRange: return "SupportOutOfRange";
    case ErrorCode::ZeroFunction: return "ZeroFunction";
    case ErrorCode::UnknownPoint: return "UnknownPoint";
    case ErrorCode::InfeasiblePlan: return "InfeasiblePlan";
    case ErrorCode::InsufficientSpread: return "InsufficientSpread";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::TooManyFunctions: return "TooManyFunctions";
    case ErrorCode::NotLacunary: return "NotLacunary";
    case ErrorCode::OverlappingIntervals: return "OverlappingIntervals";
    case ErrorCode::ConfigError: return "ConfigError";
  }
  return "Unknown";
}

}  // namespace gaborlab
