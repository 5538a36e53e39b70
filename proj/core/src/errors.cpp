#include "hqvp/errors.hpp"

namespace hqvp {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonSPDMatrix: return "NonSPDMatrix";
    case ErrorCode::NegativeGain: return "NegativeGain";
    case ErrorCode::NonSPDCovariance: return "NonSPDCovariance";
    case ErrorCode::NegativeGainViolation: return "NegativeGainViolation";
    case ErrorCode::AssumptionViolation: return "AssumptionViolation";
    case ErrorCode::GammaTooSmall: return "GammaTooSmall";
    case ErrorCode::OriginOutsideRegion: return "OriginOutsideRegion";
    case ErrorCode::EmptyRegion: return "EmptyRegion";
    case ErrorCode::InvalidDomain: return "InvalidDomain";
    case ErrorCode::NonPositiveEll: return "NonPositiveEll";
    case ErrorCode::EmptyIndexSet: return "EmptyIndexSet";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::DisconnectedGraph: return "DisconnectedGraph";
    case ErrorCode::NonConvergence: return "NonConvergence";
    case ErrorCode::RadiusTooSmall: return "RadiusTooSmall";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::VerificationFailure: return "VerificationFailure";
  }
  return "Unknown";
}

}  // namespace hqvp
