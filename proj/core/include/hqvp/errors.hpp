#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hqvp {

enum class ErrorCode {
  NonSPDMatrix,
  NegativeGain,
  NonSPDCovariance,
  NegativeGainViolation,
  AssumptionViolation,
  GammaTooSmall,
  OriginOutsideRegion,
  EmptyRegion,
  InvalidDomain,
  NonPositiveEll,
  EmptyIndexSet,
  InvalidArgument,
  DisconnectedGraph,
  NonConvergence,
  RadiusTooSmall,
  ParseError,
  VerificationFailure,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace hqvp
