// SPDX-License-Identifier: MIT
#include "bregman/error.hpp"

namespace bregman {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::IndeterminateForm: return "IndeterminateForm";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::AllInfinite: return "AllInfinite";
    case ErrorCode::Unbounded: return "Unbounded";
    case ErrorCode::TooFewFinite: return "TooFewFinite";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::DomainEdge: return "DomainEdge";
    case ErrorCode::NotLegendre: return "NotLegendre";
    case ErrorCode::OutsideInterior: return "OutsideInterior";
    case ErrorCode::UnknownInstance: return "UnknownInstance";
    case ErrorCode::UnknownExample: return "UnknownExample";
    case ErrorCode::AllFinite: return "AllFinite";
    case ErrorCode::AllUnbounded: return "AllUnbounded";
    case ErrorCode::HypothesesUnmet: return "HypothesesUnmet";
    case ErrorCode::RangeAssumptionFailed: return "RangeAssumptionFailed";
    case ErrorCode::DomainNotFull: return "DomainNotFull";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

void raise(ErrorCode code, const std::string& what) { throw Error(code, what); }

}  // namespace bregman
