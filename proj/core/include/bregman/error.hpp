// SPDX-License-Identifier: MIT
#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace bregman {

enum class ErrorCode {
  IndeterminateForm,  // inf + (-inf)
  InvalidArgument,
  AllInfinite,
  Unbounded,
  TooFewFinite,
  OutOfRange,
  DomainEdge,
  NotLegendre,
  OutsideInterior,
  UnknownInstance,
  UnknownExample,
  AllFinite,
  AllUnbounded,
  HypothesesUnmet,
  RangeAssumptionFailed,
  DomainNotFull,
};

std::string_view to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what);
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void raise(ErrorCode code, const std::string& what);

}  // namespace bregman
