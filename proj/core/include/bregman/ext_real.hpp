// SPDX-License-Identifier: MIT
#pragma once

#include <cmath>
#include <compare>
#include <limits>

#include "bregman/error.hpp"

namespace bregman {

/// Value in [-inf, +inf]. Infinities are stored as IEEE infinities; NaN is
/// never representable, and inf + (-inf) throws IndeterminateForm.
class ExtReal {
 public:
  constexpr ExtReal() = default;
  ExtReal(double v) : v_(v) {  // NOLINT(google-explicit-constructor)
    if (std::isnan(v)) raise(ErrorCode::IndeterminateForm, "NaN is not an extended real");
  }

  static ExtReal pos_inf() { return ExtReal(std::numeric_limits<double>::infinity()); }
  static ExtReal neg_inf() { return ExtReal(-std::numeric_limits<double>::infinity()); }

  bool is_finite() const { return std::isfinite(v_); }
  bool is_pos_inf() const { return v_ == std::numeric_limits<double>::infinity(); }
  bool is_neg_inf() const { return v_ == -std::numeric_limits<double>::infinity(); }

  /// IEEE view; infinities map to +-inf.
  double to_double() const { return v_; }
  /// Finite value; throws OutOfRange on an infinity.
  double value() const {
    if (!is_finite()) raise(ErrorCode::OutOfRange, "value() on an infinite extended real");
    return v_;
  }

  friend ExtReal operator+(ExtReal a, ExtReal b) {
    if ((a.is_pos_inf() && b.is_neg_inf()) || (a.is_neg_inf() && b.is_pos_inf()))
      raise(ErrorCode::IndeterminateForm, "inf + (-inf)");
    return ExtReal(a.v_ + b.v_);
  }
  friend ExtReal operator-(ExtReal a) { return ExtReal(-a.v_); }
  friend ExtReal operator-(ExtReal a, ExtReal b) { return a + (-b); }
  /// Scaling by a finite real; 0 * inf throws.
  friend ExtReal operator*(double s, ExtReal a) {
    if (!std::isfinite(s)) raise(ErrorCode::InvalidArgument, "non-finite scale factor");
    if (s == 0.0 && !a.is_finite()) raise(ErrorCode::IndeterminateForm, "0 * inf");
    return ExtReal(s * a.v_);
  }
  friend ExtReal operator*(ExtReal a, double s) { return s * a; }
  ExtReal& operator+=(ExtReal b) { return *this = *this + b; }

  friend bool operator==(ExtReal a, ExtReal b) { return a.v_ == b.v_; }
  friend auto operator<=>(ExtReal a, ExtReal b) { return a.v_ <=> b.v_; }

 private:
  double v_ = 0.0;
};

inline ExtReal min(ExtReal a, ExtReal b) { return b < a ? b : a; }
inline ExtReal max(ExtReal a, ExtReal b) { return a < b ? b : a; }

}  // namespace bregman
