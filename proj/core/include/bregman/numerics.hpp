// SPDX-License-Identifier: MIT
#pragma once

/// Generic 1D numerical engine: grids, global grid minimization with
/// golden-section refinement, lower convex envelopes, monotone inversion,
/// second-difference convexity tests and centered finite differences.

#include <array>
#include <cstddef>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "bregman/ext_real.hpp"

namespace bregman {

using ScalarFn = std::function<ExtReal(double)>;
using RealFn = std::function<double(double)>;

/// Interval of the real line with per-side open/closed flags. Infinite
/// endpoints are always open.
struct Interval {
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();
  bool lo_closed = false;
  bool hi_closed = false;

  static Interval reals() { return {}; }
  static Interval closed(double a, double b) { return {a, b, true, true}; }
  static Interval open(double a, double b) { return {a, b, false, false}; }

  bool contains(double x) const {
    return (x > lo || (lo_closed && x == lo)) && (x < hi || (hi_closed && x == hi));
  }
  bool in_interior(double x) const { return x > lo && x < hi; }
  bool is_reals() const { return std::isinf(lo) && std::isinf(hi); }
  bool bounded() const { return std::isfinite(lo) && std::isfinite(hi); }
  double width() const { return hi - lo; }
  Interval interior() const { return {lo, hi, false, false}; }
  Interval intersect(const Interval& o) const;
  Interval translated(double a) const { return {lo + a, hi + a, lo_closed, hi_closed}; }
};

struct Grid {
  double lo = 0.0;
  double hi = 1.0;
  std::size_t n = 2001;
  double boundary_inset = 1e-9;
  bool lo_open = false;
  bool hi_open = false;

  /// Uniform grid over `iv` (which must be bounded). Open sides are inset.
  static Grid over(const Interval& iv, std::size_t n, double inset = 1e-9);

  /// Strictly increasing, uniformly spaced samples.
  std::vector<double> points() const;
  double first() const;
  double last() const;
};

struct MinimizeOptions {
  std::size_t refine_iters = 60;
  double tol_tie = 1e-7;
  double unbounded_cap = 1e12;
};

struct MinimizeResult {
  double x = 0.0;               // best minimizer
  ExtReal value;                // refined minimum
  bool multiple = false;        // >= 2 separated cells within tol_tie
  std::vector<double> minimizers;  // increasing; plateau runs contribute both ends
};

/// Golden-section minimization on [a, b]; the returned point is the best of
/// the final bracket and the two end points.
std::pair<double, ExtReal> golden_minimize(const ScalarFn& phi, double a, double b,
                                           std::size_t iters);

MinimizeResult grid_minimize(const ScalarFn& phi, const Grid& g, const MinimizeOptions& opt = {});
/// Same, on explicit increasing sample points.
MinimizeResult grid_minimize(const ScalarFn& phi, const std::vector<double>& xs,
                             const MinimizeOptions& opt = {});

/// Lower convex envelope of finite samples; +inf outside the sample span.
class HullCurve {
 public:
  struct Breakpoint {
    double x;
    double v;
    double left_slope;   // -inf at the first breakpoint
    double right_slope;  // +inf at the last breakpoint
  };

  explicit HullCurve(std::vector<Breakpoint> bps) : bps_(std::move(bps)) {}

  const std::vector<Breakpoint>& breakpoints() const { return bps_; }
  double lo() const { return bps_.front().x; }
  double hi() const { return bps_.back().x; }
  ExtReal operator()(double x) const;
  /// One-sided slopes at x (equal inside a segment).
  std::pair<double, double> slopes_at(double x) const;

 private:
  std::vector<Breakpoint> bps_;
};

HullCurve lower_convex_envelope(const std::vector<std::pair<double, ExtReal>>& samples);

/// Solves m(x) = target for increasing m by bisection. When `domain` is given
/// the bracket is expanded inside it until it encloses the target.
double monotone_invert(const RealFn& m, double target, double lo, double hi,
                       const std::optional<Interval>& domain = std::nullopt,
                       double tol_inv = 1e-12);

struct ConvexityResult {
  bool convex = true;
  double worst_violation = 0.0;  // most negative second difference (or 0)
  std::array<double, 3> witness{0.0, 0.0, 0.0};
};

ConvexityResult second_difference_convexity_test(const std::vector<double>& xs,
                                                 const std::vector<double>& vs,
                                                 double tol = 1e-9);

/// Variant for extended values: the finite samples must form one contiguous
/// run (otherwise nonconvex, witness finite/inf/finite, violation -inf), and
/// the run must pass the second-difference test.
ConvexityResult extended_convexity_test(const std::vector<double>& xs,
                                        const std::vector<ExtReal>& vs, double tol = 1e-9);

double finite_diff_grad(const ScalarFn& phi, double x, double h);

/// Points approaching `edge` from `anchor` geometrically: edge + (anchor-edge)*10^-k
/// for a finite edge, anchor*10^k (sign preserving, |anchor| >= 1) for +-inf.
std::vector<double> decade_points(double anchor, double edge, std::size_t max_decades = 300);

struct TailVerdict {
  bool unbounded = false;
  double best_x = 0.0;
  ExtReal best_value = ExtReal::pos_inf();
};

/// Decides whether phi decreases without bound along `pts` (a decade
/// sequence). Unbounded when a value falls below -cap, or when the drops over
/// the trailing decades stay positive and do not shrink.
TailVerdict probe_tail(const ScalarFn& phi, const std::vector<double>& pts, double cap = 1e12);

}  // namespace bregman
