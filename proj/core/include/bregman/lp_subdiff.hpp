// SPDX-License-Identifier: MIT
#pragma once

#include <string>
#include <vector>

#include "bregman/prox_env.hpp"
#include "bregman/report.hpp"

namespace bregman {

/// Empty, or an interval with endpoint flags. Infinite endpoints are open.
struct SubdiffSet {
  bool empty = true;
  ExtReal lo = ExtReal::pos_inf();
  ExtReal hi = ExtReal::neg_inf();
  bool lo_closed = false;
  bool hi_closed = false;

  static SubdiffSet none() { return {}; }
  static SubdiffSet interval(ExtReal lo, ExtReal hi, bool lo_closed = true, bool hi_closed = true);

  bool contains(double u, double tol = 0.0) const;
  double width() const;  // -1 when empty, inf when unbounded
  bool is_singleton(double tol) const { return !empty && width() <= tol; }
  /// Probe values inside the set: finite endpoints, midpoint, and offsets
  /// from a finite endpoint when the other is infinite.
  std::vector<double> probes() const;
};

struct Membership {
  bool member = false;
  double violation = 0.0;  // worst slack; negative means the inequality fails
  double witness = 0.0;    // abscissa of the worst slack
};

/// u in the left level proximal subdifferential at xbar, checked against the
/// defining inequality on the domain grid with local refinement.
Membership left_lpsubdiff_definitional(const ProxEnv& pe, double xbar, double u);

/// Right variant for g = instance function: support inequality in grad kappa
/// coordinates over interior grid y.
Membership right_lpsubdiff_definitional(const ProxEnv& pe, double ybar, double v);
/// Right variant for an arbitrary g on the kernel interior.
Membership right_lpsubdiff_definitional(const Kernel& k, double lambda, const ScalarFn& g,
                                        const Interval& window, double ybar, double v,
                                        const Settings& s = Settings{});

/// The whole set from the defining inequality alone: support slopes of
/// f + kappa/lambda at xbar from secants, with a minimax fallback deciding
/// nonemptiness within tol_cert when secant bounds cross.
SubdiffSet left_lpsubdiff_support(const ProxEnv& pe, double xbar);

/// Convex-hull characterization hypotheses: Legendre, 1-coercive, lambda
/// below the (annotated or probed) threshold.
bool hull_hypotheses(const ProxEnv& pe, std::string* why = nullptr);

struct HullLocal {
  bool touches = false;
  double gap = 0.0;  // (lambda f + kappa)(xbar) - conv(...)(xbar)
  double left_slope = 0.0;
  double right_slope = 0.0;
};

/// conv(lambda f + kappa) near xbar, from the domain grid refined around xbar.
HullLocal hull_local(const ProxEnv& pe, double xbar);

/// Hull characterization; throws HypothesesUnmet.
SubdiffSet left_lpsubdiff_hull(const ProxEnv& pe, double xbar);

struct ResolventResidual {
  double forward = 0.0;   // prox outputs satisfy the subdifferential inequality
  double backward = 0.0;  // hull subgradients map back into the prox
  bool backward_checked = false;
  double residual() const { return forward > backward ? forward : backward; }
};

/// Throws RangeAssumptionFailed when a prox output at ybar is not interior.
ResolventResidual resolvent_check_detail(const ProxEnv& pe, double ybar);
double resolvent_check(const ProxEnv& pe, double ybar);

struct SingleValuedness {
  enum class Kind { Empty, Singleton, Multiple };
  Kind kind = Kind::Empty;
  bool single = false;
  bool hull_differentiable = false;
  bool hull_touches = false;
};

SingleValuedness single_valuedness_at(const ProxEnv& pe, double xbar);

struct RangeProbe {
  bool holds = true;
  double worst_margin = 0.0;  // smallest distance of a prox output to the boundary
  double witness_ybar = 0.0;
  double witness_x = 0.0;
  std::size_t checked = 0;
};

/// Samples ybar over the interior and checks every prox output lies strictly
/// inside the kernel domain (margin s.range_margin).
RangeProbe range_assumption_probe(const ProxEnv& pe, std::uint64_t seed);

/// Compares two instances sharing kernel and lambda: (a) envelope difference
/// constant, (b) hull difference constant, (c) prox graphs equal, (d)
/// subdifferential graphs equal.
VerifyReport coincidence_check(const ProxEnv& a, const ProxEnv& b, std::uint64_t seed = 0);

/// Instance whose function is hull_lambda f (convex-hull route). The hull is
/// +inf outside the search window on unbounded kernel sides.
Instance hull_instance(const ProxEnv& pe);

}  // namespace bregman
