// SPDX-License-Identifier: MIT
#pragma once

#include <memory>
#include <vector>

#include "bregman/catalog.hpp"
#include "bregman/settings.hpp"

namespace bregman {

struct ProxResult {
  std::vector<double> minimizers;  // increasing; empty when the infimum is not attained
  ExtReal value;                   // envelope value
  std::vector<bool> in_interior;   // per minimizer
  bool attained = true;
};

/// Minimizes phi over dom ∩ window. Sides of the window strictly inside
/// `dom` are truncation edges and expand when a minimizer sits on them; open
/// and truncated sides get a decade tail probe for unboundedness.
ProxResult minimize_with_tails(const ScalarFn& phi, const Interval& dom, const Interval& window,
                               std::size_t n, const Settings& s);

/// Left/right proximal maps, envelopes and hulls of one instance. Copies share
/// the envelope table and hull caches, which are built once on first use.
class ProxEnv {
 public:
  explicit ProxEnv(Instance inst, Settings s = Settings{});

  const Instance& instance() const { return inst_; }
  const Settings& settings() const { return s_; }
  const Kernel& kernel() const { return inst_.kernel; }
  double lambda() const { return inst_.lambda; }

  /// f(x) + D(x, ybar)/lambda
  ExtReal left_objective(double x, double ybar) const;
  /// g(y) + D(xbar, y)/lambda, with g the instance function
  ExtReal right_objective(double y, double xbar) const;

  ProxResult left_prox(double ybar) const;
  ProxResult right_prox(double xbar) const;
  ExtReal left_env(double ybar) const { return left_prox(ybar).value; }
  ExtReal right_env(double xbar) const { return right_prox(xbar).value; }

  /// Best point of prox(grad kappa*(eta)) (lowest value, then smallest x).
  double prox_at_dual(double eta) const;
  /// h_lambda(xi) = env f(grad kappa*(xi)).
  double h_lambda(double xi) const;

  /// Supremum route: sup_y env f(y) - D(x,y)/lambda over the cached interior
  /// envelope table, refined locally.
  ExtReal prox_hull(double x) const;
  /// Convex-hull route: (conv(lambda f + kappa)(x) - kappa(x))/lambda, using f
  /// itself on grid cells where the hull touches.
  ExtReal hull_conv(double x) const;
  /// conv(lambda f + kappa) on the standard domain grid.
  const HullCurve& conv_hull() const;

  double euclid_crosscheck(double ybar) const;
  double env_conjugate_crosscheck(double ybar) const;

  /// Grid over the search domain; closed ends exact, open ends inset.
  std::vector<double> domain_grid() const;
  /// Interior grid of the kernel window (the envelope table abscissae).
  const std::vector<double>& env_grid() const;
  const std::vector<double>& env_table() const;

 private:
  struct Cache;
  Instance inst_;
  Settings s_;
  std::shared_ptr<Cache> cache_;
};

struct ThresholdBracket {
  double lo = 0.0;
  double hi = 0.0;
  bool all_finite = false;  // hi = +inf
};

std::vector<double> log_spaced(double a, double b, std::size_t n);

/// Brackets the prox-boundedness threshold by evaluating the envelope at the
/// interior midpoint of the kernel window for each lambda (ascending).
/// Throws AllUnbounded when the first lambda is already unbounded.
ThresholdBracket threshold_scan(const Kernel& k, const ProperFn& fn, const std::vector<double>& lambdas,
                                const Settings& s = Settings{});

}  // namespace bregman
