// SPDX-License-Identifier: MIT
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bregman/kernel.hpp"

namespace bregman {

/// Extended-real function on an interval; +inf off `domain`.
struct ProperFn {
  std::string name;
  Interval domain;
  ScalarFn eval_fn;
  RealFn derivative;                     // optional closed form on the interior
  std::optional<bool> convex;            // annotation
  std::optional<double> prox_threshold;  // annotation; +inf when bounded for all lambda

  ExtReal operator()(double x) const {
    if (!domain.contains(x)) return ExtReal::pos_inf();
    return eval_fn(x);
  }
};

/// x -> b * fn(x - a) + c, with translated domain.
ProperFn shift_scale(const ProperFn& fn, double a, double b, double c);

namespace fns {
ProperFn zero();
ProperFn abs();
ProperFn log();
ProperFn linear(double alpha);
ProperFn square(double coef);  // coef * x^2
}  // namespace fns

struct Instance {
  std::string name;
  std::string description;
  Kernel kernel;
  ProperFn fn;
  double lambda = 1.0;
  std::vector<std::string> tags;
  Interval window = Interval::reals();   // finite cut of unbounded sides
  Interval dual_window = Interval::closed(-3.0, 3.0);
  std::optional<double> smoothness;      // L for B-smoothness checks

  bool has_tag(const std::string& t) const;
  /// Kernel domain intersected with the function domain and the window.
  Interval search_domain() const;
  /// Kernel domain intersected with the window (where samples of y live).
  Interval kernel_window() const;
  Instance with_lambda(double lam) const;
};

/// Search window used on unbounded kernel sides, and the default xi window
/// for envelope composites.
Interval default_window(const Kernel& k);
Interval default_dual_window(const Kernel& k);

/// Builds an instance with the kernel's default windows. The lambda-below-
/// threshold invariant is enforced for catalog entries only, so callers can
/// probe above the threshold.
Instance make_instance(std::string name, Kernel k, ProperFn fn, double lambda,
                       std::vector<std::string> tags = {});

const Instance& get_instance(const std::string& name);
const std::vector<std::string>& instance_names();

}  // namespace bregman
