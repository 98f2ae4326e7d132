// SPDX-License-Identifier: MIT
#pragma once

#include <cstddef>

namespace bregman {

/// Numerical defaults shared by every module.
struct Settings {
  std::size_t grid_n = 2001;
  std::size_t refine_iters = 60;
  double tol_tie = 1e-7;
  double boundary_inset = 1e-9;
  double unbounded_cap = 1e12;
  std::size_t max_window_expansions = 8;

  double tol_cert = 1e-6;
  double tol_hull = 1e-6;
  double tol_width = 1e-4;
  double tol_convexity = 1e-9;
  double tol_pair = 1e-6;

  std::size_t samples = 200;
  std::size_t range_probe_samples = 500;
  double range_margin = 1e-9;
  double sample_inset = 1e-3;

  /// Defaults, with BREGMAN_GRID_N overriding grid_n when set.
  static Settings from_env();
};

}  // namespace bregman
