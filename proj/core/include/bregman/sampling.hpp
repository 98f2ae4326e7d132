// SPDX-License-Identifier: MIT
#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "bregman/numerics.hpp"

namespace bregman {

/// Seeded generator with a platform-independent uniform draw (53-bit mantissa
/// from mt19937_64), so sample sets are reproducible across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : g_(seed) {}
  double uniform() { return static_cast<double>(g_() >> 11) * 0x1.0p-53; }
  double uniform(double a, double b) { return a + (b - a) * uniform(); }

 private:
  std::mt19937_64 g_;
};

/// Derives an independent stream seed from a base seed and a tag.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t tag);

/// Inset interior of a bounded interval: [lo + inset*w, hi - inset*w].
Interval inset_interval(const Interval& iv, double inset);

/// n uniform draws from the inset interior (in draw order).
std::vector<double> sample_interior(const Interval& iv, std::size_t n, Rng& rng, double inset = 1e-3);

/// n uniformly spaced points of [a, b].
std::vector<double> linspace(double a, double b, std::size_t n);

}  // namespace bregman
