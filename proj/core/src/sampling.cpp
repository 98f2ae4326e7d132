// SPDX-License-Identifier: MIT
#include "bregman/sampling.hpp"

namespace bregman {

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t tag) {
  // splitmix64 finalizer over the combined words
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (tag + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

Interval inset_interval(const Interval& iv, double inset) {
  if (!iv.bounded()) raise(ErrorCode::InvalidArgument, "inset_interval needs a bounded interval");
  const double w = iv.width();
  return Interval::closed(iv.lo + inset * w, iv.hi - inset * w);
}

std::vector<double> sample_interior(const Interval& iv, std::size_t n, Rng& rng, double inset) {
  const Interval s = inset_interval(iv, inset);
  std::vector<double> out(n);
  for (auto& x : out) x = rng.uniform(s.lo, s.hi);
  return out;
}

std::vector<double> linspace(double a, double b, std::size_t n) {
  std::vector<double> v(n);
  if (n == 1) {
    v[0] = a;
    return v;
  }
  // Lerp form keeps symmetric grids symmetric (the midpoint of [-a, a] is 0).
  for (std::size_t i = 0; i < n; ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(n - 1);
    v[i] = (1 - t) * a + t * b;
  }
  v.back() = b;
  return v;
}

}  // namespace bregman
