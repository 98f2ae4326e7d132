// SPDX-License-Identifier: MIT
#include <benchmark/benchmark.h>

#include <cmath>

#include "bregman/lp_subdiff.hpp"
#include "bregman/sampling.hpp"

using namespace bregman;

namespace {

void BM_GridMinimize(benchmark::State& state) {
  const Grid g{-1.0, 1.0, static_cast<std::size_t>(state.range(0))};
  auto phi = [](double x) { return ExtReal(std::fabs(x - 0.3) + x * x); };
  for (auto _ : state) benchmark::DoNotOptimize(grid_minimize(phi, g));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_GridMinimize)->RangeMultiplier(4)->Range(256, 16384)->Complexity(benchmark::oN);

void BM_LowerConvexEnvelope(benchmark::State& state) {
  std::vector<std::pair<double, ExtReal>> s;
  for (double x : linspace(-1, 1, static_cast<std::size_t>(state.range(0))))
    s.emplace_back(x, (x - 1) * std::sqrt((1 - x) * (1 + x)));
  for (auto _ : state) benchmark::DoNotOptimize(lower_convex_envelope(s));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_LowerConvexEnvelope)->RangeMultiplier(4)->Range(256, 65536)->Complexity(benchmark::oN);

void BM_LeftProx(benchmark::State& state, const char* name) {
  const ProxEnv pe(get_instance(name));
  const Interval w = inset_interval(pe.instance().kernel_window(), 0.05);
  Rng rng(1);
  for (auto _ : state) benchmark::DoNotOptimize(pe.left_prox(rng.uniform(w.lo, w.hi)));
}
BENCHMARK_CAPTURE(BM_LeftProx, euclid_abs, "euclid_abs");
BENCHMARK_CAPTURE(BM_LeftProx, ex310, "ex310");
BENCHMARK_CAPTURE(BM_LeftProx, ex_ln, "ex_ln");

void BM_ProxHull(benchmark::State& state) {
  const ProxEnv pe(get_instance("ex310"));
  (void)pe.prox_hull(0.0);  // build the envelope table outside the loop
  Rng rng(2);
  for (auto _ : state) benchmark::DoNotOptimize(pe.prox_hull(rng.uniform(-0.99, 0.99)));
}
BENCHMARK(BM_ProxHull);

void BM_HullSubdiff(benchmark::State& state) {
  const ProxEnv pe(get_instance("ex310"));
  (void)pe.conv_hull();
  Rng rng(3);
  for (auto _ : state) benchmark::DoNotOptimize(left_lpsubdiff_hull(pe, rng.uniform(-0.99, 0.99)));
}
BENCHMARK(BM_HullSubdiff);

void BM_DefinitionalCertificate(benchmark::State& state) {
  const ProxEnv pe(get_instance("ex411"));
  for (auto _ : state) benchmark::DoNotOptimize(left_lpsubdiff_definitional(pe, 0.0, 0.25));
}
BENCHMARK(BM_DefinitionalCertificate);

}  // namespace

BENCHMARK_MAIN();
