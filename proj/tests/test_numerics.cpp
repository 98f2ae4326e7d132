// SPDX-License-Identifier: MIT
#include <doctest.h>

#include <cmath>

#include "bregman/error.hpp"
#include "bregman/numerics.hpp"
#include "bregman/sampling.hpp"

using namespace bregman;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST_SUITE("numerics") {

TEST_CASE("extended reals reject indeterminate forms") {
  const ExtReal inf = ExtReal::pos_inf();
  CHECK(code_of([&] { (void)(inf + ExtReal::neg_inf()); }) == ErrorCode::IndeterminateForm);
  CHECK(code_of([&] { (void)(inf - inf); }) == ErrorCode::IndeterminateForm);
  CHECK(code_of([&] { (void)(0.0 * inf); }) == ErrorCode::IndeterminateForm);
  CHECK(code_of([] { (void)ExtReal(std::nan("")); }) == ErrorCode::IndeterminateForm);
  CHECK((ExtReal(1.5) + ExtReal(2.25)).value() == 3.75);
  CHECK((ExtReal(-7.0) + inf).is_pos_inf());
  CHECK((ExtReal(7.0) + ExtReal::neg_inf()).is_neg_inf());
  CHECK((-2.0 * inf).is_neg_inf());
  CHECK(code_of([&] { (void)inf.value(); }) == ErrorCode::OutOfRange);
  CHECK(ExtReal(3.0) < inf);
  CHECK(min(ExtReal(1.0), ExtReal::neg_inf()).is_neg_inf());
}

TEST_CASE("interval helpers") {
  const Interval a = Interval::closed(-1, 1);
  const Interval b{0.0, 5.0, false, true};
  const Interval c = a.intersect(b);
  CHECK(c.lo == 0.0);
  CHECK_FALSE(c.lo_closed);
  CHECK(c.hi == 1.0);
  CHECK(c.hi_closed);
  CHECK(a.contains(1.0));
  CHECK_FALSE(a.in_interior(1.0));
  CHECK_FALSE(b.contains(0.0));
  CHECK(Interval::reals().is_reals());
  CHECK_FALSE(Interval::reals().bounded());
}

TEST_CASE("grids inset open ends only") {
  const Grid g = Grid::over(Interval{0.0, 1.0, false, true}, 11, 1e-9);
  const auto xs = g.points();
  REQUIRE(xs.size() == 11);
  CHECK(xs.front() == doctest::Approx(1e-9).epsilon(1e-12));
  CHECK(xs.front() > 0.0);
  CHECK(xs.back() == 1.0);
  for (std::size_t i = 1; i < xs.size(); ++i) CHECK(xs[i] > xs[i - 1]);
  CHECK(code_of([] { (void)Grid{0.0, 1.0, 2}.points(); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([] { (void)Grid{1.0, 1.0, 5}.points(); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("grid_minimize on a symmetric parabola") {
  const auto r = grid_minimize([](double x) { return ExtReal(x * x); }, Grid{-1.0, 1.0, 1001});
  CHECK(std::fabs(r.x) < 1e-8);
  CHECK(r.value.value() < 1e-15);
  CHECK_FALSE(r.multiple);
}

TEST_CASE("grid_minimize on a kink between grid points") {
  const auto r = grid_minimize([](double x) { return ExtReal(std::fabs(x - 0.3)); }, Grid{-1.0, 1.0, 1001});
  CHECK(r.x == doctest::Approx(0.3).epsilon(1e-9));
  CHECK(r.value.value() < 1e-9);
  CHECK(r.minimizers.size() == 1);
}

TEST_CASE("grid_minimize reports separated ties") {
  const auto r = grid_minimize([](double x) { return ExtReal((x * x - 1) * (x * x - 1)); }, Grid{-2.0, 2.0, 2001});
  REQUIRE(r.multiple);
  REQUIRE(r.minimizers.size() == 2);
  CHECK(r.minimizers[0] == doctest::Approx(-1.0).epsilon(1e-6));
  CHECK(r.minimizers[1] == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("grid_minimize plateau contributes both ends") {
  const auto r = grid_minimize([](double x) { return ExtReal(std::max(0.0, std::fabs(x) - 0.5)); },
                               Grid{-1.0, 1.0, 201});
  REQUIRE(r.minimizers.size() >= 2);
  CHECK(r.minimizers.front() == doctest::Approx(-0.5));
  CHECK(r.minimizers.back() == doctest::Approx(0.5));
}

TEST_CASE("grid_minimize errors") {
  CHECK(code_of([] { (void)grid_minimize([](double) { return ExtReal::pos_inf(); }, Grid{0, 1, 11}); }) ==
        ErrorCode::AllInfinite);
  CHECK(code_of([] { (void)grid_minimize([](double x) { return ExtReal(-1e13 * x); }, Grid{0, 1, 11}); }) ==
        ErrorCode::Unbounded);
  CHECK(code_of([] {
          (void)grid_minimize([](double x) { return x > 0.5 ? ExtReal::neg_inf() : ExtReal(x); }, Grid{0, 1, 11});
        }) == ErrorCode::Unbounded);
}

TEST_CASE("grid_minimize matches a ten times finer exhaustive scan on convex functions") {
  Rng rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const double c = rng.uniform(-0.9, 0.9), a = rng.uniform(0.1, 4.0), p = rng.uniform(1.0, 3.0);
    auto phi = [&](double x) { return ExtReal(a * std::pow(std::fabs(x - c), p) + 0.3 * x); };
    const auto r = grid_minimize(phi, Grid{-1.0, 1.0, 201});
    double best = INFINITY;
    for (double x : Grid{-1.0, 1.0, 2001}.points()) best = std::min(best, phi(x).value());
    CHECK(r.value.value() <= best + 1e-9);
  }
}

TEST_CASE("golden section stays inside the bracket") {
  const auto [x, v] = golden_minimize([](double t) { return ExtReal((t - 0.25) * (t - 0.25)); }, 0.0, 1.0, 80);
  CHECK(x == doctest::Approx(0.25).epsilon(1e-7));
  CHECK(v.value() < 1e-14);
}

TEST_CASE("lower convex envelope of a convex sample is the sample") {
  std::vector<std::pair<double, ExtReal>> s;
  for (double x : Grid{-1, 1, 101}.points()) s.emplace_back(x, x * x);
  const HullCurve h = lower_convex_envelope(s);
  for (const auto& [x, v] : s) CHECK(h(x).value() == doctest::Approx(v.value()).epsilon(1e-12));
}

TEST_CASE("lower convex envelope of a concave sample is one chord") {
  std::vector<std::pair<double, ExtReal>> s;
  for (double x : Grid{-1, 1, 101}.points()) s.emplace_back(x, -x * x);
  const HullCurve h = lower_convex_envelope(s);
  REQUIRE(h.breakpoints().size() == 2);
  CHECK(h.breakpoints()[0].x == -1.0);
  CHECK(h.breakpoints()[1].x == 1.0);
  CHECK(h(0.3).value() == doctest::Approx(-1.0));
  CHECK(h(1.5).is_pos_inf());
}

TEST_CASE("lower convex envelope of f + kappa for the Hellinger example") {
  // (f+kappa)(x) = (x - 1) sqrt(1 - x^2): convex for x <= 0, replaced by the
  // tangent of slope 1 through (0, -1) on [0, 1].
  std::vector<std::pair<double, ExtReal>> s;
  const auto xs = Grid{-1, 1, 2001}.points();
  for (double x : xs) s.emplace_back(x, (x - 1) * std::sqrt((1 - x) * (1 + x)));
  const HullCurve h = lower_convex_envelope(s);
  for (double x : xs) {
    const double v = (x - 1) * std::sqrt((1 - x) * (1 + x));
    if (x <= 0)
      CHECK(h(x).value() == doctest::Approx(v).epsilon(1e-9));
    else
      CHECK(h(x).value() == doctest::Approx(x - 1.0).epsilon(2e-3));
  }
  const auto [l, r] = h.slopes_at(0.5);
  CHECK(l == doctest::Approx(1.0).epsilon(2e-3));
  CHECK(r == doctest::Approx(1.0).epsilon(2e-3));
}

TEST_CASE("lower convex envelope invariants on random samples") {
  Rng rng(5);
  for (int trial = 0; trial < 40; ++trial) {
    std::vector<std::pair<double, ExtReal>> s;
    for (double x : Grid{-2, 2, 60}.points()) s.emplace_back(x, rng.uniform(-1, 1) + std::sin(3 * x));
    const HullCurve h = lower_convex_envelope(s);
    const auto& bp = h.breakpoints();
    for (std::size_t i = 1; i < bp.size(); ++i) {
      CHECK(bp[i].x > bp[i - 1].x);
      CHECK(bp[i].left_slope >= bp[i - 1].right_slope - 1e-12);
    }
    for (const auto& [x, v] : s) CHECK(h(x).value() <= v.value() + 1e-12);
  }
  CHECK(code_of([] { (void)lower_convex_envelope({{0.0, ExtReal(1.0)}}); }) == ErrorCode::TooFewFinite);
}

TEST_CASE("monotone_invert closed forms") {
  CHECK(monotone_invert([](double x) { return x; }, 0.7, 0, 1) == doctest::Approx(0.7).epsilon(1e-12));
  CHECK(monotone_invert([](double x) { return x * x * x; }, 8.0, 0, 1, Interval::reals()) ==
        doctest::Approx(2.0).epsilon(1e-12));
  CHECK(monotone_invert([](double x) { return 1 + std::log(x); }, 0.0, 0.5, 2.0, Interval{0, INFINITY}) ==
        doctest::Approx(std::exp(-1.0)).epsilon(1e-12));
  CHECK(code_of([] { (void)monotone_invert([](double x) { return x; }, 5.0, 0, 1); }) == ErrorCode::OutOfRange);
}

TEST_CASE("monotone_invert round-trips random targets") {
  Rng rng(3);
  auto m = [](double x) { return std::sinh(x) + x; };
  for (int i = 0; i < 100; ++i) {
    const double t = rng.uniform(-50, 50);
    CHECK(std::fabs(m(monotone_invert(m, t, -1, 1, Interval::reals())) - t) <= 1e-9);
  }
}

TEST_CASE("second-difference convexity test") {
  const auto xs = Grid{-3, 3, 241}.points();
  std::vector<double> sq, lin, env;
  for (double y : xs) {
    sq.push_back(y * y);
    lin.push_back(-y);
    env.push_back(2.0 / 3 * std::pow(std::fabs(y), 1.5) - 2.0 / 3 * std::pow(std::fabs(y - 1), 1.5));
  }
  const auto a = second_difference_convexity_test(xs, sq);
  CHECK(a.convex);
  CHECK(a.worst_violation >= 0.0);
  CHECK(second_difference_convexity_test(xs, lin).convex);
  const auto c = second_difference_convexity_test(xs, env);
  CHECK_FALSE(c.convex);
  CHECK(c.worst_violation < 0.0);
  CHECK(c.witness[1] > 0.0);
  CHECK(c.witness[1] < 1.0 + 0.05);
}

TEST_CASE("extended convexity needs a contiguous finite run") {
  const std::vector<double> xs = {0, 1, 2, 3, 4};
  const ExtReal inf = ExtReal::pos_inf();
  CHECK(extended_convexity_test(xs, {inf, 1.0, 0.0, 1.0, inf}).convex);
  const auto r = extended_convexity_test(xs, {0.0, inf, 0.0, 1.0, 4.0});
  CHECK_FALSE(r.convex);
}

TEST_CASE("finite differences") {
  CHECK(finite_diff_grad([](double x) { return ExtReal(x * x); }, 1.0, 1e-5) == doctest::Approx(2.0).epsilon(1e-8));
  CHECK(std::fabs(finite_diff_grad([](double x) { return ExtReal(-std::sqrt(1 - x * x)); }, 0.6, 1e-6) - 0.75) <= 1e-6);
  CHECK(std::fabs(finite_diff_grad([](double x) { return ExtReal(x * std::log(x)); }, 1.0, 1e-6) - 1.0) <= 1e-6);
  CHECK(code_of([] {
          (void)finite_diff_grad([](double x) { return x > 0 ? ExtReal(x) : ExtReal::pos_inf(); }, 0.0, 1e-3);
        }) == ErrorCode::DomainEdge);
}

TEST_CASE("tail probe separates slow divergence from convergence") {
  const auto to_zero = decade_points(1.0, 0.0, 300);
  CHECK(probe_tail([](double x) { return ExtReal(std::log(x)); }, to_zero).unbounded);
  CHECK_FALSE(probe_tail([](double x) { return ExtReal(x - std::log1p(x)); }, to_zero).unbounded);
  const auto to_inf = decade_points(1.0, INFINITY, 60);
  CHECK(probe_tail([](double x) { return ExtReal(-std::log(x)); }, to_inf).unbounded);
  CHECK_FALSE(probe_tail([](double x) { return ExtReal(1.0 / x); }, to_inf).unbounded);
  CHECK(probe_tail([](double x) { return ExtReal(-x); }, to_inf).unbounded);
}

}  // TEST_SUITE
