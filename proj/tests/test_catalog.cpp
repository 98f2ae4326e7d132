// SPDX-License-Identifier: MIT
#include <doctest.h>

#include <cmath>

#include "bregman/catalog.hpp"
#include "bregman/error.hpp"
#include "bregman/prox_env.hpp"
#include "bregman/sampling.hpp"

using namespace bregman;

TEST_SUITE("catalog") {

TEST_CASE("named instances") {
  const Instance& a = get_instance("ex310");
  CHECK(a.kernel.name() == "HELLINGER");
  CHECK(a.lambda == 1.0);
  CHECK(a.fn(0.6).value() == doctest::Approx(0.6 * 0.8));
  CHECK(a.fn(1.0).value() == 0.0);

  const Instance& b = get_instance("ex411");
  CHECK(b.lambda == 2.0);
  CHECK(b.fn(0.5).value() == doctest::Approx(0.5));
  CHECK(b.fn(0.0).value() == 0.0);
  CHECK(b.fn(-0.5).is_pos_inf());

  const Instance& c = get_instance("ex_ln");
  CHECK(c.kernel.name() == "BURG");
  CHECK(c.lambda == 0.5);
  REQUIRE(c.fn.prox_threshold);
  CHECK(*c.fn.prox_threshold == 1.0);

  CHECK(get_instance("ex419").kernel.name() == "QUARTIC");
  CHECK(get_instance("ex419").fn(2.0).value() == doctest::Approx(0.25 - 4.0));
  CHECK(get_instance("ex420").kernel.name() == "CUBIC_ABS");
  CHECK(get_instance("ex420").fn(-1.5).value() == -1.5);

  const Instance& d = get_instance("bsmooth_counter");
  REQUIRE(d.smoothness);
  CHECK(d.fn(1.0).value() == -1.0);
  CHECK(d.fn(-1.0).value() == -1.0);
  CHECK(d.fn(0.0).value() == 1.0);

  const Instance& e = get_instance("euclid_abs");
  CHECK(e.kernel.name() == "ENERGY");
  CHECK(e.fn(-2.0).value() == 2.0);
}

TEST_CASE("unknown names") {
  try {
    (void)get_instance("nosuch");
    FAIL("expected UnknownInstance");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::UnknownInstance);
  }
}

TEST_CASE("listing is stable and complete") {
  const auto& names = instance_names();
  CHECK(names.size() == 16);
  CHECK(names.front() == "ex310");
  for (const auto& n : names) CHECK(get_instance(n).name == n);
}

TEST_CASE("shift_scale") {
  CHECK(shift_scale(fns::zero(), 0, 1, 5)(123.0).value() == 5.0);
  CHECK(shift_scale(fns::abs(), 0.3, 1, 0)(0.3).value() == 0.0);
  CHECK(shift_scale(fns::log(), 0, 1, 2)(1.0).value() == 2.0);
  const ProperFn g = shift_scale(fns::log(), 1.0, 2.0, 0.0);
  CHECK(g(1.0).is_pos_inf());
  CHECK(g(1.0 + std::exp(1.0)).value() == doctest::Approx(2.0));
  CHECK(g.domain.lo == 1.0);
}

TEST_CASE("catalog functions are proper") {
  for (const auto& n : instance_names()) {
    const Instance& in = get_instance(n);
    CAPTURE(n);
    bool finite = false;
    for (double x : Grid::over(in.search_domain(), 401).points()) {
      const ExtReal v = in.fn(x);
      CHECK_FALSE(v.is_neg_inf());
      finite = finite || v.is_finite();
    }
    CHECK(finite);
  }
}

TEST_CASE("catalog functions are lsc at catalog resolution") {
  for (const auto& n : instance_names()) {
    const Instance& in = get_instance(n);
    CAPTURE(n);
    Rng rng(derive_seed(17, n.size()));
    for (double x : sample_interior(in.search_domain(), 50, rng)) {
      double liminf = INFINITY;
      for (int k = 7; k <= 10; ++k)
        for (double s : {-1.0, 1.0}) liminf = std::min(liminf, in.fn(x + s * std::pow(10.0, -k)).to_double());
      CHECK(in.fn(x).to_double() <= liminf + 1e-5);
    }
  }
}

TEST_CASE("convexity annotations agree with second differences") {
  for (const auto& n : instance_names()) {
    const Instance& in = get_instance(n);
    if (!in.fn.convex) continue;
    CAPTURE(n);
    const auto xs = Grid::over(inset_interval(in.search_domain(), 1e-3), 2001).points();
    std::vector<ExtReal> vs;
    for (double x : xs) vs.push_back(in.fn(x));
    CHECK(extended_convexity_test(xs, vs, 1e-9).convex == *in.fn.convex);
  }
}

TEST_CASE("ex_ln envelope changes at the threshold") {
  const Instance& in = get_instance("ex_ln");
  const ProxEnv below(in.with_lambda(0.9));
  CHECK(below.left_env(1.0).is_finite());
  const ProxEnv above(in.with_lambda(1.1));
  try {
    (void)above.left_env(1.0);
    FAIL("expected Unbounded");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Unbounded);
  }
}

TEST_CASE("lambda invariant") {
  for (const auto& n : instance_names()) {
    const Instance& in = get_instance(n);
    if (in.fn.prox_threshold) CHECK(in.lambda < *in.fn.prox_threshold);
  }
}

}  // TEST_SUITE
