// SPDX-License-Identifier: MIT
#include <doctest.h>

#include <cmath>

#include "bregman/error.hpp"
#include "bregman/lp_subdiff.hpp"
#include "bregman/sampling.hpp"

using namespace bregman;

namespace {

ProxEnv energy(ProperFn f, double lam = 1.0) {
  return ProxEnv(make_instance("test", kernel(KernelKind::Energy), std::move(f), lam));
}

bool cond(const VerifyReport& r, const std::string& label) {
  const Condition* c = r.find(label);
  REQUIRE(c);
  REQUIRE(c->holds);
  return *c->holds;
}

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

TEST_SUITE("lp-subdiff") {

TEST_CASE("subdiff sets") {
  const SubdiffSet a = SubdiffSet::interval(-1.0, 2.0);
  CHECK(a.contains(2.0));
  CHECK_FALSE(a.contains(2.1));
  CHECK(a.width() == 3.0);
  const SubdiffSet b = SubdiffSet::interval(ExtReal::neg_inf(), 0.5);
  CHECK_FALSE(b.lo_closed);
  CHECK(std::isinf(b.width()));
  CHECK(b.contains(-1e9));
  CHECK(SubdiffSet::none().width() == -1.0);
  CHECK_FALSE(SubdiffSet::none().contains(0.0));
  for (double u : b.probes()) CHECK(b.contains(u));
}

TEST_CASE("definitional certificate on ex411") {
  const ProxEnv pe(get_instance("ex411"));
  CHECK(left_lpsubdiff_definitional(pe, 0.0, 0.0).member);
  CHECK(left_lpsubdiff_definitional(pe, 0.0, 0.5).member);
  CHECK(left_lpsubdiff_definitional(pe, 0.0, -50.0).member);
  const Membership m = left_lpsubdiff_definitional(pe, 0.0, 0.6);
  CHECK_FALSE(m.member);
  CHECK(m.violation < 0.0);
  CHECK_FALSE(left_lpsubdiff_definitional(pe, 0.5, 1.0).member);
}

TEST_CASE("closed boundary points are never members") {
  for (const char* name : {"ex310", "ex411", "bsmooth_counter", "shannon_abs"}) {
    const ProxEnv pe(get_instance(name));
    const Interval& d = pe.kernel().domain();
    for (double u : {-1.0, 0.0, 1.0}) {
      if (d.lo_closed) CHECK_FALSE(left_lpsubdiff_definitional(pe, d.lo, u).member);
      if (d.hi_closed) CHECK_FALSE(left_lpsubdiff_definitional(pe, d.hi, u).member);
    }
  }
}

TEST_CASE("hull characterization cases") {
  const ProxEnv pe(get_instance("ex310"));
  const SubdiffSet neg = left_lpsubdiff_hull(pe, -0.5);
  REQUIRE_FALSE(neg.empty);
  const double d = pe.instance().fn.derivative(-0.5);
  CHECK(std::fabs(neg.lo.value() - d) <= 1e-4);
  CHECK(std::fabs(neg.hi.value() - d) <= 1e-4);
  CHECK(left_lpsubdiff_hull(pe, 0.5).empty);

  const SubdiffSet e = left_lpsubdiff_hull(energy(fns::abs()), 0.0);
  REQUIRE_FALSE(e.empty);
  CHECK(std::fabs(e.lo.value() + 1.0) <= 1e-4);
  CHECK(std::fabs(e.hi.value() - 1.0) <= 1e-4);
  CHECK(e.lo_closed);
  CHECK(e.hi_closed);

  const SubdiffSet u = left_lpsubdiff_hull(ProxEnv(get_instance("ex411")), 0.0);
  REQUIRE_FALSE(u.empty);
  CHECK(u.lo.is_neg_inf());
  CHECK(std::fabs(u.hi.value() - 0.5) <= 1e-4);
}

TEST_CASE("hull route requires its hypotheses") {
  const ProxEnv burg(get_instance("burg_linear"));
  std::string why;
  CHECK_FALSE(hull_hypotheses(burg, &why));
  CHECK_FALSE(why.empty());
  CHECK(code_of([&] { (void)left_lpsubdiff_hull(burg, 1.0); }) == ErrorCode::HypothesesUnmet);
  CHECK(hull_hypotheses(ProxEnv(get_instance("ex310"))));
}

TEST_CASE("right level subdifferential") {
  const ProxEnv z = energy(fns::zero());
  for (double y : {-1.0, 0.0, 2.0}) CHECK(right_lpsubdiff_definitional(z, y, 0.0).member);
  const ProxEnv a = energy(fns::abs());
  CHECK(right_lpsubdiff_definitional(a, 2.0, 1.0).member);
  CHECK_FALSE(right_lpsubdiff_definitional(a, 2.0, 2.0).member);
}

TEST_CASE("right membership is consistent with the left prox") {
  // For g = -env f the three-point identity gives the subgradient
  // (xbar - ybar)/lambda at ybar, with xbar = prox(ybar).
  const Instance& in = get_instance("quartic_abs");
  const ProxEnv pe(in);
  auto g = [&pe](double y) { return -pe.left_env(y); };
  for (double y : {-1.3, -0.4, 0.7, 1.9}) {
    const double x = pe.left_prox(y).minimizers.front();
    const double v = (x - y) / in.lambda;
    CAPTURE(y);
    CHECK(right_lpsubdiff_definitional(in.kernel, in.lambda, g, in.kernel_window(), y, v).member);
    CHECK_FALSE(right_lpsubdiff_definitional(in.kernel, in.lambda, g, in.kernel_window(), y, v + 0.5).member);
  }
}

TEST_CASE("warped resolvent") {
  const ProxEnv ab = energy(fns::abs());
  for (double y : linspace(-3, 3, 25)) CHECK(resolvent_check(ab, y) <= 1e-6);

  const ProxEnv e310(get_instance("ex310"));
  Rng rng(21);
  int checked = 0;
  for (double y : sample_interior(e310.instance().kernel_window(), 40, rng)) {
    try {
      const double r = resolvent_check(e310, y);
      CHECK(r <= 1e-6);
      ++checked;
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::RangeAssumptionFailed);
    }
  }
  CHECK(checked >= 20);

  const ProxEnv e411(get_instance("ex411"));
  CHECK(code_of([&] { (void)resolvent_check(e411, 0.9); }) == ErrorCode::RangeAssumptionFailed);
}

TEST_CASE("single-valuedness") {
  const ProxEnv pe(get_instance("ex310"));
  const SingleValuedness a = single_valuedness_at(pe, -0.5);
  CHECK(a.kind == SingleValuedness::Kind::Singleton);
  CHECK(a.single);
  CHECK(a.hull_differentiable);
  CHECK(a.hull_touches);

  const SingleValuedness b = single_valuedness_at(energy(fns::abs()), 0.0);
  CHECK(b.kind == SingleValuedness::Kind::Multiple);
  CHECK_FALSE(b.single);
  CHECK_FALSE(b.hull_differentiable);
  CHECK(b.hull_touches);

  const SingleValuedness c = single_valuedness_at(pe, 0.5);
  CHECK(c.kind == SingleValuedness::Kind::Empty);
  CHECK(c.hull_differentiable);
  CHECK_FALSE(c.hull_touches);
}

TEST_CASE("single-valuedness equivalence on sampled points") {
  for (const char* name : {"ex310", "euclid_abs", "shannon_abs", "ex419"}) {
    const ProxEnv pe(get_instance(name));
    Rng rng(derive_seed(22, name[1]));
    for (double x : sample_interior(pe.instance().search_domain(), 30, rng)) {
      const SingleValuedness s = single_valuedness_at(pe, x);
      if (s.kind == SingleValuedness::Kind::Empty) continue;
      CHECK(s.single == (s.hull_differentiable && s.hull_touches));
    }
  }
}

TEST_CASE("coincidence: additive constant") {
  const ProxEnv a = energy(fns::abs());
  const ProxEnv b = energy(shift_scale(fns::abs(), 0, 1, 3));
  const VerifyReport r = coincidence_check(a, b, 1);
  for (const char* l : {"a", "b", "c", "d"}) CHECK(cond(r, l));
  CHECK(r.find("a")->note.find("-3") != std::string::npos);
  CHECK(r.violations() == 0);
}

TEST_CASE("coincidence: ex310 against its hull") {
  // env and hull agree, but prox_{hull f} is the convexified prox of f (the
  // tie point gains a segment) and the hull has subgradients on (0, 1).
  const ProxEnv a(get_instance("ex310"));
  const ProxEnv b(hull_instance(a));
  const VerifyReport r = coincidence_check(a, b, 1);
  CHECK(cond(r, "a"));
  CHECK(cond(r, "b"));
  CHECK_FALSE(cond(r, "c"));
  CHECK_FALSE(cond(r, "d"));
  CHECK(r.violations() == 0);
}

TEST_CASE("coincidence: shifted absolute value") {
  const VerifyReport r = coincidence_check(energy(fns::abs()), energy(shift_scale(fns::abs(), 0.5, 1, 0)), 1);
  CHECK_FALSE(cond(r, "a"));
  CHECK_FALSE(cond(r, "c"));
  CHECK(r.violations() == 0);
}

TEST_CASE("hull and definitional routes agree") {
  for (const char* name : {"ex310", "ex411", "euclid_abs", "euclid_neg_sq", "shannon_abs", "hellinger_half", "ex419"}) {
    const ProxEnv pe(get_instance(name));
    CAPTURE(std::string(name));
    Rng rng(derive_seed(23, name[2]));
    for (double x : sample_interior(pe.instance().search_domain(), 15, rng)) {
      CAPTURE(x);
      const SubdiffSet S = left_lpsubdiff_hull(pe, x);
      std::vector<double> inside = S.probes();
      std::vector<double> outside;
      if (!S.empty) {
        if (S.lo.is_finite()) outside.push_back(S.lo.value() - 0.05);
        if (S.hi.is_finite()) outside.push_back(S.hi.value() + 0.05);
      } else {
        outside = {-1.0, 0.0, 1.0};
      }
      for (double u : inside) CHECK(left_lpsubdiff_definitional(pe, x, u).member);
      for (double u : outside) CHECK_FALSE(left_lpsubdiff_definitional(pe, x, u).member);
    }
  }
}

TEST_CASE("level subgradients are Frechet subgradients") {
  for (const char* name : {"ex310", "euclid_abs", "ex419", "shannon_abs"}) {
    const ProxEnv pe(get_instance(name));
    const ProperFn& f = pe.instance().fn;
    Rng rng(derive_seed(24, name[2]));
    for (double x : sample_interior(pe.instance().search_domain(), 15, rng)) {
      const SubdiffSet S = left_lpsubdiff_hull(pe, x);
      for (double u : S.probes()) {
        // Relative slack of the lower expansion must vanish as the radius shrinks.
        for (double r : {1e-2, 1e-3, 1e-4}) {
          double worst = 0.0;
          for (double t : {-r, r}) {
            const ExtReal fx = f(x + t);
            if (!fx.is_finite()) continue;
            worst = std::min(worst, (fx.value() - f(x).value() - u * t) / r);
          }
          CHECK(worst >= -100.0 * r * (1 + std::fabs(u)));
        }
      }
    }
  }
}

TEST_CASE("prox composed with the dual map is monotone") {
  for (const auto& n : instance_names()) {
    const Instance& in = get_instance(n);
    if (!in.kernel.grad_range().is_reals()) continue;
    const ProxEnv pe(in);
    CAPTURE(n);
    std::vector<std::pair<double, std::vector<double>>> sel;
    for (double eta : linspace(in.dual_window.lo, in.dual_window.hi, 41))
      sel.emplace_back(eta, pe.left_prox(in.kernel.grad_conj(eta)).minimizers);
    for (std::size_t i = 0; i < sel.size(); ++i)
      for (std::size_t j = i + 1; j < sel.size(); ++j)
        for (double x1 : sel[i].second)
          for (double x2 : sel[j].second) CHECK((x1 - x2) * (sel[i].first - sel[j].first) >= -1e-9);
  }
}

TEST_CASE("convexified prox equals the prox of the hull") {
  const ProxEnv pe(get_instance("ex310"));
  const ProxEnv hull(hull_instance(pe));
  const Kernel& k = pe.kernel();
  for (double eta : linspace(-3, 3, 25)) {
    const auto a = pe.left_prox(k.grad_conj(eta)).minimizers;
    const auto b = hull.left_prox(k.grad_conj(eta)).minimizers;
    CAPTURE(eta);
    CHECK(std::fabs(a.front() - b.front()) <= 1e-3);
    CHECK(std::fabs(a.back() - b.back()) <= 1e-3);
  }
  // At eta = 1 the prox of f is {0, 1}; the hull fills the segment.
  const auto tie = pe.left_prox(k.grad_conj(1.0)).minimizers;
  REQUIRE(tie.size() == 2);
  const auto seg = hull.left_prox(k.grad_conj(1.0)).minimizers;
  CHECK(std::fabs(seg.front()) <= 1e-3);
  CHECK(std::fabs(seg.back() - 1.0) <= 1e-3);
}

TEST_CASE("range assumption probe") {
  CHECK(range_assumption_probe(ProxEnv(get_instance("euclid_abs")), 42).holds);
  CHECK(range_assumption_probe(ProxEnv(get_instance("shannon_abs")), 42).holds);
  const RangeProbe r = range_assumption_probe(ProxEnv(get_instance("ex411")), 42);
  CHECK_FALSE(r.holds);
  CHECK(r.checked >= 1);
  CHECK(std::fabs(std::fabs(r.witness_x - 0.5) - 0.5) <= 1e-9);
}

}  // TEST_SUITE
