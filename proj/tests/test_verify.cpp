// SPDX-License-Identifier: MIT
#include <doctest.h>

#include <map>

#include "bregman/error.hpp"
#include "bregman/verify.hpp"

using namespace bregman;

namespace {

// Reports are pure given (instance, theorem, seed), so the suite reuses them.
const VerifyReport& report(const std::string& inst, const std::string& theorem, std::uint64_t seed = 42) {
  static std::map<std::tuple<std::string, std::string, std::uint64_t>, VerifyReport> cache;
  const auto key = std::make_tuple(inst, theorem, seed);
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, run_check(theorem, VerifyContext(get_instance(inst), seed))).first;
  return it->second;
}

std::optional<bool> holds(const VerifyReport& r, const std::string& label) {
  const Condition* c = r.find(label);
  REQUIRE_MESSAGE(c, "no condition " << label << " in " << r.instance << "/" << r.theorem);
  return c->holds;
}

bool is(const VerifyReport& r, const std::string& label, bool v) {
  const auto h = holds(r, label);
  return h && *h == v;
}

ImplicationStatus status(const VerifyReport& r, const std::string& premise, const std::string& conclusion) {
  for (const auto& i : r.implications)
    if (i.premises.size() == 1 && i.premises[0] == premise && i.conclusion == conclusion) return i.status;
  FAIL("no implication " << premise << " => " << conclusion);
  return ImplicationStatus::Skipped;
}

VerifyReport sample_report() {
  VerifyReport r;
  r.instance = "x";
  r.theorem = "t";
  Condition p;
  p.label = "p";
  p.holds = true;
  Condition q;
  q.label = "q";
  q.holds = false;
  q.witness = {0.25, -1.0};
  Condition n;
  n.label = "n";
  r.add(p);
  r.add(q);
  r.add(n);
  return r;
}

}  // namespace

TEST_SUITE("verify") {

TEST_CASE("implication bookkeeping") {
  VerifyReport r = sample_report();
  CHECK(r.implies({"p"}, "p").status == ImplicationStatus::Holds);
  const Implication& v = r.implies({"p"}, "q");
  CHECK(v.status == ImplicationStatus::Violated);
  CHECK(v.reason.find("0.25") != std::string::npos);
  CHECK(r.implies({"q"}, "p").status == ImplicationStatus::Vacuous);
  CHECK(r.implies({"n"}, "p").status == ImplicationStatus::Skipped);
  CHECK(r.implies({"p"}, "n").status == ImplicationStatus::Skipped);
  CHECK(r.implies({"p"}, "q", "range assumption fails").status == ImplicationStatus::Skipped);
  CHECK(r.violations() == 1);
  r.equivalent("p", "q");
  CHECK(r.violations() == 2);
}

TEST_CASE("report serialization uses stable field names") {
  const std::string j = to_json(sample_report());
  for (const char* k : {"\"instance\"", "\"theorem\"", "\"conditions\"", "\"implications\"", "\"hypotheses\"",
                        "\"seed\"", "\"tolerances\""})
    CHECK(j.find(k) != std::string::npos);
}

TEST_CASE("weak convexity") {
  const VerifyReport& a = report("euclid_abs", "hypo");
  for (const char* l : {"a", "b", "d", "f", "routes_agree"}) CHECK(is(a, l, true));
  CHECK(a.violations() == 0);

  const VerifyReport& b = report("ex310", "hypo");
  CHECK(is(b, "a", false));
  CHECK(is(b, "b", false));
  CHECK(is(b, "f", false));
  CHECK_FALSE(b.find("b")->witness.empty());
  CHECK(b.find("b")->witness[0] > 0.0);
  CHECK(is(b, "routes_agree", true));
  CHECK(b.violations() == 0);

  const VerifyReport& c = report("hellinger_half", "hypo");
  CHECK(is(c, "a", true));
  CHECK(c.violations() == 0);
}

TEST_CASE("Bregman firm nonexpansiveness") {
  const VerifyReport& a = report("shannon_abs", "DFNE");
  for (const char* l : {"a", "c", "e"}) CHECK(is(a, l, true));
  CHECK(a.violations() == 0);

  const VerifyReport& b = report("ex310", "DFNE");
  CHECK(is(b, "a", false));
  CHECK(is(b, "e", false));
  CHECK(b.find("e")->witness.size() >= 2);
  CHECK(b.violations() == 0);

  const VerifyReport& c = report("ex411", "DFNE");
  bool range_failed = false;
  for (const auto& h : c.hypotheses) range_failed = range_failed || (h.label == "range_assumption" && h.holds == false);
  CHECK(range_failed);
  CHECK(is(c, "c", true));
  CHECK(is(c, "non_maximal_witness", true));
  CHECK(c.violations() == 0);
}

TEST_CASE("non-maximality witness on ex411") {
  const VerifyContext ctx(get_instance("ex411"), 42);
  CHECK(monotonically_related(ctx.subdiff_graph(), 0.5, 1.0));
  CHECK_FALSE(left_lpsubdiff_definitional(ctx.pe(), 0.5, 1.0).member);
  const auto w = non_maximality_witness(ctx);
  REQUIRE(w);
  CHECK(monotonically_related(ctx.subdiff_graph(), w->x, w->u));
  CHECK_FALSE(left_lpsubdiff_definitional(ctx.pe(), w->x, w->u).member);
  // Points below the graph on the left are not related.
  CHECK_FALSE(monotonically_related(ctx.subdiff_graph(), 0.5, -10.0));
}

TEST_CASE("envelope convexity") {
  const VerifyReport& a = report("ex419", "envcvx");
  CHECK(is(a, "a", true));
  CHECK(is(a, "d", true));
  CHECK(is(a, "grad_formula", true));
  CHECK(a.violations() == 0);

  const VerifyReport& b = report("ex420", "envcvx");
  CHECK(is(b, "a", false));
  REQUIRE(b.find("a")->witness.size() == 3);
  const double mid = b.find("a")->witness[1];
  CHECK(mid > -0.1);
  CHECK(mid < 1.1);
  CHECK(b.violations() == 0);

  CHECK(is(report("euclid_abs", "envcvx"), "a", true));
}

TEST_CASE("B-cocoercivity") {
  CHECK(is(report("ex419", "bcoco"), "bcoco", true));
  CHECK(is(report("euclid_abs", "bcoco"), "bcoco", true));
  const VerifyReport& c = report("ex420", "bcoco");
  CHECK(is(c, "h_convex", false));
  CHECK(status(c, "h_convex", "bcoco") == ImplicationStatus::Vacuous);
  CHECK(c.violations() == 0);
  CHECK_FALSE(report("ex310", "bcoco").skipped.empty());
  CHECK_THROWS_AS((void)check_bcoco(VerifyContext(get_instance("ex310"), 1)), Error);
}

TEST_CASE("B-smoothness") {
  for (const char* n : {"hellinger_half", "euclid_quarter_sq"}) {
    const VerifyReport& r = report(n, "Bsmooth");
    CHECK(is(r, "i", true));
    CHECK(is(r, "ii", true));
    CHECK(is(r, "iii", true));
  }
  const VerifyReport& c = report("bsmooth_counter", "Bsmooth");
  CHECK(is(c, "i", false));
  CHECK(is(c, "ii", true));
  CHECK(is(c, "iii", false));
  CHECK(c.violations() == 0);
  CHECK_FALSE(report("euclid_abs", "Bsmooth").skipped.empty());
}

TEST_CASE("two-sided inequality") {
  const VerifyReport& a = report("euclid_abs", "two_sided");
  CHECK(is(a, "lower", true));
  CHECK(is(a, "upper", true));
  CHECK(is(a, "a_strong", true));
  const VerifyReport& b = report("ex419", "two_sided");
  CHECK(is(b, "lower", false));
  CHECK(is(b, "upper", true));
  const VerifyReport& c = report("ex420", "two_sided");
  CHECK(is(c, "lower", true));
  CHECK(is(c, "upper", false));
  for (const auto* r : {&a, &b, &c}) CHECK(r->violations() == 0);
}

TEST_CASE("strong convexity sufficiency") {
  for (const char* n : {"euclid_sq", "euclid_abs_plus_sq"}) {
    const VerifyReport& r = report(n, "strong_convexity");
    CHECK(r.skipped.empty());
    CHECK(is(r, "h_convex", true));
    CHECK(is(r, "prox_lipschitz", true));
    CHECK(r.violations() == 0);
  }
  try {
    (void)check_strong_convexity_sufficient(VerifyContext(get_instance("quartic_abs"), 1));
    FAIL("expected HypothesesUnmet");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::HypothesesUnmet);
  }
}

TEST_CASE("hypotheses filter") {
  const VerifyReport& r = report("burg_linear", "hypo");
  CHECK_FALSE(r.skipped.empty());
  CHECK(r.violations() == 0);
  CHECK_THROWS_AS((void)run_check("nosuch", VerifyContext(get_instance("ex310"), 1)), Error);
}

TEST_CASE("run_suite") {
  CHECK(run_suite({}, 3).empty());
  try {
    (void)run_suite({"ex310", "nosuch"}, 1);
    FAIL("expected UnknownInstance");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::UnknownInstance);
  }
  const auto rs = run_suite({"euclid_abs"}, 7);
  CHECK(rs.size() == theorem_ids().size());
  CHECK(total_violations(rs) == 0);
  for (const auto& r : rs) {
    if (!r.skipped.empty()) continue;
    for (const auto& c : r.conditions)
      if (c.holds && c.label != "non_maximal_witness") CHECK_MESSAGE(*c.holds, r.theorem << "/" << c.label);
  }
}

TEST_CASE("worked examples pass and reports are deterministic") {
  const std::vector<std::string> names = {"ex310", "ex411", "ex419", "ex420", "ex_ln"};
  const auto a = run_suite(names, 42);
  CHECK(total_violations(a) == 0);
  CHECK(to_json(a) == to_json(run_suite(names, 42)));
}

}  // TEST_SUITE
