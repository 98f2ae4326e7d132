// SPDX-License-Identifier: MIT
#include "reproduce.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

#include "bregman/error.hpp"
#include "bregman/sampling.hpp"
#include "bregman/verify.hpp"

namespace bregman::cli {

namespace {

std::string printf_str(const char* fmt, double a, double b = 0.0, double c = 0.0) {
  char buf[160];
  std::snprintf(buf, sizeof buf, fmt, a, b, c);
  return buf;
}

std::string set_str(const SubdiffSet& S) {
  if (S.empty) return "empty";
  char buf[128];
  std::snprintf(buf, sizeof buf, "%c%.9g, %.9g%c", S.lo_closed ? '[' : '(', S.lo.to_double(), S.hi.to_double(),
                S.hi_closed ? ']' : ')');
  return buf;
}

double max_abs_diff(const std::vector<double>& xs, const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) m = std::max(m, std::fabs(a[i] - b[i]));
  return m;
}

std::vector<ReproLine> ex310(const Settings& s, std::ostream& detail) {
  const Instance& in = get_instance("ex310");
  const ProxEnv pe(in, s);
  const double tol = 1e-4;
  std::size_t neg = 0, neg_ok = 0, pos = 0, pos_empty = 0, below = 0;
  double worst = 0.0;
  SubdiffSet at0;
  for (int i = 1; i <= 199; ++i) {
    const double x = -1.0 + i / 100.0;
    const SubdiffSet S = left_lpsubdiff_hull(pe, x);
    const char* kind = S.empty ? "empty" : S.is_singleton(s.tol_width) ? "singleton" : "interval";
    detail << printf_str("%+.2f  ", x) << kind << "  " << set_str(S) << '\n';
    if (i == 100) {
      at0 = S;
    } else if (x < 0) {
      ++neg;
      const double d = in.fn.derivative(x);
      const double e = S.empty ? INFINITY : std::max(std::fabs(S.lo.to_double() - d), std::fabs(S.hi.to_double() - d));
      worst = std::max(worst, e);
      neg_ok += e <= tol;
    } else {
      ++pos;
      pos_empty += S.empty;
      below += in.fn(x).value() - pe.prox_hull(x).value() > s.tol_hull;
    }
  }
  std::vector<ReproLine> out;
  out.push_back({"singleton within 1e-4 of f' on (-1,0)", neg_ok == neg,
                 std::to_string(neg_ok) + "/" + std::to_string(neg) + printf_str(", max deviation %.3g", worst)});
  out.push_back({"empty on (0,1)", pos_empty == pos, std::to_string(pos_empty) + "/" + std::to_string(pos)});
  out.push_back({"hull strictly below f on (0,1)", below == pos, std::to_string(below) + "/" + std::to_string(pos)});
  out.push_back({"x = 0 (boundary of the two regimes)", !at0.empty && at0.contains(1.0, tol),
                 set_str(at0) + ", the derivative f'(0) = 1"});
  return out;
}

std::vector<ReproLine> ex411(const Settings& s, std::ostream& detail) {
  const Instance& in = get_instance("ex411");
  const VerifyContext ctx(in, 42, s);
  const ProxEnv& pe = ctx.pe();
  std::vector<ReproLine> out;

  const SubdiffSet S = left_lpsubdiff_hull(pe, 0.0);
  out.push_back({"subdifferential at 0 is (-inf, 0.5]",
                 !S.empty && S.lo.is_neg_inf() && std::fabs(S.hi.to_double() - 0.5) <= 1e-4, set_str(S)});

  bool saw0 = false, saw1 = false;
  double far = 0.0;
  const auto ys = linspace(-0.999, 0.999, 401);
  for (double y : ys)
    for (double x : pe.left_prox(y).minimizers) {
      const double d0 = std::fabs(x), d1 = std::fabs(x - 1.0);
      saw0 = saw0 || d0 <= 1e-4;
      saw1 = saw1 || d1 <= 1e-4;
      far = std::max(far, std::min(d0, d1));
    }
  out.push_back({"prox range is {0, 1}", saw0 && saw1 && far <= 1e-4,
                 printf_str("401 ybar, max distance to {0,1} %.3g", far)});

  const ProxResult tie = pe.left_prox(1.0 / std::sqrt(2.0));
  std::string ms;
  for (double x : tie.minimizers) ms += (ms.empty() ? "" : ", ") + printf_str("%.9g", x);
  out.push_back({"two minimizers at ybar = 1/sqrt(2)", tie.minimizers.size() == 2, "{" + ms + "}"});

  const RangeProbe& rp = ctx.range();
  out.push_back({"range assumption fails", !rp.holds,
                 printf_str("ybar %.6g -> x %.6g", rp.witness_ybar, rp.witness_x)});

  const bool related = monotonically_related(ctx.subdiff_graph(), 0.5, 1.0);
  const Membership m = left_lpsubdiff_definitional(pe, 0.5, 1.0);
  out.push_back({"(0.5, 1) monotonically related but outside the graph", related && !m.member,
                 std::string(related ? "related" : "not related") + printf_str(", certificate slack %.3g", m.violation)});
  detail << "graph samples: " << ctx.subdiff_graph().size() << '\n';
  return out;
}

std::vector<ReproLine> envelope_example(const std::string& name, double (*closed)(double), bool h_convex,
                                        const Settings& s) {
  const Instance& in = get_instance(name);
  const ProxEnv pe(in, s);
  const auto xi = linspace(-3.0, 3.0, 241);
  std::vector<double> h, ref;
  std::vector<ExtReal> hv;
  for (double t : xi) {
    h.push_back(pe.h_lambda(t));
    hv.push_back(h.back());
    ref.push_back(closed(t));
  }
  const double err = max_abs_diff(xi, h, ref);
  const ConvexityResult hc = extended_convexity_test(xi, hv, s.tol_convexity);
  const auto xs = pe.domain_grid();
  std::vector<ExtReal> fv;
  for (double x : xs) fv.push_back(in.fn(x));
  const ConvexityResult fc = extended_convexity_test(xs, fv, s.tol_convexity);
  std::vector<ReproLine> out;
  out.push_back({"h_lambda matches the closed form on 241 points of [-3,3]", err <= 1e-4, printf_str("max error %.3g", err)});
  out.push_back({h_convex ? "h_lambda convex" : "h_lambda not convex", hc.convex == h_convex,
                 printf_str("worst second difference %.3g", hc.worst_violation)});
  out.push_back({h_convex ? "f not convex" : "f convex", fc.convex != h_convex,
                 printf_str("worst second difference %.3g", fc.worst_violation)});
  return out;
}

double h419(double y) { return -y; }
double h420(double y) {
  return 2.0 / 3.0 * std::pow(std::fabs(y), 1.5) - 2.0 / 3.0 * std::pow(std::fabs(y - 1.0), 1.5);
}

std::vector<ReproLine> ex_ln(const Settings& s) {
  const Instance& in = get_instance("ex_ln");
  const ThresholdBracket b = threshold_scan(in.kernel, in.fn, log_spaced(0.1, 10.0, 81), s);
  return {{"threshold bracket contains 1 with width <= 0.1", !b.all_finite && b.lo <= 1.0 && 1.0 <= b.hi && b.hi - b.lo <= 0.1,
           printf_str("[%.6g, %.6g]", b.lo, b.hi)}};
}

}  // namespace

const std::vector<std::string>& example_ids() {
  static const std::vector<std::string> ids = {"3.10", "4.11", "4.19", "4.20", "ln"};
  return ids;
}

std::vector<ReproLine> reproduce(const std::string& id, const Settings& s, std::ostream& detail) {
  if (id == "3.10") return ex310(s, detail);
  if (id == "4.11") return ex411(s, detail);
  if (id == "4.19") return envelope_example("ex419", h419, true, s);
  if (id == "4.20") return envelope_example("ex420", h420, false, s);
  if (id == "ln") return ex_ln(s);
  raise(ErrorCode::UnknownExample, "unknown example id '" + id + "'");
}

}  // namespace bregman::cli
