// SPDX-License-Identifier: MIT
#include "bregman/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <mutex>

#include "bregman/error.hpp"
#include "bregman/sampling.hpp"

namespace bregman {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Stream tags for derive_seed; one per sample set so checks stay independent.
enum : std::uint64_t {
  kTagGraphDual = 0x4701,
  kTagGraphPrimal = 0x4702,
  kTagHypoSup = 0x4801,
  kTagHypoF = 0x4802,
  kTagDfne = 0x4901,
  kTagEnvPairs = 0x4a01,
  kTagEnvGrad = 0x4a02,
  kTagBcoco = 0x4b01,
  kTagBsmooth = 0x4c01,
  kTagTwoSided = 0x4d01,
  kTagStrong = 0x4e01,
};

std::string fmtd(const char* f, double a) {
  char buf[96];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

Condition cond(std::string label, std::string description) {
  Condition c;
  c.label = std::move(label);
  c.description = std::move(description);
  return c;
}

double pair_tol(const Settings& s, double scale) { return s.tol_pair * (1.0 + std::fabs(scale)); }

VerifyReport start(const VerifyContext& ctx, const std::string& theorem) {
  VerifyReport r;
  r.instance = ctx.instance().name;
  r.theorem = theorem;
  r.seed = ctx.seed();
  const Settings& s = ctx.settings();
  r.tolerances = {{"tol_cert", s.tol_cert},         {"tol_hull", s.tol_hull},
                  {"tol_convexity", s.tol_convexity}, {"tol_pair", s.tol_pair},
                  {"grid_n", static_cast<double>(s.grid_n)}};
  return r;
}

void record_base(VerifyReport& r, const VerifyContext& ctx) {
  const Kernel& k = ctx.instance().kernel;
  r.hypothesis("legendre", k.is_legendre());
  r.hypothesis("one_coercive", k.is_one_coercive());
  if (k.is_legendre() && k.is_one_coercive()) {
    std::string why;
    const bool ok = ctx.base_hypotheses(&why);
    r.hypothesis("threshold", ok, ok ? "lambda below the prox-boundedness threshold" : why);
  } else {
    r.hypothesis("threshold", std::nullopt, "not evaluated");
  }
}

void require_base(VerifyReport& r, const VerifyContext& ctx) {
  record_base(r, ctx);
  std::string why;
  if (!ctx.base_hypotheses(&why)) raise(ErrorCode::HypothesesUnmet, ctx.instance().name + ": " + why);
}

bool record_range(VerifyReport& r, const VerifyContext& ctx) {
  const RangeProbe& rp = ctx.range();
  std::string note = std::to_string(rp.checked) + " samples; worst boundary margin " + fmtd("%.3g", rp.worst_margin);
  if (!rp.holds) note += "; witness ybar " + fmtd("%.9g", rp.witness_ybar) + " -> x " + fmtd("%.9g", rp.witness_x);
  r.hypothesis("range_assumption", rp.holds, note);
  return rp.holds;
}

Condition convexity_condition(std::string label, std::string description, const std::vector<double>& xs,
                              const std::vector<ExtReal>& vs, double tol) {
  const ConvexityResult cr = extended_convexity_test(xs, vs, tol);
  Condition c = cond(std::move(label), std::move(description));
  c.holds = cr.convex;
  c.worst_violation = cr.worst_violation;
  if (!cr.convex) {
    c.witness = {cr.witness[0], cr.witness[1], cr.witness[2]};
    c.note = "witness: second difference over the three abscissae";
  }
  return c;
}

std::vector<ExtReal> values_on(const std::vector<double>& xs, const std::function<ExtReal(double)>& g) {
  std::vector<ExtReal> vs;
  vs.reserve(xs.size());
  for (double x : xs) vs.push_back(g(x));
  return vs;
}

Condition f_convex_condition(const VerifyContext& ctx, std::string label) {
  const ProxEnv& pe = ctx.pe();
  const auto xs = pe.domain_grid();
  return convexity_condition(std::move(label), "f convex (second differences on the domain grid)", xs,
                             values_on(xs, [&](double x) { return pe.instance().fn(x); }),
                             ctx.settings().tol_convexity);
}

std::vector<double> h_grid(const VerifyContext& ctx) {
  const Interval& dw = ctx.instance().dual_window;
  return linspace(dw.lo, dw.hi, 401);
}

Condition h_convex_condition(const VerifyContext& ctx, std::string label) {
  const ProxEnv& pe = ctx.pe();
  const auto xi = h_grid(ctx);
  return convexity_condition(std::move(label), "h_lambda convex (second differences on the xi grid)", xi,
                             values_on(xi, [&](double t) { return ExtReal(pe.h_lambda(t)); }),
                             ctx.settings().tol_convexity);
}

// Prox selections at sampled dual points, one entry per minimizer.
struct DualSample {
  double eta;
  double x;
  bool interior;
};

std::vector<DualSample> dual_prox_samples(const VerifyContext& ctx, std::uint64_t tag, bool all_minimizers) {
  const ProxEnv& pe = ctx.pe();
  const Kernel& k = pe.kernel();
  const double margin = ctx.settings().range_margin;
  auto interior = [&](double x) {
    const Interval& d = k.domain();
    return x - d.lo > margin && d.hi - x > margin;
  };
  std::vector<DualSample> out;
  for (double eta : ctx.dual_samples(tag, ctx.settings().samples)) {
    if (!all_minimizers) {
      const double x = pe.prox_at_dual(eta);
      out.push_back({eta, x, interior(x)});
      continue;
    }
    const ProxResult p = pe.left_prox(k.grad_conj(eta));
    for (double x : p.minimizers) out.push_back({eta, x, interior(x)});
  }
  return out;
}

Instance negated(const Instance& in) {
  Instance m = in;
  const ProperFn f = in.fn;
  m.fn.name = "-" + f.name;
  m.fn.eval_fn = [f](double x) { return -f.eval_fn(x); };
  if (f.derivative) m.fn.derivative = [f](double x) { return -f.derivative(x); };
  m.fn.convex.reset();
  m.fn.prox_threshold.reset();
  return m;
}

double derivative_at(const ProperFn& f, double x, double width) {
  if (f.derivative) return f.derivative(x);
  return finite_diff_grad([&](double t) { return f(t); }, x, 1e-6 * std::max(1.0, width));
}

// --- weak convexity: convex-valuedness of prox o grad kappa* -------------------

struct GapResult {
  double excess = -kInf;
  double t = 0.0;
};

// Largest value of the objective above the envelope strictly between a and b.
GapResult gap_between(const ProxEnv& pe, double ybar, double v, double a, double b) {
  GapResult g;
  if (b < a) std::swap(a, b);
  for (int i = 1; i < 20; ++i) {
    const double t = a + (b - a) * i / 20.0;
    const double e = pe.left_objective(t, ybar).to_double() - v;
    if (e > g.excess) g = {e, t};
  }
  return g;
}

Condition convex_valued_condition(const VerifyContext& ctx) {
  const ProxEnv& pe = ctx.pe();
  const Instance& in = pe.instance();
  const Kernel& k = in.kernel;
  const Settings& s = ctx.settings();
  const Interval dom = in.search_domain();
  const double eps_x = 1e-3 * std::max(1.0, std::isfinite(dom.width()) ? dom.width() : 1.0);

  Condition c = cond("d", "prox o grad kappa* convex-valued (no gap between minimizers)");
  c.holds = true;
  double worst = 0.0;
  std::size_t jumps = 0;

  auto test = [&](double eta, double a, double b) {
    const double ybar = k.grad_conj(eta);
    const ProxResult p = pe.left_prox(ybar);
    const double v = p.value.to_double();
    std::vector<double> ends = p.minimizers;
    ends.push_back(a);
    ends.push_back(b);
    std::sort(ends.begin(), ends.end());
    for (std::size_t i = 0; i + 1 < ends.size(); ++i) {
      if (ends[i + 1] - ends[i] <= eps_x) continue;
      const GapResult g = gap_between(pe, ybar, v, ends[i], ends[i + 1]);
      const double tol = s.tol_cert * (1.0 + std::fabs(v));
      if (g.excess > tol && g.excess > worst) {
        worst = g.excess;
        c.holds = false;
        c.witness = {eta, ends[i], ends[i + 1], g.t, g.excess};
      }
    }
  };

  const Interval& dw = in.dual_window;
  const auto etas = linspace(dw.lo, dw.hi, s.samples);
  std::vector<double> xs;
  xs.reserve(etas.size());
  for (double e : etas) xs.push_back(pe.prox_at_dual(e));
  for (std::size_t i = 0; i < etas.size(); ++i) {
    const ProxResult p = pe.left_prox(k.grad_conj(etas[i]));
    if (p.minimizers.size() >= 2) test(etas[i], p.minimizers.front(), p.minimizers.back());
  }

  // Bisect every large step of the selection down to a jump, then look for a
  // raised objective across it.
  struct Seg {
    double ea, xa, eb, xb;
    int depth;
  };
  std::vector<Seg> stack;
  for (std::size_t i = 0; i + 1 < etas.size(); ++i)
    if (std::fabs(xs[i + 1] - xs[i]) > eps_x) stack.push_back({etas[i], xs[i], etas[i + 1], xs[i + 1], 0});
  std::reverse(stack.begin(), stack.end());
  while (!stack.empty()) {
    const Seg g = stack.back();
    stack.pop_back();
    if (std::fabs(g.xb - g.xa) <= eps_x) continue;
    const double em = 0.5 * (g.ea + g.eb);
    if (g.eb - g.ea <= 1e-11 * std::max(1.0, std::fabs(em)) || g.depth >= 60 || em == g.ea || em == g.eb) {
      ++jumps;
      test(em, g.xa, g.xb);
      continue;
    }
    const double xm = pe.prox_at_dual(em);
    stack.push_back({em, xm, g.eb, g.xb, g.depth + 1});
    stack.push_back({g.ea, g.xa, em, xm, g.depth + 1});
  }
  c.worst_violation = -worst;
  c.note = std::to_string(jumps) + " selection jump(s) located";
  if (!*c.holds) c.note += "; witness: eta, gap ends, raised abscissa, excess";
  return c;
}

}  // namespace

// --- context -------------------------------------------------------------------

struct VerifyContext::Lazy {
  std::once_flag range_once, base_once, graph_once;
  RangeProbe range;
  bool base = false;
  std::string base_why;
  std::vector<GraphPoint> graph;
};

VerifyContext::VerifyContext(const Instance& inst, std::uint64_t seed, const Settings& s)
    : pe_(inst, s), seed_(seed), lazy_(std::make_shared<Lazy>()) {}

const RangeProbe& VerifyContext::range() const {
  std::call_once(lazy_->range_once, [&] { lazy_->range = range_assumption_probe(pe_, seed_); });
  return lazy_->range;
}

bool VerifyContext::base_hypotheses(std::string* why) const {
  std::call_once(lazy_->base_once, [&] { lazy_->base = hull_hypotheses(pe_, &lazy_->base_why); });
  if (why) *why = lazy_->base_why;
  return lazy_->base;
}

std::vector<double> VerifyContext::primal_samples(std::uint64_t tag, std::size_t n) const {
  Rng rng(derive_seed(seed_, tag));
  return sample_interior(instance().search_domain(), n, rng, settings().sample_inset);
}

std::vector<double> VerifyContext::dual_samples(std::uint64_t tag, std::size_t n) const {
  Rng rng(derive_seed(seed_, tag));
  return sample_interior(instance().dual_window, n, rng, settings().sample_inset);
}

const std::vector<GraphPoint>& VerifyContext::subdiff_graph() const {
  std::call_once(lazy_->graph_once, [&] {
    const Kernel& k = pe_.kernel();
    const double lam = pe_.lambda();
    // Slopes near x are resolved to about grad kappa variation over 1e-7|x|.
    auto sigma = [&](double x) {
      const double d = 1e-7 * std::max(1.0, std::fabs(x));
      if (!k.in_interior(x - d) || !k.in_interior(x + d)) return settings().tol_cert;
      return std::fabs(k.grad(x + d) - k.grad(x - d)) / lam + settings().tol_cert;
    };
    auto& g = lazy_->graph;
    for (const DualSample& d : dual_prox_samples(*this, kTagGraphDual, true))
      if (d.interior) g.push_back({d.x, (d.eta - k.grad(d.x)) / lam, sigma(d.x)});
    for (double x : primal_samples(kTagGraphPrimal, settings().samples)) {
      if (!k.in_interior(x)) continue;
      for (double u : left_lpsubdiff_support(pe_, x).probes()) g.push_back({x, u, sigma(x)});
    }
  });
  return lazy_->graph;
}

bool monotonically_related(const std::vector<GraphPoint>& graph, double x, double u, double tol) {
  for (const GraphPoint& p : graph)
    if ((x - p.x) * (u - p.u) < -(tol + std::fabs(x - p.x) * p.sigma)) return false;
  return true;
}

std::optional<GraphPoint> non_maximality_witness(const VerifyContext& ctx) {
  const auto& graph = ctx.subdiff_graph();
  const Interval dom = inset_interval(ctx.instance().search_domain().interior(), ctx.settings().sample_inset);
  const auto xs = linspace(dom.lo, dom.hi, 21);
  const auto us = linspace(-10.0, 10.0, 41);
  // Only abscissae with a certified empty set: near steep parts of the graph a
  // sparse sample would relate almost anything.
  for (double x : xs) {
    if (!ctx.instance().kernel.in_interior(x) || !left_lpsubdiff_support(ctx.pe(), x).empty) continue;
    for (double u : us) {
      if (!monotonically_related(graph, x, u)) continue;
      if (!left_lpsubdiff_definitional(ctx.pe(), x, u).member) return GraphPoint{x, u};
    }
  }
  return std::nullopt;
}

// --- checks --------------------------------------------------------------------

VerifyReport check_weak_convexity(const VerifyContext& ctx) {
  VerifyReport r = start(ctx, "hypo");
  require_base(r, ctx);
  const ProxEnv& pe = ctx.pe();
  const Instance& in = pe.instance();
  const Kernel& k = in.kernel;
  const Settings& s = ctx.settings();
  const double lam = in.lambda;
  const auto xs = pe.domain_grid();

  r.add(convexity_condition("a", "f + kappa/lambda convex", xs, values_on(xs, [&](double x) {
                              const ExtReal fx = in.fn(x);
                              return fx.is_pos_inf() ? fx : fx + ExtReal(k.eval(x).value() / lam);
                            }),
                            s.tol_convexity));

  {
    Condition c = cond("b", "hull_lambda f = f on the domain grid (convex-hull route)");
    const HullCurve& h = pe.conv_hull();
    double worst = 0.0, wx = 0.0;
    for (double x : xs) {
      const ExtReal fx = in.fn(x);
      if (!fx.is_finite()) continue;
      const double gap = (lam * fx.value() + k.eval(x).value() - h(x).to_double()) / lam;
      if (gap > worst) worst = gap, wx = x;
    }
    c.holds = worst <= s.tol_hull;
    c.worst_violation = worst;
    if (!*c.holds) c.witness = {wx, worst};
    r.add(c);
  }

  {
    Condition c = cond("routes_agree", "hull via the supremum route matches the convex-hull route");
    double worst = 0.0, wx = 0.0;
    Rng rng(derive_seed(ctx.seed(), kTagHypoSup));
    for (double x : sample_interior(in.search_domain(), 50, rng, s.sample_inset)) {
      if (!in.fn(x).is_finite()) continue;
      const double d = std::fabs(pe.prox_hull(x).to_double() - pe.hull_conv(x).to_double());
      if (d > worst) worst = d, wx = x;
    }
    c.holds = worst <= 1e-5;
    c.worst_violation = worst;
    c.witness = {wx, worst};
    c.note = "50 sampled points, tolerance 1e-5";
    r.add(c);
  }

  r.add(convex_valued_condition(ctx));

  {
    Condition c = cond("f", "left subdifferential nonempty on sampled relint conv dom f");
    std::size_t empty = 0, n = 0;
    for (double x : ctx.primal_samples(kTagHypoF, s.samples)) {
      if (!k.in_interior(x) || !in.fn(x).is_finite()) continue;
      ++n;
      if (left_lpsubdiff_support(pe, x).empty) {
        if (empty == 0) c.witness = {x};
        ++empty;
      }
    }
    c.holds = empty == 0;
    c.worst_violation = n ? static_cast<double>(empty) / static_cast<double>(n) : 0.0;
    c.note = std::to_string(empty) + " of " + std::to_string(n) + " samples empty";
    r.add(c);
  }

  const Interval d = in.fn.domain.intersect(k.domain());
  const bool inclusion = d.lo < d.hi && d.lo >= k.domain().lo && d.hi <= k.domain().hi;
  r.hypothesis("relint_inclusion", inclusion, "relint conv dom f inside int X");

  r.equivalent("a", "b");
  r.equivalent("b", "d");
  r.implies({"d"}, "f");
  r.implies({"f"}, "a", inclusion ? "" : "relint conv dom f not inside int X");
  r.implies({}, "routes_agree");
  r.notes.push_back(
      "maximal monotonicity and limiting-subdifferential conditions are represented by (d), (f) and the "
      "witness search of the DFNE check; no finite criterion certifies them");
  return r;
}

VerifyReport check_dfne(const VerifyContext& ctx) {
  VerifyReport r = start(ctx, "DFNE");
  require_base(r, ctx);
  const bool range = record_range(r, ctx);
  const ProxEnv& pe = ctx.pe();
  const Kernel& k = pe.kernel();
  const Settings& s = ctx.settings();

  r.add(f_convex_condition(ctx, "a"));

  {
    Condition c = cond("c", "left subdifferential monotone on the sampled graph");
    const auto& g = ctx.subdiff_graph();
    double worst = 0.0;
    bool ok = true;
    for (std::size_t i = 0; i < g.size(); ++i)
      for (std::size_t j = i + 1; j < g.size(); ++j) {
        const double dx = g[i].x - g[j].x, du = g[i].u - g[j].u;
        const double m = dx * du;
        if (m < -(s.tol_pair + std::fabs(dx) * (g[i].sigma + g[j].sigma)) && m < worst) {
          worst = m;
          ok = false;
          c.witness = {g[i].x, g[i].u, g[j].x, g[j].u};
        }
      }
    c.holds = ok;
    c.worst_violation = worst;
    c.note = std::to_string(g.size()) + " graph points";
    r.add(c);
  }

  const auto pts = dual_prox_samples(ctx, kTagDfne, true);
  auto fne = [&](const std::string& label, bool interior_only) {
    Condition c = cond(label, interior_only ? "grad-kappa firm nonexpansiveness on interior prox outputs"
                                     : "grad-kappa firm nonexpansiveness of prox o grad kappa*");
    double worst = 0.0;
    bool ok = true;
    std::size_t used = 0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (interior_only && !pts[i].interior) continue;
      ++used;
      for (std::size_t j = i + 1; j < pts.size(); ++j) {
        if (interior_only && !pts[j].interior) continue;
        const DualSample &a = pts[i], &b = pts[j];
        const double lhs = (a.x - b.x) * (a.eta - b.eta);
        double rhs = 0.0;
        if (a.x != b.x) rhs = (a.interior && b.interior) ? symmetrized_gap(k, a.x, b.x) : kInf;
        const double slack = lhs - rhs;
        if (slack < -pair_tol(s, a.eta - b.eta) && slack < worst) {
          worst = slack;
          ok = false;
          c.witness = {a.eta, a.x, b.eta, b.x};
        }
      }
    }
    c.holds = ok;
    c.worst_violation = worst;
    c.note = std::to_string(used) + " prox samples";
    if (!ok) c.note += "; witness: eta1, x1, eta2, x2";
    r.add(c);
  };
  fne("e", false);

  if (range) {
    r.equivalent("a", "c");
    r.equivalent("c", "e");
    r.equivalent("a", "e");
  } else {
    fne("e_interior", true);
    const std::string why = "range assumption fails; only monotonicity-side implications are asserted";
    r.implies({"a"}, "c");
    r.implies({"c"}, "e_interior");
    r.implies({"c"}, "a", why);
    r.implies({"e"}, "c", why);
    r.implies({"c"}, "e", why);
    Condition w = cond("non_maximal_witness", "a lattice point monotonically related to the graph but outside it");
    const auto wp = non_maximality_witness(ctx);
    w.holds = wp.has_value();
    if (wp) w.witness = {wp->x, wp->u};
    w.note = "witness search only; a miss certifies nothing";
    r.add(w);
    r.notes.push_back("degraded mode: range assumption fails");
  }
  return r;
}

VerifyReport check_env_convexity(const VerifyContext& ctx) {
  VerifyReport r = start(ctx, "envcvx");
  require_base(r, ctx);
  const bool range = record_range(r, ctx);
  const ProxEnv& pe = ctx.pe();
  const Kernel& k = pe.kernel();
  const Settings& s = ctx.settings();
  const double lam = pe.lambda();

  const Condition& a = r.add(h_convex_condition(ctx, "a"));
  const bool a_holds = a.holds.value_or(false);

  {
    Condition c = cond("d", "upper inequality (x1-x2)(xi1-xi2) <= (grad kappa*(xi1)-grad kappa*(xi2))(xi1-xi2)");
    const auto pts = dual_prox_samples(ctx, kTagEnvPairs, false);
    double worst = 0.0;
    bool ok = true;
    for (std::size_t i = 0; i < pts.size(); ++i)
      for (std::size_t j = i + 1; j < pts.size(); ++j) {
        const double de = pts[i].eta - pts[j].eta;
        const double slack = (k.grad_conj(pts[i].eta) - k.grad_conj(pts[j].eta)) * de - (pts[i].x - pts[j].x) * de;
        if (slack < -pair_tol(s, de) && slack < worst) {
          worst = slack;
          ok = false;
          c.witness = {pts[i].eta, pts[i].x, pts[j].eta, pts[j].x};
        }
      }
    c.holds = ok;
    c.worst_violation = worst;
    r.add(c);
  }

  {
    Condition c = cond("grad_formula", "grad h_lambda = (grad kappa* - prox o grad kappa*)/lambda vs finite differences");
    if (a_holds) {
      Rng rng(derive_seed(ctx.seed(), kTagEnvGrad));
      double worst = 0.0, wx = 0.0;
      const double h = 1e-5;
      for (double xi : sample_interior(pe.instance().dual_window, 20, rng, 1e-2)) {
        const double fd = (pe.h_lambda(xi + h) - pe.h_lambda(xi - h)) / (2 * h);
        const double formula = (k.grad_conj(xi) - pe.prox_at_dual(xi)) / lam;
        const double e = std::fabs(fd - formula);
        if (e > worst) worst = e, wx = xi;
      }
      c.holds = worst <= 1e-4;
      c.worst_violation = worst;
      c.witness = {wx, worst};
      c.note = "20 points, central differences with step 1e-5";
    } else {
      c.note = "not evaluated: h_lambda is not convex";
    }
    r.add(c);
  }

  r.equivalent("a", "d", range ? "" : "range assumption fails");
  r.implies({"a"}, "grad_formula");
  return r;
}

VerifyReport check_bcoco(const VerifyContext& ctx) {
  VerifyReport r = start(ctx, "bcoco");
  const ProxEnv& pe = ctx.pe();
  const Kernel& k = pe.kernel();
  if (!k.domain().is_reals()) raise(ErrorCode::DomainNotFull, ctx.instance().name + ": kernel domain is not all of R");
  require_base(r, ctx);
  const Settings& s = ctx.settings();
  const double lam = pe.lambda();

  r.add(h_convex_condition(ctx, "h_convex"));

  Condition c = cond("bcoco", "B*-cocoercivity inequality of h_lambda on sampled pairs");
  const auto xi = ctx.dual_samples(kTagBcoco, 100);
  std::vector<double> h(xi.size()), dh(xi.size()), g(xi.size());
  for (std::size_t i = 0; i < xi.size(); ++i) {
    g[i] = k.grad_conj(xi[i]);
    h[i] = pe.h_lambda(xi[i]);
    dh[i] = (g[i] - pe.prox_at_dual(xi[i])) / lam;
  }
  double worst = 0.0;
  bool ok = true;
  for (std::size_t i = 0; i < xi.size(); ++i)
    for (std::size_t j = 0; j < xi.size(); ++j) {
      if (i == j) continue;
      const double lhs = lam * (h[i] - h[j] - dh[j] * (xi[i] - xi[j]));
      const double rhs = bregman_distance(k, g[i] - lam * (dh[i] - dh[j]), g[i]).to_double();
      const double slack = lhs - rhs;
      if (slack < -pair_tol(s, xi[i] - xi[j]) && slack < worst) {
        worst = slack;
        ok = false;
        c.witness = {xi[i], xi[j], slack};
      }
    }
  c.holds = ok;
  c.worst_violation = worst;
  c.note = "100^2 ordered pairs";
  r.add(c);

  r.equivalent("h_convex", "bcoco");
  return r;
}

VerifyReport check_bsmooth(const VerifyContext& ctx) {
  VerifyReport r = start(ctx, "Bsmooth");
  const Instance& in = ctx.instance();
  const Kernel& k = in.kernel;
  r.hypothesis("legendre", k.is_legendre());
  r.hypothesis("one_coercive", k.is_one_coercive());
  if (!k.is_legendre() || !k.is_one_coercive())
    raise(ErrorCode::HypothesesUnmet, in.name + ": kernel is not Legendre and 1-coercive");
  if (!in.smoothness) raise(ErrorCode::HypothesesUnmet, in.name + ": no smoothness constant L annotated");
  const double L = *in.smoothness;
  const Settings& s = ctx.settings();
  r.tolerances.emplace_back("L", L);

  Instance plus = in;
  plus.kernel = k.scaled(L);
  plus.lambda = 1.0;
  plus.fn.prox_threshold.reset();
  const ProxEnv pp(plus, s), pm(negated(plus), s);
  const Interval kd = k.domain();
  const double width = std::isfinite(kd.width()) ? kd.width() : 1.0;

  {
    Condition c = cond("i", "+-grad f(x) certified in the L kappa level subdifferential of +-f at sampled x");
    std::size_t fails = 0, n = 0;
    double worst = 0.0;
    for (double x : ctx.primal_samples(kTagBsmooth, s.samples)) {
      if (!in.fn.domain.in_interior(x) || !k.in_interior(x)) continue;
      ++n;
      const double d = derivative_at(in.fn, x, width);
      const Membership mp = left_lpsubdiff_definitional(pp, x, d);
      const Membership mm = left_lpsubdiff_definitional(pm, x, -d);
      for (const auto& [m, sign] : {std::pair{mp, 1.0}, std::pair{mm, -1.0}}) {
        if (m.member) continue;
        if (fails == 0) c.witness = {x, sign, m.violation, m.witness};
        ++fails;
        worst = std::min(worst, m.violation);
      }
    }
    c.holds = fails == 0;
    c.worst_violation = worst;
    c.note = std::to_string(fails) + " failed certificates over " + std::to_string(n) + " points";
    r.add(c);
  }

  {
    const auto grid = pp.domain_grid();
    std::vector<double> xs;
    for (double x : grid)
      if (k.in_interior(x)) xs.push_back(x);
    const Kernel& kl = plus.kernel;
    const Condition cp = convexity_condition("ii+", "", xs, values_on(xs, [&](double x) {
                                               return kl.eval(x) + in.fn(x);
                                             }),
                                             s.tol_convexity);
    const Condition cm = convexity_condition("ii-", "", xs, values_on(xs, [&](double x) {
                                               return kl.eval(x) - in.fn(x);
                                             }),
                                             s.tol_convexity);
    Condition c = cond("ii", "L kappa + f and L kappa - f convex on the interior");
    c.holds = *cp.holds && *cm.holds;
    c.worst_violation = std::min(cp.worst_violation, cm.worst_violation);
    if (!*cp.holds) c.witness = cp.witness, c.note = "L kappa + f fails";
    else if (!*cm.holds) c.witness = cm.witness, c.note = "L kappa - f fails";
    r.add(c);
  }

  {
    Condition c = cond("iii", "f continuous along the interior at closed boundary points");
    bool ok = true;
    double worst = 0.0;
    std::size_t checked = 0;
    auto side = [&](double b, double inward) {
      const ExtReal fb = in.fn(b);
      if (!fb.is_finite()) return;
      ++checked;
      const double near = b + inward * 1e-10 * width;
      const double d = std::fabs(fb.value() - in.fn(near).to_double());
      if (d > worst) worst = d;
      if (d > 1e-3) {
        if (ok) c.witness = {b, fb.value(), in.fn(near).to_double()};
        ok = false;
      }
    };
    if (kd.lo_closed) side(kd.lo, 1.0);
    if (kd.hi_closed) side(kd.hi, -1.0);
    c.holds = ok;
    c.worst_violation = worst;
    c.note = checked ? "limit approximated at distance 1e-10 of the domain width, tolerance 1e-3"
                     : "no closed boundary point in dom f";
    r.add(c);
  }

  r.implies({"i"}, "ii");
  r.implies({"ii", "iii"}, "i");
  return r;
}

VerifyReport check_two_sided(const VerifyContext& ctx) {
  VerifyReport r = start(ctx, "two_sided");
  require_base(r, ctx);
  record_range(r, ctx);
  const ProxEnv& pe = ctx.pe();
  const Instance& in = pe.instance();
  const Kernel& k = in.kernel;
  const Settings& s = ctx.settings();
  const double lam = in.lambda;

  const Condition fc = f_convex_condition(ctx, "f_convex");
  const Condition hc = h_convex_condition(ctx, "h_convex");
  r.add(fc);
  r.add(hc);
  {
    Condition c = cond("i", "f convex and h_lambda convex");
    c.holds = *fc.holds && *hc.holds;
    c.worst_violation = std::min(fc.worst_violation, hc.worst_violation);
    c.witness = !*fc.holds ? fc.witness : hc.witness;
    r.add(c);
  }

  const auto pts = dual_prox_samples(ctx, kTagTwoSided, false);
  Condition lo = cond("lower", "symmetrized_gap(x1,x2) <= (x1-x2)(xi1-xi2)");
  Condition up = cond("upper", "(x1-x2)(xi1-xi2) <= (grad kappa*(xi1)-grad kappa*(xi2))(xi1-xi2)");
  lo.holds = up.holds = true;
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      const DualSample &a = pts[i], &b = pts[j];
      const double de = a.eta - b.eta;
      const double m = (a.x - b.x) * de;
      double gap = 0.0;
      if (a.x != b.x) gap = (a.interior && b.interior) ? symmetrized_gap(k, a.x, b.x) : kInf;
      const double sl = m - gap;
      const double su = (k.grad_conj(a.eta) - k.grad_conj(b.eta)) * de - m;
      const double tol = pair_tol(s, de);
      if (sl < -tol && sl < lo.worst_violation) {
        lo.holds = false;
        lo.worst_violation = sl;
        lo.witness = {a.eta, a.x, b.eta, b.x};
      }
      if (su < -tol && su < up.worst_violation) {
        up.holds = false;
        up.worst_violation = su;
        up.witness = {a.eta, a.x, b.eta, b.x};
      }
    }
  r.add(lo);
  r.add(up);
  {
    Condition c = cond("ii", "two-sided inequality on sampled pairs");
    c.holds = *lo.holds && *up.holds;
    c.worst_violation = std::min(lo.worst_violation, up.worst_violation);
    c.witness = !*lo.holds ? lo.witness : up.witness;
    c.note = std::to_string(pts.size()) + " samples";
    r.add(c);
  }
  r.equivalent("i", "ii");

  if (k.domain().is_reals()) {
    const auto xs = pe.domain_grid();
    const Condition bs =
        convexity_condition("b_strong", "lambda f convex (B-strong convexity of lambda f + kappa)", xs,
                            values_on(xs, [&](double x) { return lam * in.fn(x); }), s.tol_convexity);
    r.add(bs);
    Condition as = cond("a_strong", "anisotropic strong convexity of lambda f + kappa on sampled subgradient pairs");
    as.holds = true;
    std::vector<double> sub;
    for (std::size_t i = 0; i < xs.size(); i += 10) sub.push_back(xs[i]);
    auto psi = [&](double x) { return lam * in.fn(x) + k.eval(x); };
    for (const DualSample& p : pts) {
      const double gv = k.grad_conj(p.eta);
      const double base = psi(p.x).to_double() - k.eval(gv).value();
      for (double x : sub) {
        const ExtReal px = psi(x);
        if (!px.is_finite()) continue;
        const double rhs = base + k.eval(x - p.x + gv).value();
        const double slack = px.value() - rhs;
        if (slack < -s.tol_cert * (1.0 + std::fabs(rhs)) && slack < as.worst_violation) {
          as.holds = false;
          as.worst_violation = slack;
          as.witness = {p.x, p.eta, x, slack};
        }
      }
    }
    as.note = "pairs (prox output, xi) against every tenth domain grid point";
    r.add(as);
    Condition c = cond("iii", "lambda f + kappa B- and anisotropically strongly convex");
    c.holds = *bs.holds && *as.holds;
    c.worst_violation = std::min(bs.worst_violation, as.worst_violation);
    c.witness = !*bs.holds ? bs.witness : as.witness;
    r.add(c);
    r.equivalent("ii", "iii");
  }
  return r;
}

VerifyReport check_strong_convexity_sufficient(const VerifyContext& ctx) {
  VerifyReport r = start(ctx, "strong_convexity");
  const ProxEnv& pe = ctx.pe();
  const Instance& in = pe.instance();
  const Kernel& k = in.kernel;
  const Settings& s = ctx.settings();
  const double lam = in.lambda;
  // Only the energy kernel has a globally Lipschitz gradient in the catalog.
  if (k.name() != "ENERGY") raise(ErrorCode::HypothesesUnmet, in.name + ": grad kappa is not globally Lipschitz");
  const double L = 1.0;
  r.tolerances.emplace_back("L", L);
  require_base(r, ctx);

  const auto xs = pe.domain_grid();
  Condition sc = convexity_condition("strongly_convex", "lambda f + kappa - L x^2/2 convex", xs,
                                     values_on(xs, [&](double x) {
                                       return lam * in.fn(x) + k.eval(x) - ExtReal(0.5 * L * x * x);
                                     }),
                                     s.tol_convexity);
  if (!*sc.holds) raise(ErrorCode::HypothesesUnmet, in.name + ": lambda f + kappa is not L-strongly convex");
  r.add(sc);
  r.add(h_convex_condition(ctx, "h_convex"));

  {
    Condition c = cond("prox_lipschitz", "prox o grad kappa* single-valued with Lipschitz ratio <= 1/L");
    std::vector<double> xi, x;
    bool single = true;
    for (double e : ctx.dual_samples(kTagStrong, s.samples)) {
      const ProxResult p = pe.left_prox(k.grad_conj(e));
      if (p.minimizers.size() != 1) {
        if (single) c.witness = {e, static_cast<double>(p.minimizers.size())};
        single = false;
        continue;
      }
      xi.push_back(e);
      x.push_back(p.minimizers.front());
    }
    double worst = 0.0;
    bool ok = single;
    for (std::size_t i = 0; i < xi.size(); ++i)
      for (std::size_t j = i + 1; j < xi.size(); ++j) {
        const double de = std::fabs(xi[i] - xi[j]);
        if (de < 1e-3) continue;
        const double ratio = std::fabs(x[i] - x[j]) / de;
        worst = std::max(worst, ratio);
        if (ratio > 1.0 / L + s.tol_pair * (1.0 + 1.0 / de)) {
          if (ok) c.witness = {xi[i], xi[j], ratio};
          ok = false;
        }
      }
    c.holds = ok;
    c.worst_violation = worst;
    c.note = "worst_violation holds the largest sampled ratio";
    r.add(c);
  }

  r.implies({"strongly_convex"}, "h_convex");
  r.implies({"strongly_convex"}, "prox_lipschitz");
  return r;
}

// --- suite ---------------------------------------------------------------------

const std::vector<std::string>& theorem_ids() {
  static const std::vector<std::string> ids = {"hypo", "DFNE", "envcvx", "bcoco", "Bsmooth", "two_sided",
                                               "strong_convexity"};
  return ids;
}

VerifyReport run_check(const std::string& theorem, const VerifyContext& ctx) {
  try {
    if (theorem == "hypo") return check_weak_convexity(ctx);
    if (theorem == "DFNE") return check_dfne(ctx);
    if (theorem == "envcvx") return check_env_convexity(ctx);
    if (theorem == "bcoco") return check_bcoco(ctx);
    if (theorem == "Bsmooth") return check_bsmooth(ctx);
    if (theorem == "two_sided") return check_two_sided(ctx);
    if (theorem == "strong_convexity") return check_strong_convexity_sufficient(ctx);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::HypothesesUnmet && e.code() != ErrorCode::DomainNotFull) throw;
    VerifyReport r = start(ctx, theorem);
    record_base(r, ctx);
    r.skipped = e.what();
    return r;
  }
  raise(ErrorCode::InvalidArgument, "unknown theorem id " + theorem);
}

std::vector<VerifyReport> run_suite(const std::vector<std::string>& names, std::uint64_t seed, const Settings& s) {
  std::vector<const Instance*> insts;
  for (const auto& n : names) insts.push_back(&get_instance(n));
  std::vector<VerifyReport> out;
  for (const Instance* in : insts) {
    const VerifyContext ctx(*in, seed, s);
    for (const auto& t : theorem_ids()) out.push_back(run_check(t, ctx));
  }
  return out;
}

std::size_t total_violations(const std::vector<VerifyReport>& reports) {
  std::size_t n = 0;
  for (const auto& r : reports) n += r.violations();
  return n;
}

}  // namespace bregman
