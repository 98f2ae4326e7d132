// SPDX-License-Identifier: MIT
#include "bregman/prox_env.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <optional>

namespace bregman {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Tail probes walk far out; treat evaluation failures there as +inf.
ScalarFn guarded(const ScalarFn& phi) {
  return [phi](double x) {
    try {
      return phi(x);
    } catch (const Error&) {
      return ExtReal::pos_inf();
    }
  };
}

double hausdorff(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.empty() && b.empty()) return 0.0;
  if (a.empty() || b.empty()) return kInf;
  auto one_way = [](const std::vector<double>& p, const std::vector<double>& q) {
    double worst = 0.0;
    for (double x : p) {
      double best = kInf;
      for (double y : q) best = std::min(best, std::abs(x - y));
      worst = std::max(worst, best);
    }
    return worst;
  };
  return std::max(one_way(a, b), one_way(b, a));
}

}  // namespace

ProxResult minimize_with_tails(const ScalarFn& phi, const Interval& dom, const Interval& window,
                               std::size_t n, const Settings& s) {
  Interval cur = dom.intersect(window);
  if (!cur.bounded() || !(cur.lo < cur.hi))
    raise(ErrorCode::InvalidArgument, "search region must be a bounded nonempty interval");
  const MinimizeOptions mo{s.refine_iters, s.tol_tie, s.unbounded_cap};
  auto trunc_lo = [&] { return cur.lo > dom.lo; };
  auto trunc_hi = [&] { return cur.hi < dom.hi; };

  Grid g;
  MinimizeResult r;
  for (std::size_t k = 0;; ++k) {
    g = Grid::over(cur, n, s.boundary_inset);
    r = grid_minimize(phi, g, mo);
    const double step = (g.last() - g.first()) / static_cast<double>(n - 1);
    const bool lo_hit = trunc_lo() && r.minimizers.front() <= g.first() + 1.5 * step;
    const bool hi_hit = trunc_hi() && r.minimizers.back() >= g.last() - 1.5 * step;
    if (!(lo_hit || hi_hit) || k >= s.max_window_expansions) break;
    const double w = cur.width();
    if (lo_hit) {
      const double nl = cur.lo - w;
      if (nl <= dom.lo) {
        cur.lo = dom.lo;
        cur.lo_closed = dom.lo_closed;
      } else {
        cur.lo = nl;
      }
    }
    if (hi_hit) {
      const double nh = cur.hi + w;
      if (nh >= dom.hi) {
        cur.hi = dom.hi;
        cur.hi_closed = dom.hi_closed;
      } else {
        cur.hi = nh;
      }
    }
    if (!cur.bounded()) raise(ErrorCode::Unbounded, "minimizer escapes to an infinite unbounded side");
  }

  ProxResult out;
  out.value = r.value;
  out.minimizers = r.minimizers;
  const ScalarFn safe = guarded(phi);
  auto probe_side = [&](bool lo_side) {
    const bool closed = lo_side ? cur.lo_closed : cur.hi_closed;
    const bool trunc = lo_side ? trunc_lo() : trunc_hi();
    if (closed && !trunc) return;
    const double anchor = lo_side ? g.first() : g.last();
    const double target = trunc ? (lo_side ? dom.lo : dom.hi) : (lo_side ? cur.lo : cur.hi);
    const auto pts = decade_points(anchor, target, std::isinf(target) ? 60 : 300);
    const TailVerdict tv = probe_tail(safe, pts, s.unbounded_cap);
    if (tv.unbounded) raise(ErrorCode::Unbounded, "objective decreases without bound toward a domain edge");
    if (tv.best_value.to_double() < out.value.to_double() - s.tol_tie) {
      out.attained = false;
      out.value = tv.best_value;
      out.minimizers.clear();
    }
  };
  probe_side(true);
  probe_side(false);
  return out;
}

struct ProxEnv::Cache {
  std::once_flag env_once;
  std::vector<double> env_ys;
  std::vector<double> env_vals;

  std::once_flag hull_once;
  std::vector<double> hull_xs;
  std::vector<double> hull_gap;  // psi - conv psi at grid points (+inf where psi is)
  std::optional<HullCurve> hull;
};

ProxEnv::ProxEnv(Instance inst, Settings s)
    : inst_(std::move(inst)), s_(s), cache_(std::make_shared<Cache>()) {}

ExtReal ProxEnv::left_objective(double x, double ybar) const {
  const ExtReal fx = inst_.fn(x);
  if (fx.is_pos_inf()) return fx;
  const ExtReal d = bregman_distance(inst_.kernel, x, ybar);
  if (d.is_pos_inf()) return d;
  return fx + (1.0 / inst_.lambda) * d;
}

ExtReal ProxEnv::right_objective(double y, double xbar) const {
  if (!inst_.kernel.in_interior(y)) return ExtReal::pos_inf();
  const ExtReal gy = inst_.fn(y);
  if (gy.is_pos_inf()) return gy;
  const ExtReal d = bregman_distance(inst_.kernel, xbar, y);
  if (d.is_pos_inf()) return d;
  return gy + (1.0 / inst_.lambda) * d;
}

ProxResult ProxEnv::left_prox(double ybar) const {
  if (!inst_.kernel.in_interior(ybar)) raise(ErrorCode::OutsideInterior, "left_prox: ybar not interior");
  const Interval dom = inst_.kernel.domain().intersect(inst_.fn.domain);
  ProxResult r = minimize_with_tails([&](double x) { return left_objective(x, ybar); }, dom, inst_.window,
                                     s_.grid_n, s_);
  for (double x : r.minimizers) r.in_interior.push_back(inst_.kernel.in_interior(x));
  return r;
}

ProxResult ProxEnv::right_prox(double xbar) const {
  if (!inst_.kernel.domain().contains(xbar)) raise(ErrorCode::InvalidArgument, "right_prox: xbar outside domain");
  const Interval dom = inst_.kernel.domain().interior().intersect(inst_.fn.domain);
  ProxResult r = minimize_with_tails([&](double y) { return right_objective(y, xbar); }, dom, inst_.window,
                                     s_.grid_n, s_);
  for (double y : r.minimizers) r.in_interior.push_back(inst_.kernel.in_interior(y));
  return r;
}

double ProxEnv::prox_at_dual(double eta) const {
  const double ybar = inst_.kernel.grad_conj(eta);
  const ProxResult r = left_prox(ybar);
  if (r.minimizers.empty()) raise(ErrorCode::InvalidArgument, "prox is empty (infimum not attained)");
  double best = r.minimizers.front();
  ExtReal bv = left_objective(best, ybar);
  for (double x : r.minimizers) {
    const ExtReal v = left_objective(x, ybar);
    if (v < bv) {
      bv = v;
      best = x;
    }
  }
  return best;
}

double ProxEnv::h_lambda(double xi) const { return left_env(inst_.kernel.grad_conj(xi)).value(); }

const std::vector<double>& ProxEnv::env_grid() const {
  std::call_once(cache_->env_once, [this] {
    const Grid g = Grid::over(inst_.kernel_window().interior(), s_.grid_n, s_.boundary_inset);
    cache_->env_ys = g.points();
    cache_->env_vals.reserve(cache_->env_ys.size());
    for (double y : cache_->env_ys) cache_->env_vals.push_back(left_env(y).to_double());
  });
  return cache_->env_ys;
}

const std::vector<double>& ProxEnv::env_table() const {
  env_grid();
  return cache_->env_vals;
}

ExtReal ProxEnv::prox_hull(double x) const {
  if (!inst_.kernel.domain().contains(x)) raise(ErrorCode::InvalidArgument, "prox_hull: x outside the domain");
  const auto& ys = env_grid();
  const auto& ev = env_table();
  const double inv = 1.0 / inst_.lambda;
  std::size_t j = 0;
  double best = -kInf;
  for (std::size_t i = 0; i < ys.size(); ++i) {
    const double v = ev[i] - inv * bregman_distance(inst_.kernel, x, ys[i]).to_double();
    if (v > best) {
      best = v;
      j = i;
    }
  }
  auto neg = [&](double y) { return -(left_env(y) - inv * bregman_distance(inst_.kernel, x, y)); };
  double a = ys[j > 0 ? j - 1 : j];
  double b = ys[j + 1 < ys.size() ? j + 1 : j];
  // A maximizer on the table edge may sit beyond a window truncation: walk
  // outward geometrically while the objective still increases.
  const Interval& kd = inst_.kernel.domain();
  const bool at_lo = j == 0 && kd.lo < inst_.window.lo;
  const bool at_hi = j + 1 == ys.size() && kd.hi > inst_.window.hi;
  if ((at_lo || at_hi) && ys.size() > 1) {
    const double dir = at_hi ? 1.0 : -1.0;
    double step = 0.05 * (ys.back() - ys.front());
    double prev = ys[j], cur = ys[j];
    double vcur = best;
    for (int k = 0; k < 40; ++k) {
      const double next = cur + dir * step;
      if (!kd.in_interior(next)) break;
      const double v = -neg(next).to_double();
      if (!(v > vcur)) {
        a = std::min(prev, next);
        b = std::max(prev, next);
        break;
      }
      prev = cur;
      cur = next;
      vcur = v;
      best = v;
      step *= 2.0;
      a = std::min(prev, cur);
      b = std::max(prev, cur);
    }
  }
  if (a < b) {
    const auto r = golden_minimize(neg, a, b, 60);
    best = std::max(best, -r.second.to_double());
  }
  return ExtReal(best);
}

const HullCurve& ProxEnv::conv_hull() const {
  std::call_once(cache_->hull_once, [this] {
    cache_->hull_xs = domain_grid();
    std::vector<std::pair<double, ExtReal>> samples;
    samples.reserve(cache_->hull_xs.size());
    for (double x : cache_->hull_xs) {
      const ExtReal fx = inst_.fn(x);
      samples.emplace_back(x, fx.is_pos_inf() ? fx : inst_.lambda * fx + inst_.kernel.eval(x));
    }
    cache_->hull.emplace(lower_convex_envelope(samples));
    for (const auto& [x, v] : samples)
      cache_->hull_gap.push_back(v.is_finite() ? v.to_double() - (*cache_->hull)(x).to_double() : kInf);
  });
  return *cache_->hull;
}

ExtReal ProxEnv::hull_conv(double x) const {
  const HullCurve& h = conv_hull();
  const auto& xs = cache_->hull_xs;
  const ExtReal cv = h(x);
  if (!cv.is_finite()) return cv;
  auto it = std::upper_bound(xs.begin(), xs.end(), x);
  const std::size_t i1 = std::min<std::size_t>(static_cast<std::size_t>(it - xs.begin()), xs.size() - 1);
  const std::size_t i0 = i1 > 0 ? i1 - 1 : 0;
  const bool touch = cache_->hull_gap[i0] <= s_.tol_hull && cache_->hull_gap[i1] <= s_.tol_hull;
  if (touch) {
    const ExtReal fx = inst_.fn(x);
    if (fx.is_finite()) return fx;
  }
  return (1.0 / inst_.lambda) * (cv - inst_.kernel.eval(x));
}

double ProxEnv::euclid_crosscheck(double ybar) const {
  const ProxResult lp = left_prox(ybar);
  const double z = inst_.kernel.grad(ybar);
  const double lam = inst_.lambda;
  // Euclidean prox of f + (kappa - x^2/2)/lambda at z; the constant z^2/(2 lambda)
  // is dropped from the quadratic to keep magnitudes small.
  auto e = [&](double x) {
    const ExtReal fx = inst_.fn(x);
    const ExtReal kx = inst_.kernel.eval(x);
    if (fx.is_pos_inf() || kx.is_pos_inf()) return ExtReal::pos_inf();
    const double shift = (kx.to_double() - 0.5 * x * x) / lam;
    return fx + ExtReal(shift + x * (x - 2.0 * z) / (2.0 * lam));
  };
  const Interval dom = inst_.kernel.domain().intersect(inst_.fn.domain);
  const ProxResult ep = minimize_with_tails(e, dom, inst_.window, s_.grid_n + s_.grid_n / 2, s_);
  return hausdorff(lp.minimizers, ep.minimizers);
}

double ProxEnv::env_conjugate_crosscheck(double ybar) const {
  const double eta = inst_.kernel.grad(ybar);
  const double lam = inst_.lambda;
  const double lhs = lam * left_env(ybar).value();
  auto psi = [&](double x) {
    const ExtReal fx = inst_.fn(x);
    const ExtReal kx = inst_.kernel.eval(x);
    if (fx.is_pos_inf() || kx.is_pos_inf()) return ExtReal::pos_inf();
    return lam * fx + kx - ExtReal(eta * x);
  };
  const Interval dom = inst_.kernel.domain().intersect(inst_.fn.domain);
  const ProxResult m = minimize_with_tails(psi, dom, inst_.window, s_.grid_n + s_.grid_n / 2, s_);
  const double conj_psi = -m.value.value();
  return std::abs(lhs - inst_.kernel.conj(eta).value() + conj_psi);
}

std::vector<double> ProxEnv::domain_grid() const {
  return Grid::over(inst_.search_domain(), s_.grid_n, s_.boundary_inset).points();
}

std::vector<double> log_spaced(double a, double b, std::size_t n) {
  if (!(a > 0 && b > a) || n < 2) raise(ErrorCode::InvalidArgument, "log_spaced needs 0 < a < b, n >= 2");
  std::vector<double> v(n);
  const double la = std::log10(a);
  const double lb = std::log10(b);
  for (std::size_t i = 0; i < n; ++i)
    v[i] = std::pow(10.0, la + (lb - la) * static_cast<double>(i) / static_cast<double>(n - 1));
  return v;
}

ThresholdBracket threshold_scan(const Kernel& k, const ProperFn& fn, const std::vector<double>& lambdas,
                                const Settings& s) {
  if (lambdas.empty()) raise(ErrorCode::InvalidArgument, "threshold_scan needs a lambda grid");
  std::vector<double> lams = lambdas;
  std::sort(lams.begin(), lams.end());
  const Interval win = k.domain().intersect(default_window(k));
  const double probe = 0.5 * (win.lo + win.hi);
  ThresholdBracket b;
  bool have_finite = false;
  for (double lam : lams) {
    const ProxEnv pe(make_instance("threshold-scan", k, fn, lam), s);
    try {
      (void)pe.left_env(probe);
      b.lo = lam;
      have_finite = true;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::Unbounded) throw;
      if (!have_finite) raise(ErrorCode::AllUnbounded, "envelope unbounded at every lambda");
      b.hi = lam;
      return b;
    }
  }
  b.hi = kInf;
  b.all_finite = true;
  return b;
}

}  // namespace bregman
