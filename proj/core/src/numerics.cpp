// SPDX-License-Identifier: MIT
#include "bregman/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace bregman {

Interval Interval::intersect(const Interval& o) const {
  Interval r;
  if (lo > o.lo) {
    r.lo = lo;
    r.lo_closed = lo_closed;
  } else if (o.lo > lo) {
    r.lo = o.lo;
    r.lo_closed = o.lo_closed;
  } else {
    r.lo = lo;
    r.lo_closed = lo_closed && o.lo_closed;
  }
  if (hi < o.hi) {
    r.hi = hi;
    r.hi_closed = hi_closed;
  } else if (o.hi < hi) {
    r.hi = o.hi;
    r.hi_closed = o.hi_closed;
  } else {
    r.hi = hi;
    r.hi_closed = hi_closed && o.hi_closed;
  }
  return r;
}

Grid Grid::over(const Interval& iv, std::size_t n, double inset) {
  if (!iv.bounded()) raise(ErrorCode::InvalidArgument, "Grid::over needs a bounded interval");
  return Grid{iv.lo, iv.hi, n, inset, !iv.lo_closed, !iv.hi_closed};
}

double Grid::first() const { return lo_open ? lo + boundary_inset * (hi - lo) : lo; }
double Grid::last() const { return hi_open ? hi - boundary_inset * (hi - lo) : hi; }

std::vector<double> Grid::points() const {
  if (!(lo < hi)) raise(ErrorCode::InvalidArgument, "grid needs lo < hi");
  if (n < 3) raise(ErrorCode::InvalidArgument, "grid needs n >= 3");
  const double a = first();
  const double b = last();
  std::vector<double> xs(n);
  const double step = (b - a) / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) xs[i] = a + step * static_cast<double>(i);
  xs.back() = b;
  return xs;
}

std::pair<double, ExtReal> golden_minimize(const ScalarFn& phi, double a, double b,
                                           std::size_t iters) {
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  ExtReal fa = phi(a);
  ExtReal fb = phi(b);
  double c = b - invphi * (b - a);
  double d = a + invphi * (b - a);
  ExtReal fc = phi(c);
  ExtReal fd = phi(d);
  double best_x = fa <= fb ? a : b;
  ExtReal best_v = fa <= fb ? fa : fb;
  for (std::size_t it = 0; it < iters && c < d; ++it) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - invphi * (b - a);
      fc = phi(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + invphi * (b - a);
      fd = phi(d);
    }
  }
  if (fc < best_v) {
    best_v = fc;
    best_x = c;
  }
  if (fd < best_v) {
    best_v = fd;
    best_x = d;
  }
  return {best_x, best_v};
}

MinimizeResult grid_minimize(const ScalarFn& phi, const Grid& g, const MinimizeOptions& opt) {
  return grid_minimize(phi, g.points(), opt);
}

namespace {

// Golden search lands anywhere in the set where phi is flat to rounding. The
// midpoint of a slightly larger sublevel set is far more stable near
// degenerate minima.
double polish_flat_minimum(const ScalarFn& phi, double x0, ExtReal v0, double a, double b) {
  const double v = v0.to_double();
  const double level = v + 16 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::fabs(v));
  auto above = [&](double t) { return phi(t).to_double() > level; };
  auto edge = [&](double end) {
    if (!above(end)) return end;
    double in = x0, out = end;
    for (int k = 0; k < 80 && in != out; ++k) {
      const double m = 0.5 * (in + out);
      if (m == in || m == out) break;
      (above(m) ? out : in) = m;
    }
    return in;
  };
  const double l = edge(a), r = edge(b);
  const double m = 0.5 * (l + r);
  return phi(m).to_double() <= level ? m : x0;
}

}  // namespace

MinimizeResult grid_minimize(const ScalarFn& phi, const std::vector<double>& xs,
                             const MinimizeOptions& opt) {
  const std::size_t n = xs.size();
  if (n == 0) raise(ErrorCode::InvalidArgument, "empty grid");
  std::vector<ExtReal> vs(n);
  bool any_finite = false;
  for (std::size_t i = 0; i < n; ++i) {
    vs[i] = phi(xs[i]);
    any_finite = any_finite || vs[i].is_finite();
    if (vs[i].is_neg_inf()) raise(ErrorCode::Unbounded, "objective is -inf on the grid");
  }
  if (!any_finite) raise(ErrorCode::AllInfinite, "objective is +inf at every grid point");

  auto is_local_min = [&](std::size_t i) {
    if (!vs[i].is_finite()) return false;
    if (i > 0 && vs[i - 1] < vs[i]) return false;
    if (i + 1 < n && vs[i + 1] < vs[i]) return false;
    return true;
  };

  std::vector<std::pair<double, ExtReal>> cands;
  std::size_t i = 0;
  while (i < n) {
    if (!is_local_min(i)) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j + 1 < n && is_local_min(j + 1) && vs[j + 1] == vs[i]) ++j;
    if (j > i) {
      // Equal grid values: either a plateau (report both ends) or one minimum
      // strictly between them, e.g. a parabola centred between two points.
      const double a = xs[i > 0 ? i - 1 : i];
      const double b = xs[j + 1 < n ? j + 1 : j];
      const auto r = golden_minimize(phi, a, b, opt.refine_iters);
      const double v = vs[i].to_double();
      const double dip = 4 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::fabs(v));
      if (r.second.is_finite() && r.second.to_double() < v - dip) {
        const double m = polish_flat_minimum(phi, r.first, r.second, a, b);
        cands.emplace_back(m, m != r.first ? phi(m) : r.second);
      } else {
        cands.emplace_back(xs[i], vs[i]);
        cands.emplace_back(xs[j], vs[j]);
      }
    } else {
      const double a = xs[i > 0 ? i - 1 : i];
      const double b = xs[i + 1 < n ? i + 1 : i];
      std::pair<double, ExtReal> best{xs[i], vs[i]};
      if (a < b) {
        auto r = golden_minimize(phi, a, b, opt.refine_iters);
        if (r.second < best.second) best = r;
        if (best.first > a && best.first < b) {
          const double m = polish_flat_minimum(phi, best.first, best.second, a, b);
          if (m != best.first) best = {m, phi(m)};
        }
      }
      cands.push_back(best);
    }
    i = j + 1;
  }

  ExtReal vmin = ExtReal::pos_inf();
  for (const auto& c : cands) vmin = min(vmin, c.second);
  if (vmin.to_double() < -opt.unbounded_cap)
    raise(ErrorCode::Unbounded, "objective fell below -" + std::to_string(opt.unbounded_cap));

  MinimizeResult res;
  res.value = vmin;
  std::vector<std::pair<double, ExtReal>> keep;
  for (const auto& c : cands)
    if (c.second.to_double() <= vmin.to_double() + opt.tol_tie) keep.push_back(c);
  std::sort(keep.begin(), keep.end(), [](const auto& p, const auto& q) { return p.first < q.first; });
  const double span = xs.back() - xs.front();
  const double merge = 1e-9 * (span > 0 ? span : 1.0);
  for (const auto& c : keep) {
    if (!res.minimizers.empty() && c.first - res.minimizers.back() <= merge) continue;
    res.minimizers.push_back(c.first);
  }
  for (const auto& c : keep)
    if (c.second == vmin) {
      res.x = c.first;
      break;
    }
  res.multiple = res.minimizers.size() >= 2;
  return res;
}

ExtReal HullCurve::operator()(double x) const {
  if (bps_.empty() || x < bps_.front().x || x > bps_.back().x) return ExtReal::pos_inf();
  auto it = std::lower_bound(bps_.begin(), bps_.end(), x,
                             [](const Breakpoint& b, double t) { return b.x < t; });
  if (it->x == x) return it->v;
  const auto& r = *it;
  const auto& l = *(it - 1);
  const double t = (x - l.x) / (r.x - l.x);
  return l.v + t * (r.v - l.v);
}

std::pair<double, double> HullCurve::slopes_at(double x) const {
  const double inf = std::numeric_limits<double>::infinity();
  if (bps_.empty() || x < bps_.front().x || x > bps_.back().x) return {inf, -inf};
  auto it = std::lower_bound(bps_.begin(), bps_.end(), x,
                             [](const Breakpoint& b, double t) { return b.x < t; });
  if (it->x == x) return {it->left_slope, it->right_slope};
  return {it->left_slope, it->left_slope};
}

HullCurve lower_convex_envelope(const std::vector<std::pair<double, ExtReal>>& samples) {
  std::vector<std::pair<double, double>> pts;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (i > 0 && !(samples[i].first > samples[i - 1].first))
      raise(ErrorCode::InvalidArgument, "hull samples must be strictly increasing in x");
    if (samples[i].second.is_finite()) pts.emplace_back(samples[i].first, samples[i].second.to_double());
  }
  if (pts.size() < 2) raise(ErrorCode::TooFewFinite, "lower convex envelope needs >= 2 finite samples");

  // Andrew's monotone chain, lower half. Collinear points are dropped.
  std::vector<std::pair<double, double>> h;
  for (const auto& p : pts) {
    while (h.size() >= 2) {
      const auto& a = h[h.size() - 2];
      const auto& b = h[h.size() - 1];
      const double cross = (b.first - a.first) * (p.second - a.second) -
                           (b.second - a.second) * (p.first - a.first);
      if (cross <= 0.0)
        h.pop_back();
      else
        break;
    }
    h.push_back(p);
  }
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<HullCurve::Breakpoint> bps;
  bps.reserve(h.size());
  for (std::size_t k = 0; k < h.size(); ++k) {
    const double ls = k == 0 ? -inf : (h[k].second - h[k - 1].second) / (h[k].first - h[k - 1].first);
    const double rs = k + 1 == h.size() ? inf
                                        : (h[k + 1].second - h[k].second) / (h[k + 1].first - h[k].first);
    bps.push_back({h[k].first, h[k].second, ls, rs});
  }
  return HullCurve(std::move(bps));
}

double monotone_invert(const RealFn& m, double target, double lo, double hi,
                       const std::optional<Interval>& domain, double tol_inv) {
  if (!std::isfinite(target)) raise(ErrorCode::OutOfRange, "monotone_invert: non-finite target");
  if (!(lo < hi)) raise(ErrorCode::InvalidArgument, "monotone_invert: empty bracket");
  constexpr int kMaxExpand = 2000;
  int guard = 0;
  while (m(lo) > target) {
    if (!domain || ++guard > kMaxExpand) raise(ErrorCode::OutOfRange, "target below the range of m");
    const double w = hi - lo;
    double next = std::isfinite(domain->lo) ? domain->lo + 0.5 * (lo - domain->lo) : lo - 2.0 * w;
    if (!(next < lo) || !domain->in_interior(next))
      raise(ErrorCode::OutOfRange, "target below the range of m");
    hi = lo;
    lo = next;
  }
  guard = 0;
  while (m(hi) < target) {
    if (!domain || ++guard > kMaxExpand) raise(ErrorCode::OutOfRange, "target above the range of m");
    const double w = hi - lo;
    double next = std::isfinite(domain->hi) ? domain->hi - 0.5 * (domain->hi - hi) : hi + 2.0 * w;
    if (!(next > hi) || !domain->in_interior(next))
      raise(ErrorCode::OutOfRange, "target above the range of m");
    lo = hi;
    hi = next;
  }
  for (int it = 0; it < 400; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double fm = m(mid);
    if (std::abs(fm - target) <= tol_inv) return mid;
    if (fm < target)
      lo = mid;
    else
      hi = mid;
    if (hi - lo <= 1e-14 * std::max(1.0, std::abs(mid))) break;
  }
  return 0.5 * (lo + hi);
}

ConvexityResult second_difference_convexity_test(const std::vector<double>& xs,
                                                 const std::vector<double>& vs, double tol) {
  if (xs.size() != vs.size() || xs.size() < 3)
    raise(ErrorCode::InvalidArgument, "convexity test needs >= 3 paired samples");
  ConvexityResult r;
  for (std::size_t i = 1; i + 1 < xs.size(); ++i) {
    if (!std::isfinite(vs[i - 1]) || !std::isfinite(vs[i]) || !std::isfinite(vs[i + 1]))
      raise(ErrorCode::InvalidArgument, "convexity test needs finite samples");
    const double d2 = vs[i - 1] - 2.0 * vs[i] + vs[i + 1];
    if (d2 < r.worst_violation) {
      r.worst_violation = d2;
      r.witness = {xs[i - 1], xs[i], xs[i + 1]};
    }
  }
  r.convex = r.worst_violation >= -tol;
  return r;
}

ConvexityResult extended_convexity_test(const std::vector<double>& xs,
                                        const std::vector<ExtReal>& vs, double tol) {
  if (xs.size() != vs.size()) raise(ErrorCode::InvalidArgument, "size mismatch");
  std::size_t first = xs.size();
  std::size_t last = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (vs[i].is_neg_inf()) raise(ErrorCode::InvalidArgument, "convexity test on -inf value");
    if (vs[i].is_finite()) {
      first = std::min(first, i);
      last = i;
    }
  }
  ConvexityResult r;
  if (first == xs.size()) return r;  // empty effective domain
  for (std::size_t i = first; i <= last; ++i) {
    if (!vs[i].is_finite()) {
      r.convex = false;
      r.worst_violation = -std::numeric_limits<double>::infinity();
      r.witness = {xs[first], xs[i], xs[last]};
      return r;
    }
  }
  if (last - first + 1 < 3) return r;
  std::vector<double> sx(xs.begin() + first, xs.begin() + last + 1);
  std::vector<double> sv;
  for (std::size_t i = first; i <= last; ++i) sv.push_back(vs[i].to_double());
  return second_difference_convexity_test(sx, sv, tol);
}

double finite_diff_grad(const ScalarFn& phi, double x, double h) {
  const ExtReal fp = phi(x + h);
  const ExtReal fm = phi(x - h);
  if (!fp.is_finite() || !fm.is_finite())
    raise(ErrorCode::DomainEdge, "finite difference stencil leaves the finite domain");
  return (fp.to_double() - fm.to_double()) / (2.0 * h);
}

std::vector<double> decade_points(double anchor, double edge, std::size_t max_decades) {
  std::vector<double> pts;
  if (std::isfinite(edge)) {
    double prev = anchor;
    for (std::size_t k = 1; k <= max_decades; ++k) {
      const double p = edge + (anchor - edge) * std::pow(10.0, -static_cast<double>(k));
      if (p == edge || p == prev) break;
      pts.push_back(p);
      prev = p;
    }
  } else {
    const double base = std::max(1.0, std::abs(anchor));
    const double sign = edge > 0 ? 1.0 : -1.0;
    for (std::size_t k = 1; k <= max_decades; ++k) {
      const double p = sign * base * std::pow(10.0, static_cast<double>(k));
      if (!std::isfinite(p) || std::abs(p) > 1e300) break;
      pts.push_back(p);
    }
  }
  return pts;
}

TailVerdict probe_tail(const ScalarFn& phi, const std::vector<double>& pts, double cap) {
  TailVerdict t;
  std::vector<double> vals;
  for (double p : pts) {
    const ExtReal v = phi(p);
    if (v.is_neg_inf() || v.to_double() < -cap) {
      t.unbounded = true;
      t.best_x = p;
      t.best_value = v;
      return t;
    }
    if (!v.is_finite()) break;
    vals.push_back(v.to_double());
    if (v < t.best_value) {
      t.best_value = v;
      t.best_x = p;
    }
  }
  if (vals.size() < 9) return t;
  const std::size_t drops = vals.size() - 1;
  const std::size_t window = std::max<std::size_t>(8, drops / 2);
  const std::size_t start = drops - window;
  double first_half = 0.0;
  double second_half = 0.0;
  const std::size_t half = window / 2;
  for (std::size_t k = 0; k < window; ++k) {
    const double d = vals[start + k] - vals[start + k + 1];
    if (!(d > 0.0)) return t;
    (k < half ? first_half : second_half) += d;
  }
  first_half /= static_cast<double>(half);
  second_half /= static_cast<double>(window - half);
  t.unbounded = second_half >= 0.5 * first_half;
  return t;
}

}  // namespace bregman
