// SPDX-License-Identifier: MIT
#include "bregman/kernel.hpp"

#include <cmath>

namespace bregman {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double sgn(double x) { return x > 0 ? 1.0 : (x < 0 ? -1.0 : 0.0); }

Kernel::Parts energy_parts() {
  Kernel::Parts p;
  p.name = "ENERGY";
  p.domain = Interval::reals();
  p.value = [](double x) { return 0.5 * x * x; };
  p.grad = [](double x) { return x; };
  p.conj = [](double e) { return ExtReal(0.5 * e * e); };
  p.grad_conj = [](double e) { return e; };
  return p;
}

Kernel::Parts shannon_parts() {
  Kernel::Parts p;
  p.name = "SHANNON";
  p.domain = {0.0, kInf, true, false};
  p.value = [](double x) { return x == 0.0 ? 0.0 : x * std::log(x); };
  p.grad = [](double x) { return 1.0 + std::log(x); };
  p.conj = [](double e) { return ExtReal(std::exp(e - 1.0)); };
  p.grad_conj = [](double e) { return std::exp(e - 1.0); };
  return p;
}

Kernel::Parts burg_parts() {
  Kernel::Parts p;
  p.name = "BURG";
  p.domain = {0.0, kInf, false, false};
  p.value = [](double x) { return -std::log(x); };
  p.grad = [](double x) { return -1.0 / x; };
  p.conj = [](double e) { return e < 0 ? ExtReal(-1.0 - std::log(-e)) : ExtReal::pos_inf(); };
  p.grad_conj = [](double e) { return -1.0 / e; };
  p.one_coercive = false;
  p.grad_range = {-kInf, 0.0, false, false};
  return p;
}

Kernel::Parts hellinger_parts() {
  Kernel::Parts p;
  p.name = "HELLINGER";
  p.domain = Interval::closed(-1.0, 1.0);
  p.value = [](double x) { return -std::sqrt((1.0 - x) * (1.0 + x)); };
  p.grad = [](double x) { return x / std::sqrt((1.0 - x) * (1.0 + x)); };
  p.conj = [](double e) { return ExtReal(std::hypot(1.0, e)); };
  p.grad_conj = [](double e) { return e / std::hypot(1.0, e); };
  return p;
}

Kernel::Parts quartic_parts() {
  Kernel::Parts p;
  p.name = "QUARTIC";
  p.domain = Interval::reals();
  p.value = [](double x) { return 0.25 * x * x * x * x; };
  p.grad = [](double x) { return x * x * x; };
  p.conj = [](double e) { return ExtReal(0.75 * std::pow(std::abs(e), 4.0 / 3.0)); };
  p.grad_conj = [](double e) { return std::cbrt(e); };
  return p;
}

Kernel::Parts cubic_parts() {
  Kernel::Parts p;
  p.name = "CUBIC_ABS";
  p.domain = Interval::reals();
  p.value = [](double x) { return std::abs(x) * x * x / 3.0; };
  p.grad = [](double x) { return x * std::abs(x); };
  p.conj = [](double e) { return ExtReal(2.0 / 3.0 * std::pow(std::abs(e), 1.5)); };
  p.grad_conj = [](double e) { return sgn(e) * std::sqrt(std::abs(e)); };
  return p;
}

}  // namespace

Kernel::Kernel(Parts p) : p_(std::make_shared<const Parts>(std::move(p))) {
  if (!p_->value || !p_->grad) raise(ErrorCode::InvalidArgument, "kernel needs value and grad");
}

ExtReal Kernel::eval(double x) const {
  if (!p_->domain.contains(x)) return ExtReal::pos_inf();
  return ExtReal(p_->value(x));
}

double Kernel::grad(double x) const {
  if (!p_->domain.in_interior(x))
    raise(ErrorCode::OutsideInterior, p_->name + ": grad outside the interior");
  return p_->grad(x);
}

ExtReal Kernel::conj(double eta) const {
  if (p_->conj) return p_->conj(eta);
  // Fall back to grid conjugation around the primal point matching eta.
  Interval search = p_->domain;
  if (!search.bounded()) {
    double c = 0.0;
    if (p_->grad_range.in_interior(eta)) c = grad_conj(eta);
    const double w = 10.0 * std::max(1.0, std::abs(c));
    search = search.intersect(Interval::closed(c - w, c + w));
  }
  const Kernel self = *this;
  return grid_conjugate([self](double x) { return self.eval(x); }, eta, search);
}

double Kernel::grad_conj(double eta) const {
  if (!p_->grad_range.in_interior(eta))
    raise(ErrorCode::OutOfRange, p_->name + ": eta outside range of grad");
  if (p_->grad_conj) return p_->grad_conj(eta);
  const Interval& d = p_->domain;
  double a = std::isfinite(d.lo) ? d.lo + 0.25 * std::min(1.0, d.width()) : -1.0;
  double b = std::isfinite(d.hi) ? d.hi - 0.25 * std::min(1.0, d.width()) : 1.0;
  if (!(a < b)) {
    const double m = std::isfinite(d.hi) ? (std::isfinite(d.lo) ? 0.5 * (d.lo + d.hi) : d.hi - 1.0)
                                         : d.lo + 1.0;
    a = m - 1e-3;
    b = m + 1e-3;
  }
  const auto g = p_->grad;
  return monotone_invert(g, eta, a, b, d.interior());
}

Kernel Kernel::scaled(double L) const {
  if (!(L > 0)) raise(ErrorCode::InvalidArgument, "kernel scale must be positive");
  Parts q = *p_;
  const Parts base = *p_;
  const Kernel self = *this;
  q.name = std::to_string(L) + "*" + base.name;
  q.value = [base, L](double x) { return L * base.value(x); };
  q.grad = [base, L](double x) { return L * base.grad(x); };
  if (base.conj) q.conj = [base, L](double e) { return L * base.conj(e / L); };
  q.grad_conj = [self, L](double e) { return self.grad_conj(e / L); };
  q.grad_range = {base.grad_range.lo * L, base.grad_range.hi * L, base.grad_range.lo_closed,
                  base.grad_range.hi_closed};
  return Kernel(std::move(q));
}

Kernel make_kernel(KernelKind kind) {
  switch (kind) {
    case KernelKind::Energy: return Kernel(energy_parts());
    case KernelKind::Shannon: return Kernel(shannon_parts());
    case KernelKind::Burg: return Kernel(burg_parts());
    case KernelKind::Hellinger: return Kernel(hellinger_parts());
    case KernelKind::Quartic: return Kernel(quartic_parts());
    case KernelKind::CubicAbs: return Kernel(cubic_parts());
  }
  raise(ErrorCode::InvalidArgument, "unknown kernel kind");
}

const Kernel& kernel(KernelKind kind) {
  static const Kernel kEnergy = make_kernel(KernelKind::Energy);
  static const Kernel kShannon = make_kernel(KernelKind::Shannon);
  static const Kernel kBurg = make_kernel(KernelKind::Burg);
  static const Kernel kHellinger = make_kernel(KernelKind::Hellinger);
  static const Kernel kQuartic = make_kernel(KernelKind::Quartic);
  static const Kernel kCubic = make_kernel(KernelKind::CubicAbs);
  switch (kind) {
    case KernelKind::Energy: return kEnergy;
    case KernelKind::Shannon: return kShannon;
    case KernelKind::Burg: return kBurg;
    case KernelKind::Hellinger: return kHellinger;
    case KernelKind::Quartic: return kQuartic;
    case KernelKind::CubicAbs: return kCubic;
  }
  raise(ErrorCode::InvalidArgument, "unknown kernel kind");
}

ExtReal grid_conjugate(const ScalarFn& fn, double eta, const Interval& search, std::size_t n) {
  const Grid g = Grid::over(search, n);
  const auto r = grid_minimize([&](double x) { return fn(x) - ExtReal(eta * x); }, g);
  return -r.value;
}

ExtReal bregman_distance(const Kernel& k, double x, double y) {
  if (!k.in_interior(y) || !k.domain().contains(x)) return ExtReal::pos_inf();
  const double d = k.eval(x).to_double() - k.eval(y).to_double() - k.grad(y) * (x - y);
  return ExtReal(d < 0.0 ? 0.0 : d);
}

ExtReal dual_distance(const Kernel& k, double xi, double eta) {
  if (!k.is_legendre()) raise(ErrorCode::NotLegendre, k.name() + " is not Legendre");
  if (!k.grad_range().in_interior(eta)) return ExtReal::pos_inf();
  const ExtReal cx = k.conj(xi);
  if (!cx.is_finite()) return ExtReal::pos_inf();
  const double d = cx.to_double() - k.conj(eta).to_double() - k.grad_conj(eta) * (xi - eta);
  return ExtReal(d < 0.0 ? 0.0 : d);
}

double symmetrized_gap(const Kernel& k, double x1, double x2) {
  return (k.grad(x1) - k.grad(x2)) * (x1 - x2);
}

double three_point_residual(const Kernel& k, double x, double y, double z) {
  if (!k.in_interior(y) || !k.in_interior(z))
    raise(ErrorCode::OutsideInterior, "three-point identity needs interior y, z");
  if (!k.domain().contains(x)) raise(ErrorCode::InvalidArgument, "three-point identity needs x in the domain");
  auto raw = [&](double a, double b) {
    return k.eval(a).to_double() - k.eval(b).to_double() - k.grad(b) * (a - b);
  };
  return std::abs(raw(x, z) - raw(x, y) - raw(y, z) - (x - y) * (k.grad(y) - k.grad(z)));
}

}  // namespace bregman
