// SPDX-License-Identifier: MIT
#include "bregman/catalog.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace bregman {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double sgn(double x) { return x > 0 ? 1.0 : (x < 0 ? -1.0 : 0.0); }

}  // namespace

Interval default_window(const Kernel& k) {
  if (k.name() == "SHANNON") return Interval::closed(0.0, 10.0);
  if (k.name() == "BURG") return {0.0, 20.0, false, true};
  if (k.domain().bounded()) return k.domain();
  return Interval::closed(-5.0, 5.0);
}

Interval default_dual_window(const Kernel& k) {
  if (k.name() == "HELLINGER") return Interval::closed(-5.0, 5.0);
  if (k.name() == "BURG") return Interval::closed(-5.0, -0.2);
  return Interval::closed(-3.0, 3.0);
}

namespace {

ProperFn make_fn(std::string name, Interval dom, ScalarFn f, RealFn df, std::optional<bool> convex,
                 std::optional<double> threshold) {
  return ProperFn{std::move(name), dom, std::move(f), std::move(df), convex, threshold};
}

std::vector<Instance> build_catalog() {
  const Kernel& energy = kernel(KernelKind::Energy);
  const Kernel& shannon = kernel(KernelKind::Shannon);
  const Kernel& burg = kernel(KernelKind::Burg);
  const Kernel& hell = kernel(KernelKind::Hellinger);
  const Kernel& quartic = kernel(KernelKind::Quartic);
  const Kernel& cubic = kernel(KernelKind::CubicAbs);
  const Interval hd = hell.domain();
  std::vector<Instance> c;

  {
    auto f = make_fn(
        "x*sqrt(1-x^2)", hd, [](double x) { return ExtReal(x * std::sqrt((1 - x) * (1 + x))); },
        [](double x) { return (1 - 2 * x * x) / std::sqrt((1 - x) * (1 + x)); }, false, kInf);
    auto in = make_instance("ex310", hell, f, 1.0, {"worked-example", "range-assumption-fails"});
    in.description = "Hellinger kernel, f(x) = x sqrt(1-x^2): singleton subdifferential for x<0, empty for x>0";
    c.push_back(in);
  }
  {
    auto f = make_fn(
        "sqrt(1/4-(x-1/2)^2) on [0,1]", Interval::closed(0.0, 1.0),
        [](double x) {
          const double t = 0.25 - (x - 0.5) * (x - 0.5);
          return ExtReal(std::sqrt(std::max(0.0, t)));
        },
        [](double x) { return (0.5 - x) / std::sqrt(std::max(1e-300, 0.25 - (x - 0.5) * (x - 0.5))); },
        false, kInf);
    auto in = make_instance("ex411", hell, f, 2.0, {"worked-example", "range-assumption-fails"});
    in.description = "Hellinger kernel, semicircle on [0,1]: monotone but not maximally monotone subdifferential";
    c.push_back(in);
  }
  {
    auto f = fns::log();
    f.prox_threshold = 1.0;  // relative to the Burg kernel
    auto in = make_instance("ex_ln", burg, f, 0.5, {"worked-example"});
    in.description = "Burg kernel, f = ln x: prox-boundedness threshold 1";
    c.push_back(in);
  }
  {
    auto f = make_fn(
        "(x-1)^4/4 - x^4/4", Interval::reals(),
        [](double x) { return ExtReal(0.25 * std::pow(x - 1, 4) - 0.25 * std::pow(x, 4)); },
        [](double x) { return std::pow(x - 1, 3) - x * x * x; }, false, kInf);
    auto in = make_instance("ex419", quartic, f, 1.0, {"worked-example"});
    in.description = "Quartic kernel: envelope composite h = -xi convex while f is not";
    c.push_back(in);
  }
  {
    auto f = fns::linear(1.0);
    auto in = make_instance("ex420", cubic, f, 1.0, {"worked-example"});
    in.description = "Cubic kernel, f = x: f convex while the envelope composite is not";
    c.push_back(in);
  }
  {
    auto f = make_fn(
        "sqrt(1-x^2), -1 at +-1", hd,
        [](double x) { return std::abs(x) == 1.0 ? ExtReal(-1.0) : ExtReal(std::sqrt((1 - x) * (1 + x))); },
        [](double x) { return -x / std::sqrt((1 - x) * (1 + x)); }, false, kInf);
    auto in = make_instance("bsmooth_counter", hell, f, 1.0, {"worked-example", "range-assumption-fails"});
    in.smoothness = 1.0;
    in.description = "Hellinger kernel: boundary values break the smoothness converse";
    c.push_back(in);
  }
  {
    auto in = make_instance("euclid_abs", energy, fns::abs(), 1.0, {"euclidean", "convex"});
    in.description = "Energy kernel, f = |x|: soft thresholding and Huber envelope";
    c.push_back(in);
  }
  {
    auto in = make_instance("euclid_zero", energy, fns::zero(), 1.0, {"euclidean", "convex"});
    in.description = "Energy kernel, f = 0";
    c.push_back(in);
  }
  {
    auto f = fns::square(-1.0);
    f.prox_threshold = 0.5;
    auto in = make_instance("euclid_neg_sq", energy, f, 0.25, {"euclidean"});
    in.description = "Energy kernel, f = -x^2 at lambda 1/4 (threshold 1/2)";
    c.push_back(in);
  }
  {
    auto in = make_instance("euclid_sq", energy, fns::square(1.0), 1.0, {"euclidean", "convex"});
    in.description = "Energy kernel, f = x^2 (strongly convex)";
    c.push_back(in);
  }
  {
    auto f = make_fn(
        "|x|+x^2/2", Interval::reals(), [](double x) { return ExtReal(std::abs(x) + 0.5 * x * x); },
        [](double x) { return sgn(x) + x; }, true, kInf);
    auto in = make_instance("euclid_abs_plus_sq", energy, f, 1.0, {"euclidean", "convex"});
    in.description = "Energy kernel, f = |x| + x^2/2";
    c.push_back(in);
  }
  {
    auto in = make_instance("euclid_quarter_sq", energy, fns::square(0.25), 1.0, {"euclidean", "convex"});
    in.smoothness = 1.0;
    in.description = "Energy kernel, f = x^2/4 with smoothness modulus 1";
    c.push_back(in);
  }
  {
    auto f = shift_scale(fns::abs(), 1.0, 1.0, 0.0);
    auto in = make_instance("shannon_abs", shannon, f, 1.0, {"convex"});
    in.description = "Shannon kernel, f = |x-1|";
    c.push_back(in);
  }
  {
    auto f = make_fn(
        "sqrt(1-x^2)/2", hd, [](double x) { return ExtReal(0.5 * std::sqrt((1 - x) * (1 + x))); },
        [](double x) { return -0.5 * x / std::sqrt((1 - x) * (1 + x)); }, false, kInf);
    auto in = make_instance("hellinger_half", hell, f, 1.0, {"weakly-convex"});
    in.smoothness = 1.0;
    in.description = "Hellinger kernel, f = -kappa/2";
    c.push_back(in);
  }
  {
    auto in = make_instance("burg_linear", burg, fns::linear(1.0), 1.0, {"convex"});
    in.description = "Burg kernel, f = x: prox y/(1+lambda*y)";
    c.push_back(in);
  }
  {
    auto in = make_instance("quartic_abs", quartic, fns::abs(), 1.0, {"convex"});
    in.description = "Quartic kernel, f = |x|";
    c.push_back(in);
  }
  for (const auto& in : c)
    if (in.fn.prox_threshold && !(in.lambda < *in.fn.prox_threshold))
      raise(ErrorCode::InvalidArgument, in.name + ": lambda must lie below the annotated threshold");
  return c;
}

const std::vector<Instance>& catalog() {
  static const std::vector<Instance> kCatalog = build_catalog();
  return kCatalog;
}

}  // namespace

ProperFn shift_scale(const ProperFn& fn, double a, double b, double c) {
  if (!(b > 0)) raise(ErrorCode::InvalidArgument, "shift_scale needs b > 0");
  ProperFn g;
  g.name = std::to_string(b) + "*(" + fn.name + ")(x-" + std::to_string(a) + ")+" + std::to_string(c);
  g.domain = fn.domain.translated(a);
  const ProperFn base = fn;
  g.eval_fn = [base, a, b, c](double x) { return b * base(x - a) + ExtReal(c); };
  if (fn.derivative) g.derivative = [base, a, b](double x) { return b * base.derivative(x - a); };
  g.convex = fn.convex;
  if (fn.prox_threshold) g.prox_threshold = *fn.prox_threshold / b;
  return g;
}

namespace fns {

ProperFn zero() {
  return make_fn("0", Interval::reals(), [](double) { return ExtReal(0.0); }, [](double) { return 0.0; },
                 true, kInf);
}

ProperFn abs() {
  return make_fn("|x|", Interval::reals(), [](double x) { return ExtReal(std::abs(x)); },
                 [](double x) { return sgn(x); }, true, kInf);
}

ProperFn log() {
  return make_fn("ln x", {0.0, kInf, false, false}, [](double x) { return ExtReal(std::log(x)); },
                 [](double x) { return 1.0 / x; }, false, std::nullopt);
}

ProperFn linear(double alpha) {
  return make_fn(std::to_string(alpha) + "*x", Interval::reals(),
                 [alpha](double x) { return ExtReal(alpha * x); }, [alpha](double) { return alpha; }, true,
                 kInf);
}

ProperFn square(double coef) {
  return make_fn(std::to_string(coef) + "*x^2", Interval::reals(),
                 [coef](double x) { return ExtReal(coef * x * x); }, [coef](double x) { return 2 * coef * x; },
                 coef >= 0, coef >= 0 ? std::optional<double>(kInf) : std::nullopt);
}

}  // namespace fns

bool Instance::has_tag(const std::string& t) const {
  return std::find(tags.begin(), tags.end(), t) != tags.end();
}

Interval Instance::kernel_window() const { return kernel.domain().intersect(window); }

Interval Instance::search_domain() const { return kernel_window().intersect(fn.domain); }

Instance Instance::with_lambda(double lam) const {
  Instance r = *this;
  r.lambda = lam;
  return r;
}

Instance make_instance(std::string name, Kernel k, ProperFn fn, double lambda, std::vector<std::string> tags) {
  if (!(lambda > 0)) raise(ErrorCode::InvalidArgument, "lambda must be positive");
  Instance in{std::move(name), "", k, std::move(fn), lambda, std::move(tags), default_window(k),
              default_dual_window(k), std::nullopt};
  return in;
}

const Instance& get_instance(const std::string& name) {
  for (const auto& in : catalog())
    if (in.name == name) return in;
  raise(ErrorCode::UnknownInstance, "no catalog instance named '" + name + "'");
}

const std::vector<std::string>& instance_names() {
  static const std::vector<std::string> kNames = [] {
    std::vector<std::string> n;
    for (const auto& in : catalog()) n.push_back(in.name);
    return n;
  }();
  return kNames;
}

}  // namespace bregman
