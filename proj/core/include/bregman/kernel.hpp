// SPDX-License-Identifier: MIT
#pragma once

#include <memory>
#include <string>

#include "bregman/numerics.hpp"

namespace bregman {

enum class KernelKind { Energy, Shannon, Burg, Hellinger, Quartic, CubicAbs };

/// Distance-generating function on an interval. Immutable value type.
class Kernel {
 public:
  struct Parts {
    std::string name;
    Interval domain;
    RealFn value;      // finite on domain
    RealFn grad;       // on the open interior
    ScalarFn conj;     // optional closed form of the conjugate
    RealFn grad_conj;  // optional closed form of the gradient inverse
    bool legendre = true;
    bool one_coercive = true;
    Interval grad_range = Interval::reals();
  };

  explicit Kernel(Parts p);

  const std::string& name() const { return p_->name; }
  const Interval& domain() const { return p_->domain; }
  const Interval& grad_range() const { return p_->grad_range; }
  bool is_legendre() const { return p_->legendre; }
  bool is_one_coercive() const { return p_->one_coercive; }
  bool in_interior(double x) const { return p_->domain.in_interior(x); }
  bool has_closed_conj() const { return static_cast<bool>(p_->conj); }

  /// kappa(x); +inf off the domain.
  ExtReal eval(double x) const;
  /// grad kappa(x); throws OutsideInterior off the open interior.
  double grad(double x) const;
  /// kappa*(eta); closed form, else grid conjugation.
  ExtReal conj(double eta) const;
  /// grad kappa*(eta) = (grad kappa)^{-1}(eta); throws OutOfRange outside the
  /// open range of grad kappa.
  double grad_conj(double eta) const;

  /// L * kappa.
  Kernel scaled(double L) const;

 private:
  std::shared_ptr<const Parts> p_;
};

Kernel make_kernel(KernelKind kind);
const Kernel& kernel(KernelKind kind);

/// sup_x { eta*x - fn(x) } over `search` (bounded) by grid minimization.
ExtReal grid_conjugate(const ScalarFn& fn, double eta, const Interval& search, std::size_t n = 2001);

ExtReal bregman_distance(const Kernel& k, double x, double y);
/// Distance generated by kappa*; throws NotLegendre.
ExtReal dual_distance(const Kernel& k, double xi, double eta);
/// (grad kappa(x1) - grad kappa(x2)) * (x1 - x2).
double symmetrized_gap(const Kernel& k, double x1, double x2);
/// |D(x,z) - D(x,y) - D(y,z) - (x-y)(grad kappa(y) - grad kappa(z))|.
double three_point_residual(const Kernel& k, double x, double y, double z);

}  // namespace bregman
