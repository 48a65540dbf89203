#pragma once

// Initial histories u0(x,t) for t <= 0. Two kinds:
//   Constant:  u0(.,t) = u0(.,0)
//   Separable: u0(.,t) = e^{rate t} u0(.,0), rate >= 0   (bounded, g(0)=1)
// Both keep every weighted history integral computable in closed form for
// exponential-sum kernels; power-law kernels fall back to kernel quadrature.

#include <cmath>
#include <utility>

#include "viscowell/grid.hpp"
#include "viscowell/kernel.hpp"

namespace viscowell {

enum class HistoryKind { Constant, Separable };

class HistoryProfile {
 public:
  static HistoryProfile constant(Field displacement, Field velocity) {
    HistoryProfile h;
    h.kind_ = HistoryKind::Constant;
    h.rate_ = 0.0;
    h.u0_ = std::move(displacement);
    h.v0_ = std::move(velocity);
    return h;
  }

  static HistoryProfile separable(double rate, Field displacement, Field velocity) {
    if (!(rate >= 0.0)) throw ConfigError("history: separable rate must be >= 0 (bounded g)");
    HistoryProfile h;
    h.kind_ = HistoryKind::Separable;
    h.rate_ = rate;
    h.u0_ = std::move(displacement);
    h.v0_ = std::move(velocity);
    return h;
  }

  HistoryKind kind() const { return kind_; }
  double rate() const { return rate_; }
  const Field& displacement() const { return u0_; }
  const Field& velocity() const { return v0_; }

  // g(-s) for age s >= 0
  double weight_at_age(double s) const {
    return kind_ == HistoryKind::Constant ? 1.0 : std::exp(-rate_ * s);
  }

  // integral mu(s) g(-s) ds
  double weighted_mass(const RelaxationKernel& k) const {
    return kind_ == HistoryKind::Constant ? k.mass() : k.exp_weighted_mass(rate_);
  }

  // integral mu(s) g(-s)^2 ds
  double weighted_sq_mass(const RelaxationKernel& k) const {
    return kind_ == HistoryKind::Constant ? k.mass() : k.exp_weighted_mass(2.0 * rate_);
  }

  // integral mu(s) (1 - g(-s))^2 ds  -- zero for constant histories
  double deficit_mass(const RelaxationKernel& k) const {
    if (kind_ == HistoryKind::Constant) return 0.0;
    return k.mass() - 2.0 * k.exp_weighted_mass(rate_) + k.exp_weighted_mass(2.0 * rate_);
  }

  // integral mu(s) ||grad u0(0) - grad u0(-s)||^2 ds
  double memory_quadratic(const SpatialGrid& g, const RelaxationKernel& k) const {
    check_shape(g, u0_, "history displacement");
    if (kind_ == HistoryKind::Constant) return 0.0;
    return deficit_mass(k) * grad_sq(g, u0_);
  }

  void check(const SpatialGrid& g) const {
    check_shape(g, u0_, "history displacement");
    check_shape(g, v0_, "history velocity");
    if (!all_finite(u0_) || !all_finite(v0_))
      throw ConfigError("history: non-finite initial data");
  }

 private:
  HistoryKind kind_ = HistoryKind::Constant;
  double rate_ = 0.0;
  Field u0_;
  Field v0_;
};

}  // namespace viscowell
