#pragma once

// Relaxation kernels mu(s) = -k'(s) of the memory term. Two families:
//   ExponentialSum: mu(s) = sum c_k e^{-lambda_k s}
//   PowerLaw:       mu(s) = a (1+s)^{-beta},  beta > 1
// Both admit closed-form mass (so k(0) = 1 + integral mu), closed-form tail
// masses and exact decay-class constants.

#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "viscowell/common.hpp"

namespace viscowell {

enum class KernelFamily { ExponentialSum, PowerLaw };

struct ExpTerm {
  double weight;  // c_k > 0
  double rate;    // lambda_k > 0
};

enum class DecayClassKind { ClassI, ClassII };

// ClassI: mu' + c mu <= 0; ClassII: mu' + c mu^r <= 0 with r in (1,2).
struct DecayClass {
  DecayClassKind kind;
  double c;
  double r;  // 1 for ClassI
};

class RelaxationKernel {
 public:
  static RelaxationKernel exponential_sum(std::vector<ExpTerm> terms) {
    if (terms.empty()) throw NonPositiveParameter("kernel: need at least one exponential term");
    for (const auto& t : terms)
      if (!(t.weight > 0.0) || !(t.rate > 0.0))
        throw NonPositiveParameter("kernel: exponential weights and rates must be positive");
    RelaxationKernel k;
    k.family_ = KernelFamily::ExponentialSum;
    k.terms_ = std::move(terms);
    return k;
  }

  static RelaxationKernel power_law(double amplitude, double exponent) {
    if (!(amplitude > 0.0)) throw NonPositiveParameter("kernel: power-law amplitude must be positive");
    if (!(exponent > 1.0)) throw NonIntegrableKernel("kernel: power-law exponent must exceed 1");
    RelaxationKernel k;
    k.family_ = KernelFamily::PowerLaw;
    k.amp_ = amplitude;
    k.beta_ = exponent;
    return k;
  }

  KernelFamily family() const { return family_; }
  const std::vector<ExpTerm>& terms() const { return terms_; }
  double amplitude() const { return amp_; }
  double exponent() const { return beta_; }

  double mu(double s) const {
    if (family_ == KernelFamily::ExponentialSum) {
      double acc = 0.0;
      for (const auto& t : terms_) acc += t.weight * std::exp(-t.rate * s);
      return acc;
    }
    return amp_ * std::pow(1.0 + s, -beta_);
  }

  double mu_prime(double s) const {
    if (family_ == KernelFamily::ExponentialSum) {
      double acc = 0.0;
      for (const auto& t : terms_) acc -= t.weight * t.rate * std::exp(-t.rate * s);
      return acc;
    }
    return -amp_ * beta_ * std::pow(1.0 + s, -beta_ - 1.0);
  }

  // integral_0^inf mu
  double mass() const {
    if (family_ == KernelFamily::ExponentialSum) {
      double acc = 0.0;
      for (const auto& t : terms_) acc += t.weight / t.rate;
      return acc;
    }
    return amp_ / (beta_ - 1.0);
  }

  double k0() const { return 1.0 + mass(); }

  // integral_s^inf mu
  double tail_mass(double s) const {
    if (family_ == KernelFamily::ExponentialSum) {
      double acc = 0.0;
      for (const auto& t : terms_) acc += t.weight / t.rate * std::exp(-t.rate * s);
      return acc;
    }
    return amp_ / (beta_ - 1.0) * std::pow(1.0 + s, 1.0 - beta_);
  }

  // Smallest sampled S with mu(S) < eps * mu(0).
  double horizon(double eps = 1e-6) const {
    const double target = eps * mu(0.0);
    double hi = 1.0;
    int guard = 0;
    while (mu(hi) >= target && guard++ < 1200) hi *= 2.0;
    double lo = hi / 2.0;
    for (int it = 0; it < 120; ++it) {
      double mid = 0.5 * (lo + hi);
      (mu(mid) >= target ? lo : hi) = mid;
    }
    return hi;
  }

  // Smallest S with tail_mass(S) < eps * mass().
  double mass_horizon(double eps) const {
    const double target = eps * mass();
    double hi = 1.0;
    int guard = 0;
    while (tail_mass(hi) >= target && guard++ < 1200) hi *= 2.0;
    double lo = hi / 2.0;
    for (int it = 0; it < 120; ++it) {
      double mid = 0.5 * (lo + hi);
      (tail_mass(mid) >= target ? lo : hi) = mid;
    }
    return hi;
  }

  DecayClass classify() const {
    DecayClass cls{};
    if (family_ == KernelFamily::ExponentialSum) {
      double cmin = terms_.front().rate;
      for (const auto& t : terms_) cmin = std::min(cmin, t.rate);
      cls = DecayClass{DecayClassKind::ClassI, cmin, 1.0};
    } else {
      const double r = (beta_ + 1.0) / beta_;
      cls = DecayClass{DecayClassKind::ClassII, beta_ * std::pow(amp_, 1.0 - r), r};
    }
    verify_class(cls);
    return cls;
  }

  // Checks mu'(s) + c mu(s)^r <= slack on 1000 samples of [0, horizon].
  void verify_class(const DecayClass& cls, double slack = 1e-10) const {
    const double S = horizon(1e-6);
    for (int i = 0; i <= 1000; ++i) {
      const double s = S * i / 1000.0;
      const double lhs = mu_prime(s) + cls.c * std::pow(mu(s), cls.r);
      if (lhs > slack * std::max(1.0, mu(0.0)))
        throw UnclassifiableKernel("kernel: decay-class inequality violated at s=" + std::to_string(s));
    }
  }

  // Sampled Assumption-style checks: mu > 0, mu' <= 0, mu(S) small.
  bool monotone_vanishing(std::string* why = nullptr) const {
    const double S = horizon(1e-6);
    for (int i = 0; i <= 1000; ++i) {
      const double s = S * i / 1000.0;
      if (!(mu(s) > 0.0)) {
        if (why) *why = "mu not positive at s=" + std::to_string(s);
        return false;
      }
      if (mu_prime(s) > 0.0) {
        if (why) *why = "mu' positive at s=" + std::to_string(s);
        return false;
      }
    }
    if (!(mu(S) < 1e-6 * mu(0.0) * (1.0 + 1e-12))) {
      if (why) *why = "mu does not vanish at the family horizon";
      return false;
    }
    return true;
  }

  // integral_0^inf mu(s) phi(s) ds for smooth bounded phi with limit phi_inf.
  // Composite trapezoid on a linear+geometric node set, analytic tail.
  double weighted_integral(const std::function<double(double)>& phi, double phi_inf) const {
    const double S = mass_horizon(1e-10);
    std::vector<double> s = quad_nodes(S, 256, 256);
    double acc = 0.0;
    double fprev = mu(s[0]) * phi(s[0]);
    for (std::size_t j = 1; j < s.size(); ++j) {
      const double f = mu(s[j]) * phi(s[j]);
      acc += 0.5 * (s[j] - s[j - 1]) * (fprev + f);
      fprev = f;
    }
    return acc + phi_inf * tail_mass(S);
  }

  // integral mu(s) e^{-omega s} ds, closed form for exponential sums.
  double exp_weighted_mass(double omega) const {
    if (omega == 0.0) return mass();
    if (family_ == KernelFamily::ExponentialSum) {
      double acc = 0.0;
      for (const auto& t : terms_) acc += t.weight / (t.rate + omega);
      return acc;
    }
    return weighted_integral([omega](double s) { return std::exp(-omega * s); }, 0.0);
  }

  // Linear spacing near zero then geometric out to S.
  static std::vector<double> quad_nodes(double S, int n_linear, int per_decade) {
    std::vector<double> s;
    const double s_lin = std::min(1.0, S / 8.0);
    const double dlin = s_lin / n_linear;
    for (int i = 0; i <= n_linear; ++i) s.push_back(i * dlin);
    const double ratio = std::pow(10.0, 1.0 / per_decade);
    double cur = s_lin;
    while (cur < S) {
      cur = std::min(cur * ratio, S);
      s.push_back(cur);
    }
    return s;
  }

 private:
  KernelFamily family_ = KernelFamily::ExponentialSum;
  std::vector<ExpTerm> terms_;
  double amp_ = 0.0;
  double beta_ = 0.0;
};

}  // namespace viscowell
