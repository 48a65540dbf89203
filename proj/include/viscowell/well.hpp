#pragma once

// Potential-well machinery: the scalar barrier G and its critical points
// (y0, d0), the blow-up threshold pair (y*, M), the action functionals J / I
// / I0, the ray-critical scaling lambda0, the Nehari depth estimate d, and
// W1/W2 membership labels.

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "viscowell/grid.hpp"
#include "viscowell/history.hpp"
#include "viscowell/kernel.hpp"
#include "viscowell/sobolev.hpp"
#include "viscowell/source.hpp"

namespace viscowell {

// G(y) = y - sum a_i/(p_i+1) (2 gamma_i^2 y)^{(p_i+1)/2}
inline double big_g(double y, const SourceSpec& src, const std::vector<double>& gammas) {
  if (y < 0.0) throw ConfigError("big_g: y must be >= 0");
  if (gammas.size() != src.positive().size())
    throw ShapeMismatch("big_g: one gamma per amplifying term");
  double acc = y;
  for (std::size_t i = 0; i < gammas.size(); ++i) {
    const auto& t = src.positive()[i];
    acc -= t.coeff / (t.exponent + 1.0) *
           std::pow(2.0 * gammas[i] * gammas[i] * y, 0.5 * (t.exponent + 1.0));
  }
  return acc;
}

// sum a_i (2 gamma_i^2)^{(p_i+1)/2} y^{(p_i-1)/2}, the increasing side of the
// y0 equation (= 2 at y0) and, rescaled, of the y* equation.
inline double y0_lhs(double y, const SourceSpec& src, const std::vector<double>& gammas,
                     bool weight_by_p1) {
  double acc = 0.0;
  const double p1 = src.p1();
  for (std::size_t i = 0; i < gammas.size(); ++i) {
    const auto& t = src.positive()[i];
    const double w = weight_by_p1 ? (p1 + 1.0) / (t.exponent + 1.0) : 1.0;
    acc += w * t.coeff * std::pow(2.0 * gammas[i] * gammas[i], 0.5 * (t.exponent + 1.0)) *
           std::pow(y, 0.5 * (t.exponent - 1.0));
  }
  return acc;
}

inline double find_y0(const SourceSpec& src, const std::vector<double>& gammas) {
  auto f = [&](double y) { return y0_lhs(y, src, gammas, false) - 2.0; };
  const double hi = expand_upper(f, 1.0);
  return bisect(f, 0.0, hi, 1e-13);
}

inline double compute_d0(const SourceSpec& src, const std::vector<double>& gammas, double y0) {
  double acc = 0.0;
  for (std::size_t i = 0; i < gammas.size(); ++i) {
    const auto& t = src.positive()[i];
    acc += (0.5 - 1.0 / (t.exponent + 1.0)) * t.coeff *
           std::pow(2.0 * gammas[i] * gammas[i] * y0, 0.5 * (t.exponent + 1.0));
  }
  const double gy0 = big_g(y0, src, gammas);
  if (!close_rel(acc, gy0, 1e-10))
    throw InconsistentG("compute_d0: sum formula disagrees with G(y0): " + std::to_string(acc) +
                        " vs " + std::to_string(gy0));
  return acc;
}

struct YStarResult {
  double y_star;
  double m_threshold;  // M = G(y*)
};

// Root of sum a_i (p1+1)/(p_i+1) (2 gamma_i^2)^{(p_i+1)/2} y^{(p_i-1)/2} = l0+1.
// Only meaningful when p1 > l0 (otherwise M <= 0 and the positive-energy
// blow-up theorem does not apply).
inline std::optional<YStarResult> find_y_star(const SourceSpec& src,
                                              const std::vector<double>& gammas, double l0) {
  if (!(src.p1() > l0)) return std::nullopt;
  auto f = [&](double y) { return y0_lhs(y, src, gammas, true) - (l0 + 1.0); };
  const double hi = expand_upper(f, 1.0);
  const double y_star = bisect(f, 0.0, hi, 1e-13);
  const double m = big_g(y_star, src, gammas);
  const double m_closed = y_star * (src.p1() - l0) / (src.p1() + 1.0);
  if (!close_rel(m, m_closed, 1e-8))
    throw InconsistentG("find_y_star: G(y*) disagrees with y*(p1-l0)/(p1+1)");
  return YStarResult{y_star, m};
}

// J(u) = 1/2 ||grad u||^2 - sum a_i/(p_i+1)||u||^{p_i+1} + sum_{j<=s0} b_j/(q_j+1)||u||^{q_j+1}
inline double j_functional(const SpatialGrid& g, const Field& u, const SourceSpec& src) {
  double acc = 0.5 * grad_sq(g, u);
  for (const auto& t : src.positive())
    acc -= t.coeff / (t.exponent + 1.0) * lp_pow(g, u, t.exponent + 1.0);
  for (int j = 0; j < src.s0(); ++j) {
    const auto& t = src.negative()[j];
    acc += t.coeff / (t.exponent + 1.0) * lp_pow(g, u, t.exponent + 1.0);
  }
  return acc;
}

// I with the 1/2-weighted quadratic part; memory_quadratic is
// integral mu ||grad v(0) - grad v(-s)||^2 ds for the state's history.
inline double i_functional_value(const SpatialGrid& g, const Field& u, double memory_quadratic,
                                 const SourceSpec& src) {
  double acc = 0.5 * (grad_sq(g, u) + memory_quadratic);
  for (const auto& t : src.positive())
    acc -= t.coeff / (t.exponent + 1.0) * lp_pow(g, u, t.exponent + 1.0);
  for (int j = 0; j < src.s0(); ++j) {
    const auto& t = src.negative()[j];
    acc += t.coeff / (t.exponent + 1.0) * lp_pow(g, u, t.exponent + 1.0);
  }
  return acc;
}

// I0 with unit weights and first-power coefficients.
inline double i0_value(const SpatialGrid& g, const Field& u, double memory_quadratic,
                       const SourceSpec& src) {
  double acc = grad_sq(g, u) + memory_quadratic;
  for (const auto& t : src.positive()) acc -= t.coeff * lp_pow(g, u, t.exponent + 1.0);
  for (int j = 0; j < src.s0(); ++j) {
    const auto& t = src.negative()[j];
    acc += t.coeff * lp_pow(g, u, t.exponent + 1.0);
  }
  return acc;
}

inline double i_functional(const SpatialGrid& g, const HistoryProfile& h, const SourceSpec& src,
                           const RelaxationKernel& k) {
  return i_functional_value(g, h.displacement(), h.memory_quadratic(g, k), src);
}

inline double i0(const SpatialGrid& g, const HistoryProfile& h, const SourceSpec& src,
                 const RelaxationKernel& k) {
  return i0_value(g, h.displacement(), h.memory_quadratic(g, k), src);
}

// Unique positive root of
//   lambda Q = sum a_i lambda^{p_i} A_i - sum_{j<=s0} b_j lambda^{q_j} B_j,
// Q = ||grad u||^2 + memory_quadratic. Solved on the form normalized by
// lambda^{q_{s0}} (or lambda when s0 = 0), which is strictly increasing.
inline double lambda_star(const SpatialGrid& g, const Field& u, const SourceSpec& src,
                          double memory_quadratic) {
  const double q_stat = grad_sq(g, u) + memory_quadratic;
  if (!(q_stat > 0.0)) throw ZeroField("lambda_star: zero field");
  std::vector<double> A, B;
  for (const auto& t : src.positive()) A.push_back(lp_pow(g, u, t.exponent + 1.0));
  for (int j = 0; j < src.s0(); ++j)
    B.push_back(lp_pow(g, u, src.negative()[j].exponent + 1.0));
  const double q0 = (src.s0() > 0) ? src.negative()[src.s0() - 1].exponent : 1.0;
  auto f = [&](double lam) {
    double acc = -std::pow(lam, 1.0 - q0) * q_stat;
    for (std::size_t i = 0; i < A.size(); ++i)
      acc += src.positive()[i].coeff * std::pow(lam, src.positive()[i].exponent - q0) * A[i];
    for (std::size_t j = 0; j < B.size(); ++j)
      acc -= src.negative()[j].coeff * std::pow(lam, src.negative()[j].exponent - q0) * B[j];
    return acc;
  };
  double lo = 1.0;
  int guard = 0;
  while (f(lo) > 0.0 && guard++ < 2000) lo *= 0.5;
  const double hi = expand_upper(f, std::max(1.0, 2.0 * lo));
  return bisect(f, lo, hi, 1e-13);
}

struct NehariOptions {
  int starts = 8;
  long max_iter = 20000;
  int window = 50;
  double rel_tol = 1e-10;
  std::uint64_t seed = 0xd00d5eedbead02ULL;
};

struct NehariEstimate {
  double d = 0.0;
  Field minimizer;
  long iterations = 0;
  bool converged = false;
};

namespace detail {

// One descent run on K(u) = J(lambda0(u) u), the mountain-pass value along
// the ray through u. K is scale invariant, so iterates stay grad-normalized.
inline NehariEstimate nehari_descend(const SpatialGrid& g, const SourceSpec& src, Field u,
                                     const NehariOptions& opt) {
  normalize_grad(g, u);
  const std::size_t n = u.size();
  auto mountain_pass = [&](const Field& w) {
    const double lam = lambda_star(g, w, src, 0.0);
    Field v(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) v[i] = lam * w[i];
    return std::pair<double, Field>(j_functional(g, v, src), std::move(v));
  };

  auto [K, v] = mountain_pass(u);
  std::vector<double> hist{K};
  Field dir(n), trial(n), lap(n);
  double eta = 0.25;
  long it = 0;
  bool converged = false;

  for (; it < opt.max_iter; ++it) {
    laplacian(g, v, lap);
    for (std::size_t i = 0; i < n; ++i) dir[i] = lap[i] + src.f_truncated(v[i]);
    double dn = 0.0;
    for (double x : dir) dn += x * x;
    dn = std::sqrt(dn);
    if (dn == 0.0) {
      converged = true;
      break;
    }
    bool accepted = false;
    for (int bt = 0; bt < 40; ++bt) {
      for (std::size_t i = 0; i < n; ++i) trial[i] = u[i] + eta * dir[i] / dn;
      const double gn = std::sqrt(grad_sq(g, trial));
      if (!(gn > 0.0)) {
        eta *= 0.5;
        continue;
      }
      for (auto& x : trial) x /= gn;
      auto [Kt, vt] = mountain_pass(trial);
      if (Kt < K) {
        u.swap(trial);
        v = std::move(vt);
        K = Kt;
        eta = std::min(eta * 1.3, 5.0);
        accepted = true;
        break;
      }
      eta *= 0.5;
    }
    hist.push_back(K);
    const int w = opt.window;
    if (static_cast<int>(hist.size()) > w &&
        hist[hist.size() - 1 - w] - hist.back() < opt.rel_tol * std::fabs(hist.back())) {
      converged = true;
      break;
    }
    if (!accepted && eta < 1e-300) {
      converged = true;
      break;
    }
  }
  NehariEstimate est;
  est.d = K;
  est.minimizer = std::move(u);
  est.iterations = it;
  est.converged = converged;
  return est;
}

}  // namespace detail

inline NehariEstimate estimate_d(const SpatialGrid& g, const SourceSpec& src,
                                 const NehariOptions& opt = {}) {
  const Field eig = first_eigenvector(g);
  NehariEstimate best;
  best.d = std::numeric_limits<double>::infinity();
  for (int s = 0; s < opt.starts; ++s) {
    Field u0 = eig;
    if (s > 0) {
      SplitMix64 rng(opt.seed + 1303 * static_cast<std::uint64_t>(s));
      const double amp = 0.15 + 0.1 * s;
      for (auto& v : u0) v += amp * rng.symmetric();
    }
    NehariEstimate est = detail::nehari_descend(g, src, std::move(u0), opt);
    if (est.d < best.d) best = std::move(est);
  }
  if (!best.converged)
    logf(LogLevel::Warn, "estimate_d: max_iter reached, returning best so far");
  return best;
}

struct GridInfo {
  int dimension = 1;
  double length_x = 0.0, length_y = 0.0;
  int nx = 0, ny = 0;
  double hx = 0.0, hy = 0.0;
};

inline GridInfo grid_info(const SpatialGrid& g) {
  return GridInfo{g.dimension(), g.length_x(), g.length_y(), g.nx(), g.ny(), g.hx(), g.hy()};
}

struct WellConstants {
  std::vector<double> gammas;  // one per amplifying exponent, ascending p_i
  double y0 = 0.0;
  double d0 = 0.0;
  double l0 = 0.0;  // max{q_s, sqrt(k0)}
  std::optional<YStarResult> y_star;
  double d = std::numeric_limits<double>::quiet_NaN();
  double d_lower = 0.0;  // d0, the certified lower bound
  bool d_converged = false;
  GridInfo grid;
};

struct WellOptions {
  std::optional<std::vector<double>> gamma_override;
  bool skip_d = false;
  SobolevOptions sobolev;
  NehariOptions nehari;
};

inline WellConstants compute_well_constants(const SpatialGrid& g, const SourceSpec& src,
                                            const RelaxationKernel& kernel,
                                            const WellOptions& opt = {}) {
  WellConstants wc;
  wc.grid = grid_info(g);
  if (opt.gamma_override) {
    wc.gammas = *opt.gamma_override;
    if (wc.gammas.size() == 1 && src.positive().size() > 1)
      wc.gammas.assign(src.positive().size(), wc.gammas.front());
    if (wc.gammas.size() != src.positive().size())
      throw ConfigError("gamma override: need one value (broadcast) or one per source term");
  } else {
    for (const auto& t : src.positive())
      wc.gammas.push_back(estimate_gamma(g, t.exponent, opt.sobolev).gamma);
  }
  wc.y0 = find_y0(src, wc.gammas);
  wc.d0 = compute_d0(src, wc.gammas, wc.y0);
  wc.d_lower = wc.d0;
  wc.l0 = std::max(src.s() > 0 ? src.qs() : 0.0, std::sqrt(kernel.k0()));
  wc.y_star = find_y_star(src, wc.gammas, wc.l0);
  if (wc.y_star && kernel.k0() > 1.0 && !(wc.y_star->y_star > wc.y0))
    throw InconsistentG("find_y_star: expected y* > y0 for k(0) > 1");
  if (!opt.skip_d) {
    NehariEstimate est = estimate_d(g, src, opt.nehari);
    wc.d = est.d;
    wc.d_converged = est.converged;
    if (!opt.gamma_override && wc.d < wc.d0 - 1e-6)
      throw InconsistentG("estimate_d: Nehari estimate fell below the d0 lower bound");
    if (opt.gamma_override && wc.d < wc.d0 - 1e-6)
      logf(LogLevel::Warn, "estimate_d below overridden d0 (override inconsistent with grid)");
  }
  return wc;
}

enum class WellLabel { W1, W2, Boundary, OutsideWell };

inline const char* to_string(WellLabel l) {
  switch (l) {
    case WellLabel::W1: return "W1";
    case WellLabel::W2: return "W2";
    case WellLabel::Boundary: return "Boundary";
    default: return "OutsideWell";
  }
}

struct WellMembership {
  double I0_value = 0.0;
  double I_value = 0.0;
  double J_value = 0.0;
  WellLabel label = WellLabel::W1;
};

inline WellMembership classify_membership(const SpatialGrid& g, const HistoryProfile& h,
                                          const SourceSpec& src, const RelaxationKernel& k,
                                          double d) {
  WellMembership m;
  const double memq = h.memory_quadratic(g, k);
  const Field& u = h.displacement();
  m.I0_value = i0_value(g, u, memq, src);
  m.I_value = i_functional_value(g, u, memq, src);
  m.J_value = j_functional(g, u, src);
  const double scale = grad_sq(g, u) + memq;
  if (scale == 0.0) {
    m.label = WellLabel::W1;  // the zero state belongs to W1 by convention
    return m;
  }
  if (!(m.I_value < d)) {
    m.label = WellLabel::OutsideWell;
    return m;
  }
  if (std::fabs(m.I0_value) <= 1e-9 * scale)
    m.label = WellLabel::Boundary;
  else
    m.label = (m.I0_value > 0.0) ? WellLabel::W1 : WellLabel::W2;
  return m;
}

}  // namespace viscowell
