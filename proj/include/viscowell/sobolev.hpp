#pragma once

// Sharp discrete embedding constants
//   gamma_p = sup { ||u||_{p+1} : ||grad u||_2 = 1 }
// by projected gradient ascent on the gradient-norm sphere, multistart from
// the first Laplacian eigenvector plus seeded perturbations.

#include <cmath>
#include <vector>

#include "viscowell/grid.hpp"

namespace viscowell {

struct SobolevOptions {
  int starts = 8;
  long max_iter = 100000;
  int window = 50;          // convergence judged over this many iterations
  double rel_tol = 1e-10;   // relative R-change over the window
  std::uint64_t seed = 0x5eedfacecafe01ULL;
};

struct EmbeddingEstimate {
  double p = 0.0;
  double gamma = 0.0;
  Field maximizer;
  long iterations = 0;
  double residual = 0.0;  // norm of the projected gradient at exit
  bool converged = false;
};

namespace detail {

inline void normalize_grad(const SpatialGrid& g, Field& u) {
  const double gn = std::sqrt(grad_sq(g, u));
  if (!(gn > 0.0)) throw ZeroField("sobolev: zero field cannot be normalized");
  for (auto& v : u) v /= gn;
}

// One ascent run; returns the best Rayleigh quotient R = ||u||_{p+1}.
inline EmbeddingEstimate ascend(const SpatialGrid& g, double p, Field u,
                                const SobolevOptions& opt) {
  normalize_grad(g, u);
  const std::size_t n = u.size();
  double R = lp_norm(g, u, p + 1.0);
  std::vector<double> hist;
  hist.reserve(1024);
  hist.push_back(R);

  Field gradN(n), constraint(n), dir(n), trial(n);
  double eta = 0.5;
  long it = 0;
  bool converged = false;
  double resid = 0.0;

  for (; it < opt.max_iter; ++it) {
    // ascent direction for ||u||_{p+1} with the radial component removed
    for (std::size_t i = 0; i < n; ++i) gradN[i] = signed_pow(u[i], p);
    laplacian(g, u, constraint);
    for (std::size_t i = 0; i < n; ++i) constraint[i] = -constraint[i];
    double gc = 0.0, cc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      gc += gradN[i] * constraint[i];
      cc += constraint[i] * constraint[i];
    }
    const double proj = (cc > 0.0) ? gc / cc : 0.0;
    double dn = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      dir[i] = gradN[i] - proj * constraint[i];
      dn += dir[i] * dir[i];
    }
    dn = std::sqrt(dn);
    resid = dn;
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
      for (auto& v : trial) v /= gn;
      const double Rt = lp_norm(g, trial, p + 1.0);
      if (Rt > R) {  // monotone ascent
        u.swap(trial);
        R = Rt;
        eta = std::min(eta * 1.3, 10.0);
        accepted = true;
        break;
      }
      eta *= 0.5;
    }
    hist.push_back(R);
    const int w = opt.window;
    if (static_cast<int>(hist.size()) > w &&
        hist.back() - hist[hist.size() - 1 - w] < opt.rel_tol * hist.back()) {
      converged = true;
      break;
    }
    if (!accepted && eta < 1e-300) {
      converged = true;
      break;
    }
  }

  EmbeddingEstimate est;
  est.p = p;
  est.gamma = R;
  est.maximizer = std::move(u);
  est.iterations = it;
  est.residual = resid;
  est.converged = converged;
  return est;
}

}  // namespace detail

inline EmbeddingEstimate estimate_gamma(const SpatialGrid& g, double p,
                                        const SobolevOptions& opt = {}) {
  if (!(p >= 1.0)) throw ConfigError("estimate_gamma: p must be >= 1");
  const Field eig = first_eigenvector(g);
  EmbeddingEstimate best;
  for (int s = 0; s < opt.starts; ++s) {
    Field u0 = eig;
    if (s > 0) {
      SplitMix64 rng(opt.seed + 977 * static_cast<std::uint64_t>(s));
      const double amp = 0.15 + 0.1 * s;
      for (auto& v : u0) v += amp * rng.symmetric();
    }
    EmbeddingEstimate est = detail::ascend(g, p, std::move(u0), opt);
    if (est.gamma > best.gamma) best = std::move(est);
  }
  if (!best.converged)
    logf(LogLevel::Warn, "estimate_gamma(p=%.3g): max_iter reached, returning best so far", p);
  return best;
}

}  // namespace viscowell
