#pragma once

// Shared plumbing: error taxonomy, logging, deterministic RNG and small
// scalar numerics (bisection, line fits, signed powers).

#include <algorithm>
#include <cmath>
#include <cstdarg>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace viscowell {

// ConfigError and subclasses map to CLI exit code 2, everything else to 3.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NonPositiveParameter : ConfigError {
  using ConfigError::ConfigError;
};
struct NonIntegrableKernel : ConfigError {
  using ConfigError::ConfigError;
};
struct UnclassifiableKernel : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct AssumptionViolated : ConfigError {
  using ConfigError::ConfigError;
};
struct ShapeMismatch : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ZeroField : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct InconsistentG : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct InsufficientDecay : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NotInBlowupRegime : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class LogLevel { Off = 0, Error = 1, Warn = 2, Info = 3, Debug = 4 };

inline LogLevel log_level() {
  static LogLevel level = [] {
    const char* env = std::getenv("VISCOWELL_LOG");
    if (!env) return LogLevel::Warn;
    std::string s(env);
    for (auto& c : s) c = static_cast<char>(std::tolower(c));
    if (s == "off" || s == "none") return LogLevel::Off;
    if (s == "error") return LogLevel::Error;
    if (s == "warn" || s == "warning") return LogLevel::Warn;
    if (s == "info") return LogLevel::Info;
    if (s == "debug" || s == "trace") return LogLevel::Debug;
    return LogLevel::Warn;
  }();
  return level;
}

inline void logf(LogLevel level, const char* fmt, ...) {
  if (static_cast<int>(level) > static_cast<int>(log_level())) return;
  static const char* tags[] = {"", "error", "warn", "info", "debug"};
  std::fprintf(stderr, "[viscowell %s] ", tags[static_cast<int>(level)]);
  va_list args;
  va_start(args, fmt);
  std::vfprintf(stderr, fmt, args);
  va_end(args);
  std::fputc('\n', stderr);
}

// Deterministic across platforms; used for every seeded start/perturbation.
struct SplitMix64 {
  std::uint64_t state;
  explicit SplitMix64(std::uint64_t seed) : state(seed) {}
  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  double uniform(double a, double b) { return a + (b - a) * uniform(); }
  double symmetric() { return uniform(-1.0, 1.0); }
};

// |u|^p with small-integer fast path.
inline double abs_pow(double u, double p) {
  double a = std::fabs(u);
  double r = std::rint(p);
  if (r == p && r >= 0.0 && r <= 6.0) {
    double acc = 1.0;
    for (int k = 0; k < static_cast<int>(r); ++k) acc *= a;
    return acc;
  }
  return std::pow(a, p);
}

// |u|^{p-1} u, the odd power the sources and damping are built from.
inline double signed_pow(double u, double p) {
  if (u == 0.0) return 0.0;
  return std::copysign(abs_pow(u, p), u);
}

// Root of an increasing f on [lo, hi] with f(lo) <= 0 <= f(hi).
template <class F>
double bisect(F&& f, double lo, double hi, double xtol_rel, int max_iter = 200) {
  double flo = f(lo);
  double fhi = f(hi);
  if (flo > 0.0 || fhi < 0.0)
    throw std::runtime_error("bisect: bracket does not straddle a root");
  for (int it = 0; it < max_iter; ++it) {
    double mid = 0.5 * (lo + hi);
    if (hi - lo <= xtol_rel * (1.0 + std::fabs(mid))) return mid;
    double fm = f(mid);
    if (fm <= 0.0)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

// Doubles hi until f(hi) > 0 (f increasing, f(0+) <= 0).
template <class F>
double expand_upper(F&& f, double hi0, int max_doublings = 200) {
  double hi = hi0;
  for (int k = 0; k < max_doublings; ++k) {
    if (f(hi) > 0.0) return hi;
    hi *= 2.0;
  }
  throw std::runtime_error("expand_upper: no sign change found");
}

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
};

inline LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2)
    throw std::invalid_argument("fit_line: need at least two paired samples");
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
  }
  const double mx = sx / n, my = sy / n;
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx, dy = y[i] - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  if (sxx == 0.0) throw std::invalid_argument("fit_line: degenerate abscissae");
  LineFit out;
  out.slope = sxy / sxx;
  out.intercept = my - out.slope * mx;
  out.r_squared = (syy == 0.0) ? 1.0 : (sxy * sxy) / (sxx * syy);
  return out;
}

inline bool close_rel(double a, double b, double tol) {
  return std::fabs(a - b) <= tol * std::max({1.0, std::fabs(a), std::fabs(b)});
}

}  // namespace viscowell
