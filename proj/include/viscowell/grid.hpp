#pragma once

// Interior-node finite-difference grids on [0,L] (or [0,Lx]x[0,Ly]) with
// homogeneous Dirichlet boundaries, plus the discrete norms the whole
// artifact is built on:
//   ||u||_p^p     = cell * sum |u_i|^p            (interior nodes)
//   ||grad u||_2^2 = cell * sum over edges of one-sided differences,
//                    boundary edges included.
// Summation by parts (u, lap v) = -(grad u, grad v) holds exactly.

#include <cmath>
#include <cstddef>
#include <vector>

#include "viscowell/common.hpp"

namespace viscowell {

using Field = std::vector<double>;

class SpatialGrid {
 public:
  static SpatialGrid line(double length, int n) {
    if (!(length > 0.0)) throw ConfigError("grid: length must be positive");
    if (n < 3) throw ConfigError("grid: need at least 3 interior nodes");
    SpatialGrid g;
    g.dim_ = 1;
    g.len_[0] = length;
    g.len_[1] = 0.0;
    g.n_[0] = n;
    g.n_[1] = 1;
    g.h_[0] = length / (n + 1);
    g.h_[1] = 1.0;
    return g;
  }

  static SpatialGrid rectangle(double lx, double ly, int nx, int ny) {
    if (!(lx > 0.0) || !(ly > 0.0)) throw ConfigError("grid: lengths must be positive");
    if (nx < 3 || ny < 3) throw ConfigError("grid: need at least 3 interior nodes per axis");
    SpatialGrid g;
    g.dim_ = 2;
    g.len_[0] = lx;
    g.len_[1] = ly;
    g.n_[0] = nx;
    g.n_[1] = ny;
    g.h_[0] = lx / (nx + 1);
    g.h_[1] = ly / (ny + 1);
    return g;
  }

  int dimension() const { return dim_; }
  int nx() const { return n_[0]; }
  int ny() const { return n_[1]; }
  double hx() const { return h_[0]; }
  double hy() const { return h_[1]; }
  double length_x() const { return len_[0]; }
  double length_y() const { return len_[1]; }
  std::size_t size() const { return static_cast<std::size_t>(n_[0]) * n_[1]; }
  double cell() const { return dim_ == 1 ? h_[0] : h_[0] * h_[1]; }
  double min_h() const { return dim_ == 1 ? h_[0] : std::min(h_[0], h_[1]); }

  double x(int i) const { return (i + 1) * h_[0]; }
  double y(int j) const { return (j + 1) * h_[1]; }
  std::size_t idx(int i, int j) const { return static_cast<std::size_t>(j) * n_[0] + i; }

  Field zeros() const { return Field(size(), 0.0); }

  bool same_shape(const SpatialGrid& o) const {
    return dim_ == o.dim_ && n_[0] == o.n_[0] && n_[1] == o.n_[1] &&
           len_[0] == o.len_[0] && len_[1] == o.len_[1];
  }

 private:
  int dim_ = 1;
  double len_[2] = {0, 0};
  int n_[2] = {0, 1};
  double h_[2] = {0, 1};
};

inline void check_shape(const SpatialGrid& g, const Field& u, const char* what) {
  if (u.size() != g.size()) throw ShapeMismatch(std::string("field size mismatch: ") + what);
}

// 5-point (3-point in 1D) Laplacian, zero beyond the boundary.
inline void laplacian(const SpatialGrid& g, const Field& u, Field& out) {
  check_shape(g, u, "laplacian");
  out.resize(u.size());
  if (g.dimension() == 1) {
    const int n = g.nx();
    const double ih2 = 1.0 / (g.hx() * g.hx());
    for (int i = 0; i < n; ++i) {
      const double left = (i > 0) ? u[i - 1] : 0.0;
      const double right = (i + 1 < n) ? u[i + 1] : 0.0;
      out[i] = (left - 2.0 * u[i] + right) * ih2;
    }
    return;
  }
  const int nx = g.nx(), ny = g.ny();
  const double ihx2 = 1.0 / (g.hx() * g.hx());
  const double ihy2 = 1.0 / (g.hy() * g.hy());
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      const std::size_t k = g.idx(i, j);
      const double l = (i > 0) ? u[k - 1] : 0.0;
      const double r = (i + 1 < nx) ? u[k + 1] : 0.0;
      const double d = (j > 0) ? u[k - nx] : 0.0;
      const double t = (j + 1 < ny) ? u[k + nx] : 0.0;
      out[k] = (l - 2.0 * u[k] + r) * ihx2 + (d - 2.0 * u[k] + t) * ihy2;
    }
  }
}

inline Field laplacian(const SpatialGrid& g, const Field& u) {
  Field out;
  laplacian(g, u, out);
  return out;
}

// (grad u, grad v) over all edges, boundary differences included.
inline double grad_inner(const SpatialGrid& g, const Field& u, const Field& v) {
  check_shape(g, u, "grad_inner/u");
  check_shape(g, v, "grad_inner/v");
  double acc = 0.0;
  if (g.dimension() == 1) {
    const int n = g.nx();
    const double ih = 1.0 / g.hx();
    double prev_u = 0.0, prev_v = 0.0;
    for (int i = 0; i <= n; ++i) {
      const double cu = (i < n) ? u[i] : 0.0;
      const double cv = (i < n) ? v[i] : 0.0;
      acc += (cu - prev_u) * (cv - prev_v);
      prev_u = cu;
      prev_v = cv;
    }
    return acc * ih * ih * g.cell();
  }
  const int nx = g.nx(), ny = g.ny();
  const double ihx = 1.0 / g.hx(), ihy = 1.0 / g.hy();
  double accx = 0.0, accy = 0.0;
  for (int j = 0; j < ny; ++j) {
    double pu = 0.0, pv = 0.0;
    for (int i = 0; i <= nx; ++i) {
      const double cu = (i < nx) ? u[g.idx(i, j)] : 0.0;
      const double cv = (i < nx) ? v[g.idx(i, j)] : 0.0;
      accx += (cu - pu) * (cv - pv);
      pu = cu;
      pv = cv;
    }
  }
  for (int i = 0; i < nx; ++i) {
    double pu = 0.0, pv = 0.0;
    for (int j = 0; j <= ny; ++j) {
      const double cu = (j < ny) ? u[g.idx(i, j)] : 0.0;
      const double cv = (j < ny) ? v[g.idx(i, j)] : 0.0;
      accy += (cu - pu) * (cv - pv);
      pu = cu;
      pv = cv;
    }
  }
  return (accx * ihx * ihx + accy * ihy * ihy) * g.cell();
}

inline double grad_sq(const SpatialGrid& g, const Field& u) { return grad_inner(g, u, u); }

inline double inner(const SpatialGrid& g, const Field& u, const Field& v) {
  check_shape(g, u, "inner/u");
  check_shape(g, v, "inner/v");
  double acc = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) acc += u[i] * v[i];
  return acc * g.cell();
}

// cell * sum |u_i|^p  ==  ||u||_p^p
inline double lp_pow(const SpatialGrid& g, const Field& u, double p) {
  check_shape(g, u, "lp_pow");
  double acc = 0.0;
  for (double ui : u) acc += abs_pow(ui, p);
  return acc * g.cell();
}

inline double l2_norm(const SpatialGrid& g, const Field& u) {
  return std::sqrt(lp_pow(g, u, 2.0));
}

inline double lp_norm(const SpatialGrid& g, const Field& u, double p) {
  return std::pow(lp_pow(g, u, p), 1.0 / p);
}

inline double max_abs(const Field& u) {
  double m = 0.0;
  for (double v : u) m = std::max(m, std::fabs(v));
  return m;
}

inline bool all_finite(const Field& u) {
  for (double v : u)
    if (!std::isfinite(v)) return false;
  return true;
}

// amplitude * sin(kx pi x / Lx) [* sin(ky pi y / Ly)]
inline Field sine_field(const SpatialGrid& g, double amplitude, int mode_x = 1, int mode_y = 1) {
  Field u = g.zeros();
  const double pi = 3.14159265358979323846;
  if (g.dimension() == 1) {
    for (int i = 0; i < g.nx(); ++i)
      u[i] = amplitude * std::sin(mode_x * pi * g.x(i) / g.length_x());
    return u;
  }
  for (int j = 0; j < g.ny(); ++j)
    for (int i = 0; i < g.nx(); ++i)
      u[g.idx(i, j)] = amplitude * std::sin(mode_x * pi * g.x(i) / g.length_x()) *
                       std::sin(mode_y * pi * g.y(j) / g.length_y());
  return u;
}

inline Field first_eigenvector(const SpatialGrid& g) { return sine_field(g, 1.0); }

}  // namespace viscowell
