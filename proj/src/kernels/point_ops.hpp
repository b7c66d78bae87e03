#pragma once

// Per-point bodies shared by the serial and OpenMP kernel loops. Keeping them
// in one place is what makes the two variants produce identical bits.

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

#include "lcdual/kernels.hpp"
#include "lcdual/summation.hpp"

namespace lcdual::kernels::detail {

struct Stencil {
  std::array<int, 4> index{};
  std::array<double, 4> weight{};
  int count = 0;
};

/// Lagrange weights on nodes 0..3 at position x.
inline std::array<double, 4> cubic_weights(double x) noexcept {
  std::array<double, 4> w{};
  for (int k = 0; k < 4; ++k) {
    double num = 1.0;
    double den = 1.0;
    for (int m = 0; m < 4; ++m) {
      if (m == k) continue;
      num *= x - m;
      den *= k - m;
    }
    w[k] = num / den;
  }
  return w;
}

/// Radial stencil at radius r; one-sided near both ends of the grid since the
/// radial profile is smooth in r on [0, r_max] but not across the origin.
inline Stencil radial_stencil(const PolarGrid& g, double r, Interpolation interp) noexcept {
  const double t = (r - g.radius(0)) / g.dr();
  Stencil s;
  if (interp == Interpolation::Bicubic && g.n_r >= 4) {
    const int i0 = std::clamp(static_cast<int>(std::floor(t)) - 1, 0, g.n_r - 4);
    const auto w = cubic_weights(t - i0);
    s.count = 4;
    for (int k = 0; k < 4; ++k) {
      s.index[k] = i0 + k;
      s.weight[k] = w[k];
    }
    return s;
  }
  const int i0 = std::clamp(static_cast<int>(std::floor(t)), 0, g.n_r - 2);
  const double x = t - i0;
  s.count = 2;
  s.index = {i0, i0 + 1, 0, 0};
  s.weight = {1.0 - x, x, 0.0, 0.0};
  return s;
}

/// Periodic angular stencil at fractional source index `pos` in [0, n).
inline Stencil angular_stencil(int n, double pos, Interpolation interp) noexcept {
  const double fl = std::floor(pos);
  const int j0 = static_cast<int>(fl);
  const double frac = pos - fl;
  auto wrap = [n](int j) { return ((j % n) + n) % n; };
  Stencil s;
  if (interp == Interpolation::Bicubic) {
    const auto w = cubic_weights(frac + 1.0);
    s.count = 4;
    for (int k = 0; k < 4; ++k) {
      s.index[k] = wrap(j0 - 1 + k);
      s.weight[k] = w[k];
    }
    return s;
  }
  s.count = 2;
  s.index = {wrap(j0), wrap(j0 + 1), 0, 0};
  s.weight = {1.0 - frac, frac, 0.0, 0.0};
  return s;
}

inline cplx interpolate(const Field2D& src, const Stencil& rs, const Stencil& as) noexcept {
  cplx acc{};
  for (int a = 0; a < rs.count; ++a) {
    cplx row{};
    for (int b = 0; b < as.count; ++b) row += as.weight[b] * src(rs.index[a], as.index[b]);
    acc += rs.weight[a] * row;
  }
  return acc;
}

/// Source angular index of theta_x = 2 theta_u for target column j, computed
/// in index arithmetic so that coincident nodes land exactly.
inline double doubled_angle_position(int j, int n_target, int n_source) noexcept {
  const double pos = (2.0 * j * n_source) / n_target;
  return std::fmod(pos, static_cast<double>(n_source));
}

inline void pullback_ring(const Field2D& src, const PolarGrid& target, Interpolation interp, Prefactor prefactor,
                          int i, const std::vector<Stencil>& angular, std::span<cplx> out) noexcept {
  const double rho = target.radius(i);
  const Stencil rs = radial_stencil(src.grid(), rho * rho, interp);
  for (int j = 0; j < target.n_theta; ++j) {
    cplx v = interpolate(src, rs, angular[j]);
    if (prefactor == Prefactor::HalfTauOverRhoSquared) v *= std::polar(1.0, target.theta(j)) / (2.0 * rho);
    out[target.index(i, j)] = v;
  }
}

inline std::vector<Stencil> pullback_angular_stencils(const PolarGrid& src, const PolarGrid& target,
                                                      Interpolation interp) {
  std::vector<Stencil> out(target.n_theta);
  for (int j = 0; j < target.n_theta; ++j) {
    out[j] = angular_stencil(src.n_theta, doubled_angle_position(j, target.n_theta, src.n_theta), interp);
  }
  return out;
}

inline int wrap_theta(int j, int n) noexcept { return j < 0 ? j + n : (j >= n ? j - n : j); }

inline void scalar_operator_ring(const Field2D& g, const ScalarOperator& op, int i, std::span<cplx> out) noexcept {
  const auto& grid = g.grid();
  const int n = grid.n_theta;
  const double r = grid.radius(i);
  const double h = grid.dr();
  const double dth = grid.dtheta();
  const double r_out = r + 0.5 * h;
  const double r_in = r - 0.5 * h;
  const double radial_scale = 1.0 / (r * h * h);
  const double angular_scale = 1.0 / (r * r * dth * dth);
  const double diag = op.confinement * r * r - op.shift;
  for (int j = 0; j < n; ++j) {
    const cplx f = g(i, j);
    const cplx radial = (r_out * (g(i + 1, j) - f) - r_in * (f - g(i - 1, j))) * radial_scale;
    const cplx angular = (g(i, wrap_theta(j + 1, n)) - 2.0 * f + g(i, wrap_theta(j - 1, n))) * angular_scale;
    out[grid.index(i, j)] = -(radial + angular) + diag * f;
  }
}

struct PolarGradient {
  cplx d_r;
  cplx d_theta;
};

inline PolarGradient gradient(const Field2D& f, int i, int j) noexcept {
  const auto& grid = f.grid();
  const int n = grid.n_theta;
  return {(f(i + 1, j) - f(i - 1, j)) / (2.0 * grid.dr()),
          (f(i, wrap_theta(j + 1, n)) - f(i, wrap_theta(j - 1, n))) / (2.0 * grid.dtheta())};
}

inline void dirac_operator_ring(const Spinor2D& phi, const DiracOperator& op, int i, std::span<cplx> out_upper,
                                std::span<cplx> out_lower) noexcept {
  constexpr cplx I{0.0, 1.0};
  const auto& grid = phi.grid();
  const double r = grid.radius(i);
  const double diag_upper = op.confinement * r * r + op.upper_shift;
  for (int j = 0; j < grid.n_theta; ++j) {
    const cplx phase = std::polar(1.0, grid.theta(j));
    const cplx f1 = phi.upper()(i, j);
    const cplx f2 = phi.lower()(i, j);
    const PolarGradient g1 = gradient(phi.upper(), i, j);
    const PolarGradient g2 = gradient(phi.lower(), i, j);
    // p1 -+ i p2 = -i e^{-+i theta} (d_r -+ (i/r) d_theta)
    const cplx p_minus_f2 = -I * std::conj(phase) * (g2.d_r - (I / r) * g2.d_theta);
    const cplx p_plus_f1 = -I * phase * (g1.d_r + (I / r) * g1.d_theta);
    cplx lower = p_plus_f1 + op.lower_shift * f2;
    if (op.measure_term) lower -= 2.0 * I * phase * f1 / r;
    out_upper[grid.index(i, j)] = diag_upper * f1 + p_minus_f2;
    out_lower[grid.index(i, j)] = lower;
  }
}

inline double ring_sq_norm(std::span<const cplx> values, const PolarGrid& grid, int i, std::vector<double>& scratch) {
  scratch.resize(grid.n_theta);
  for (int j = 0; j < grid.n_theta; ++j) scratch[j] = std::norm(values[grid.index(i, j)]);
  return pairwise_sum(scratch) * grid.radius(i) * grid.dr() * grid.dtheta();
}

inline void zero_ring(const PolarGrid& grid, int i, std::span<cplx> out) noexcept {
  for (int j = 0; j < grid.n_theta; ++j) out[grid.index(i, j)] = cplx{};
}

}  // namespace lcdual::kernels::detail
