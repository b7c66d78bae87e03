#include <cassert>

#include "kernels/point_ops.hpp"

namespace lcdual::kernels::serial {

void pullback(const Field2D& src, const PolarGrid& target, Interpolation interp, Prefactor prefactor,
              std::span<cplx> out) {
  assert(out.size() == target.size());
  const auto angular = detail::pullback_angular_stencils(src.grid(), target, interp);
  for (int i = 0; i < target.n_r; ++i) detail::pullback_ring(src, target, interp, prefactor, i, angular, out);
}

void apply_scalar_operator(const Field2D& g, const ScalarOperator& op, std::span<cplx> out) {
  const auto& grid = g.grid();
  assert(out.size() == grid.size());
  detail::zero_ring(grid, 0, out);
  detail::zero_ring(grid, grid.n_r - 1, out);
  for (int i = 1; i < grid.n_r - 1; ++i) detail::scalar_operator_ring(g, op, i, out);
}

void apply_dirac_operator(const Spinor2D& phi, const DiracOperator& op, std::span<cplx> out_upper,
                          std::span<cplx> out_lower) {
  const auto& grid = phi.grid();
  assert(out_upper.size() == grid.size() && out_lower.size() == grid.size());
  for (int edge : {0, grid.n_r - 1}) {
    detail::zero_ring(grid, edge, out_upper);
    detail::zero_ring(grid, edge, out_lower);
  }
  for (int i = 1; i < grid.n_r - 1; ++i) detail::dirac_operator_ring(phi, op, i, out_upper, out_lower);
}

double weighted_sq_norm(std::span<const cplx> values, const PolarGrid& grid, int ring_begin, int ring_end,
                        double r_min) {
  std::vector<double> rings(grid.n_r, 0.0);
  std::vector<double> scratch;
  for (int i = ring_begin; i < ring_end; ++i) {
    if (grid.radius(i) < r_min) continue;
    rings[i] = detail::ring_sq_norm(values, grid, i, scratch);
  }
  return pairwise_sum(rings);
}

}  // namespace lcdual::kernels::serial
