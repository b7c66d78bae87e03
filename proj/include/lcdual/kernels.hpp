#pragma once

// Grid kernels behind the Levi-Civita module. Each kernel exists twice with
// identical results: a serial reference (namespace serial) and an OpenMP
// version (namespace omp). Reductions are computed per ring in parallel and
// combined by a fixed pairwise tree, so both give bitwise-equal output.

#include <span>

#include "lcdual/field.hpp"

namespace lcdual::kernels {

enum class Exec { Serial, Parallel };

enum class Interpolation { Bilinear, Bicubic };

/// Multiplier applied after interpolation in a pullback.
enum class Prefactor {
  None,
  HalfTauOverRhoSquared,  // tau / (2 rho^2), tau = u1 + i u2
};

/// (-Laplacian + confinement rho^2 - shift) on a scalar field.
struct ScalarOperator {
  double confinement = 0.0;
  double shift = 0.0;
};

/// 2x2 operator
///   row 1: (confinement rho^2 + upper_shift) f1 + (p1 - i p2) f2
///   row 2: (p1 + i p2) f1 [- 2i tau f1 / rho^2] + lower_shift f2
/// The bracketed term is included when `measure_term` is set.
struct DiracOperator {
  double confinement = 0.0;
  double upper_shift = 0.0;
  double lower_shift = 0.0;
  bool measure_term = false;
};

namespace serial {
/// out(i, j) = prefactor * src(r = rho_i^2, theta = 2 theta_j); out spans target.size().
void pullback(const Field2D& src, const PolarGrid& target, Interpolation interp, Prefactor prefactor,
              std::span<cplx> out);
/// Operator on rings [1, n_r - 2]; innermost and outermost rings of `out` are zeroed.
void apply_scalar_operator(const Field2D& g, const ScalarOperator& op, std::span<cplx> out);
void apply_dirac_operator(const Spinor2D& phi, const DiracOperator& op, std::span<cplx> out_upper,
                          std::span<cplx> out_lower);
/// Sum of |v|^2 r dr dtheta over rings [ring_begin, ring_end) with r >= r_min.
double weighted_sq_norm(std::span<const cplx> values, const PolarGrid& grid, int ring_begin, int ring_end,
                        double r_min = 0.0);
}  // namespace serial

// Same contracts as serial::.
namespace omp {
void pullback(const Field2D& src, const PolarGrid& target, Interpolation interp, Prefactor prefactor,
              std::span<cplx> out);
void apply_scalar_operator(const Field2D& g, const ScalarOperator& op, std::span<cplx> out);
void apply_dirac_operator(const Spinor2D& phi, const DiracOperator& op, std::span<cplx> out_upper,
                          std::span<cplx> out_lower);
double weighted_sq_norm(std::span<const cplx> values, const PolarGrid& grid, int ring_begin, int ring_end,
                        double r_min = 0.0);
}  // namespace omp

inline void pullback(const Field2D& src, const PolarGrid& target, Interpolation interp, Prefactor prefactor,
                     std::span<cplx> out, Exec exec) {
  exec == Exec::Serial ? serial::pullback(src, target, interp, prefactor, out)
                       : omp::pullback(src, target, interp, prefactor, out);
}

inline void apply_scalar_operator(const Field2D& g, const ScalarOperator& op, std::span<cplx> out, Exec exec) {
  exec == Exec::Serial ? serial::apply_scalar_operator(g, op, out) : omp::apply_scalar_operator(g, op, out);
}

inline void apply_dirac_operator(const Spinor2D& phi, const DiracOperator& op, std::span<cplx> out_upper,
                                 std::span<cplx> out_lower, Exec exec) {
  exec == Exec::Serial ? serial::apply_dirac_operator(phi, op, out_upper, out_lower)
                       : omp::apply_dirac_operator(phi, op, out_upper, out_lower);
}

inline double weighted_sq_norm(std::span<const cplx> values, const PolarGrid& grid, int ring_begin, int ring_end,
                               double r_min, Exec exec) {
  return exec == Exec::Serial ? serial::weighted_sq_norm(values, grid, ring_begin, ring_end, r_min)
                              : omp::weighted_sq_norm(values, grid, ring_begin, ring_end, r_min);
}

}  // namespace lcdual::kernels
