#pragma once

// Symmetric tridiagonal eigenproblems: Sturm-count bisection for eigenvalues,
// inverse iteration for eigenvectors.

#include <cstdint>
#include <vector>

#include "lcdual/error.hpp"

namespace lcdual::tridiagonal {

inline constexpr std::uint64_t kDefaultSeed = 20240607;

struct SymTridiag {
  std::vector<double> diag;  // n entries
  std::vector<double> off;   // n - 1 entries, off[i] couples i and i + 1

  int size() const noexcept { return static_cast<int>(diag.size()); }
};

/// Number of eigenvalues strictly below x (negative LDL^T pivots of T - x).
int sturm_count(const SymTridiag& t, double x) noexcept;

/// Gershgorin interval containing the whole spectrum.
struct Bounds {
  double lo = 0.0;
  double hi = 0.0;
};
Bounds gershgorin_bounds(const SymTridiag& t) noexcept;

/// max_i |d_i| + |e_{i-1}| + |e_i|.
double inf_norm(const SymTridiag& t) noexcept;

/// `index`-th smallest eigenvalue (0-based), bisected to 1e-13 relative.
double eigenvalue_by_index(const SymTridiag& t, int index);

/// Unit 2-norm eigenvector for an eigenvalue approximation `lambda`: LU of
/// T - lambda with partial pivoting, `iterations` solves from a random start.
/// Throws ConvergenceFailure if the result is not an eigenvector.
std::vector<double> inverse_iteration(const SymTridiag& t, double lambda, std::uint64_t seed, int iterations = 2);

struct EigenPairs {
  std::vector<double> values;                // ascending
  std::vector<std::vector<double>> vectors;  // unit 2-norm, sign fixed by the largest entry
};

/// Lowest `count` eigenpairs. Throws CountExceedsDimension.
EigenPairs solve_linear_spectrum(const SymTridiag& t, int count, std::uint64_t seed = kDefaultSeed);

}  // namespace lcdual::tridiagonal
