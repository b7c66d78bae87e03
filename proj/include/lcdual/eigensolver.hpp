#pragma once

// Radial finite-volume oracle for the 2D Coulomb and oscillator problems.
// Each system in angular sector l reduces to
//   -(1/r)(r R')' + (l^2/r^2) R + W(r; E) R = lambda R
// with (W, lambda) depending on the equation; the KG and Dirac cases couple
// W to the unknown energy and are solved by fixed-point iteration.

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lcdual/field.hpp"
#include "lcdual/model.hpp"
#include "lcdual/tridiagonal.hpp"

namespace lcdual::eigensolver {

/// Cell-centered radial grid: r_i = (i + 1/2) h for i = 0..n_cells-1,
/// h = r_max / n_cells, faces at j h.
struct GridSpec {
  int n_cells = 1024;
  double r_max = 40.0;

  /// Throws InvalidGrid unless n_cells >= 16 and r_max > 0.
  void validate() const;
  double h() const noexcept { return r_max / n_cells; }
  double radius(int i) const noexcept { return (i + 0.5) * h(); }

  friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

enum class Target {
  TwoMuE,            // lambda = 2 mu E
  EnergySquaredGap,  // lambda = E^2 - M^2 (eps^2 - m^2 for the oscillator)
};

struct RadialProblem {
  int l = 0;
  SystemSpec spec;
  Target target = Target::TwoMuE;
  bool energy_dependent = false;

  /// W(r; E). `energy` is ignored unless energy_dependent.
  double potential(double r, double energy) const noexcept;
  /// lambda for a given energy, and the positive-branch inverse.
  double eigenvalue_for(double energy) const noexcept;
  /// Throws NegativeDiscriminant if mass^2 + lambda < 0.
  double energy_for(double lambda) const;
};

RadialProblem radial_reduce(const SystemSpec& spec, int l);

/// Symmetric form D^{-1/2} K D^{-1/2} of the finite-volume matrix K with the
/// mass matrix D = diag(r_i), W frozen at `energy`.
tridiagonal::SymTridiag discretize(const RadialProblem& problem, double energy, const GridSpec& grid);

/// Rayleigh quotient of samples R under the finite-volume pencil (K, D),
/// with the gradient part summed in positive flux form.
double rayleigh_quotient(const RadialProblem& problem, double energy, const GridSpec& grid,
                         const std::vector<double>& R);

struct RadialSolution {
  double energy = 0.0;
  std::vector<double> eigenvector;  // R(r_i), sum R_i^2 r_i h = 1
  int iterations = 1;
  bool converged = true;
  GridSpec grid;
  int l = 0;
};

struct SolveOptions {
  double tol = 1e-12;  // relative to the mass
  int max_iter = 200;
  double relax = 0.5;
  std::uint64_t seed = tridiagonal::kDefaultSeed;
  std::optional<double> initial_energy;
};

/// Schroedinger levels: one linear solve.
RadialSolution solve_linear(const SystemSpec& spec, const QuantumNumbers& qn, const GridSpec& grid,
                            const SolveOptions& opts = {});

/// KG / Dirac levels by relaxed fixed-point iteration on E. Throws
/// NotRelativistic, NegativeDiscriminant or MaxIterExceeded.
RadialSolution solve_selfconsistent(const SystemSpec& spec, const QuantumNumbers& qn, const GridSpec& grid,
                                    const SolveOptions& opts = {});

/// Dispatch on the equation.
RadialSolution solve_state(const SystemSpec& spec, const QuantumNumbers& qn, const GridSpec& grid,
                           const SolveOptions& opts = {});

/// Coulomb: 40 / sqrt(M^2 - E^2) (KG/Dirac) or 40 / sqrt(-2 mu E), E from the
/// closed form. Oscillator: 10 / c^(1/4) where W = c r^2.
double default_rmax(const SystemSpec& spec, const QuantumNumbers& qn);

/// (4 E_{h/2} - E_h) / 3.
double richardson(double e_h, double e_h2) noexcept;

struct ExtrapolatedLevel {
  double energy = 0.0;  // Richardson value
  RadialSolution coarse;
  RadialSolution fine;  // 2 n_cells, same r_max
};

ExtrapolatedLevel solve_extrapolated(const SystemSpec& spec, const QuantumNumbers& qn, const GridSpec& coarse,
                                     const SolveOptions& opts = {});

/// Lower Dirac component G(r) of sector l + 1 from the upper radial function
/// R of sector l: G = -i (R' - l R / r) / (M + E), central differences.
/// Throws DegenerateEnergy when |M + E| is at rounding level.
std::vector<std::complex<double>> dirac_lower_component(const std::vector<double>& upper, const GridSpec& grid, int l,
                                                        double M, double E);

/// R(r) e^{i l theta} on an x-plane polar grid with n_r = n_cells.
Field2D to_field(const RadialSolution& sol, int n_theta);

/// Upper R e^{i l theta}, lower G e^{i (l+1) theta}.
Spinor2D to_spinor(const RadialSolution& sol, double M, int n_theta);

struct ScanResult {
  QuantumNumbers qn;
  std::optional<RadialSolution> solution;
  std::optional<double> extrapolated;
  std::string error;  // Error::what() of a failed solve, empty otherwise
};

/// Solves every state in `states` in parallel; results keep the input order.
/// r_max defaults to default_rmax per state. With `extrapolate`, a second
/// solve at 2 n_cells supplies the Richardson value.
std::vector<ScanResult> scan_states(const SystemSpec& spec, const std::vector<QuantumNumbers>& states, int n_cells,
                                    std::optional<double> r_max, bool extrapolate, const SolveOptions& opts = {});

}  // namespace lcdual::eigensolver
