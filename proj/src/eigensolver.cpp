#include "lcdual/eigensolver.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "lcdual/spectra.hpp"
#include "lcdual/summation.hpp"

namespace lcdual::eigensolver {

void GridSpec::validate() const {
  if (n_cells < 16) throw Error(ErrorCode::InvalidGrid, "n_cells must be >= 16, got " + std::to_string(n_cells));
  if (!(r_max > 0.0) || !std::isfinite(r_max)) {
    throw Error(ErrorCode::InvalidGrid, "r_max must be positive, got " + std::to_string(r_max));
  }
}

double RadialProblem::potential(double r, double energy) const noexcept {
  const double mass = spec.mass;
  if (const auto* c = std::get_if<Coulomb>(&spec.potential)) {
    return energy_dependent ? -(mass + energy) * c->kappa / r : -2.0 * mass * c->kappa / r;
  }
  const double omega = std::get<Oscillator>(spec.potential).omega;
  return energy_dependent ? (mass + energy) * 0.5 * mass * omega * omega * r * r
                          : mass * mass * omega * omega * r * r;
}

double RadialProblem::eigenvalue_for(double energy) const noexcept {
  return target == Target::TwoMuE ? 2.0 * spec.mass * energy : energy * energy - spec.mass * spec.mass;
}

double RadialProblem::energy_for(double lambda) const {
  if (target == Target::TwoMuE) return lambda / (2.0 * spec.mass);
  const double disc = spec.mass * spec.mass + lambda;
  if (disc < 0.0) {
    throw Error(ErrorCode::NegativeDiscriminant,
                "mass^2 + lambda = " + std::to_string(disc) + " < 0: no positive-branch bound state on this grid");
  }
  return std::sqrt(disc);
}

RadialProblem radial_reduce(const SystemSpec& spec, int l) {
  RadialProblem p;
  p.l = l;
  p.spec = spec;
  p.energy_dependent = is_relativistic(spec.equation);
  p.target = p.energy_dependent ? Target::EnergySquaredGap : Target::TwoMuE;
  return p;
}

tridiagonal::SymTridiag discretize(const RadialProblem& problem, double energy, const GridSpec& grid) {
  grid.validate();
  const int n = grid.n_cells;
  const double h = grid.h();
  const double h2 = h * h;
  const double l2 = static_cast<double>(problem.l) * problem.l;
  tridiagonal::SymTridiag t;
  t.diag.resize(n);
  t.off.resize(n - 1);
  for (int i = 0; i < n; ++i) {
    const double r = grid.radius(i);
    const double r_in = i * h;
    const double r_out = (i + 1) * h;
    double k_ii = (r_in + r_out) / h2 + l2 / r + r * problem.potential(r, energy);
    if (i == n - 1) k_ii += r_out / h2;  // ghost R_n = -R_{n-1}
    t.diag[i] = k_ii / r;
    if (i + 1 < n) t.off[i] = -r_out / h2 / std::sqrt(r * grid.radius(i + 1));
  }
  return t;
}

double rayleigh_quotient(const RadialProblem& problem, double energy, const GridSpec& grid,
                         const std::vector<double>& R) {
  const int n = grid.n_cells;
  const double h = grid.h();
  const double h2 = h * h;
  const double l2 = static_cast<double>(problem.l) * problem.l;
  std::vector<double> flux(n);
  std::vector<double> local(n);
  std::vector<double> mass(n);
  for (int i = 0; i < n; ++i) {
    const double r = grid.radius(i);
    // Face between cells i and i + 1, or the outer wall for the last cell.
    const double d = i + 1 < n ? R[i + 1] - R[i] : -2.0 * R[i];
    flux[i] = (i + 1 < n ? 1.0 : 0.5) * (i + 1) * h * d * d / h2;
    local[i] = (l2 / r + r * problem.potential(r, energy)) * R[i] * R[i];
    mass[i] = r * R[i] * R[i];
  }
  return (pairwise_sum(flux) + pairwise_sum(local)) / pairwise_sum(mass);
}

namespace {

struct LinearSolve {
  double lambda;
  std::vector<double> R;
};

LinearSolve solve_sector(const RadialProblem& problem, double energy, int k, const GridSpec& grid,
                         std::uint64_t seed) {
  const auto t = discretize(problem, energy, grid);
  const double lambda0 = tridiagonal::eigenvalue_by_index(t, k);
  std::vector<double> v = tridiagonal::inverse_iteration(t, lambda0, seed + static_cast<std::uint64_t>(k));

  const double h = grid.h();
  std::vector<double> R(v.size());
  std::size_t peak = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    R[i] = v[i] / std::sqrt(grid.radius(static_cast<int>(i)) * h);
    if (std::abs(R[i]) > std::abs(R[peak])) peak = i;
  }
  if (R[peak] < 0.0) {
    for (double& x : R) x = -x;
  }
  return {rayleigh_quotient(problem, energy, grid, R), std::move(R)};
}

double initial_energy(const SystemSpec& spec, const QuantumNumbers& qn) {
  if (is_coulomb(spec.potential)) return spec.mass;
  const double omega = std::get<Oscillator>(spec.potential).omega;
  return spec.mass + (2.0 * qn.k + std::abs(qn.l) + 1.0) * omega;
}

void check_qn(const QuantumNumbers& qn, const GridSpec& grid) {
  if (qn.k < 0) throw Error(ErrorCode::InvalidArgument, "radial quantum number k must be >= 0");
  if (qn.k >= grid.n_cells) {
    throw Error(ErrorCode::CountExceedsDimension, "k = " + std::to_string(qn.k) + " exceeds the grid dimension");
  }
}

}  // namespace

RadialSolution solve_linear(const SystemSpec& spec, const QuantumNumbers& qn, const GridSpec& grid,
                            const SolveOptions& opts) {
  validate_system(spec);
  grid.validate();
  check_qn(qn, grid);
  const RadialProblem problem = radial_reduce(spec, qn.l);
  LinearSolve s = solve_sector(problem, 0.0, qn.k, grid, opts.seed);
  RadialSolution out;
  out.energy = problem.energy_for(s.lambda);
  out.eigenvector = std::move(s.R);
  out.iterations = 1;
  out.converged = true;
  out.grid = grid;
  out.l = qn.l;
  return out;
}

RadialSolution solve_selfconsistent(const SystemSpec& spec, const QuantumNumbers& qn, const GridSpec& grid,
                                    const SolveOptions& opts) {
  if (!is_relativistic(spec.equation)) {
    throw Error(ErrorCode::NotRelativistic, "fixed-point iteration applies to KG and Dirac only");
  }
  validate_system(spec);
  grid.validate();
  check_qn(qn, grid);
  const RadialProblem problem = radial_reduce(spec, qn.l);

  double e = opts.initial_energy.value_or(initial_energy(spec, qn));
  for (int it = 1; it <= opts.max_iter; ++it) {
    LinearSolve s = solve_sector(problem, e, qn.k, grid, opts.seed);
    const double e_raw = problem.energy_for(s.lambda);
    const double e_next = (1.0 - opts.relax) * e + opts.relax * e_raw;
    if (std::abs(e_next - e) <= opts.tol * spec.mass) {
      RadialSolution out;
      out.energy = e_next;
      out.eigenvector = std::move(s.R);
      out.iterations = it;
      out.converged = true;
      out.grid = grid;
      out.l = qn.l;
      return out;
    }
    e = e_next;
  }
  throw Error(ErrorCode::MaxIterExceeded,
              "no fixed point within " + std::to_string(opts.max_iter) + " iterations, last E = " + std::to_string(e));
}

RadialSolution solve_state(const SystemSpec& spec, const QuantumNumbers& qn, const GridSpec& grid,
                           const SolveOptions& opts) {
  return is_relativistic(spec.equation) ? solve_selfconsistent(spec, qn, grid, opts)
                                        : solve_linear(spec, qn, grid, opts);
}

double default_rmax(const SystemSpec& spec, const QuantumNumbers& qn) {
  validate_system(spec);
  const double mass = spec.mass;
  const double e = spectra::closed_form_energy(spec, qn);
  if (is_coulomb(spec.potential)) {
    const double beta = is_relativistic(spec.equation) ? std::sqrt(mass * mass - e * e) : std::sqrt(-2.0 * mass * e);
    return 40.0 / beta;
  }
  const double omega = std::get<Oscillator>(spec.potential).omega;
  const double c = is_relativistic(spec.equation) ? (mass + e) * 0.5 * mass * omega * omega
                                                  : mass * mass * omega * omega;
  return 10.0 / std::pow(c, 0.25);
}

double richardson(double e_h, double e_h2) noexcept { return (4.0 * e_h2 - e_h) / 3.0; }

ExtrapolatedLevel solve_extrapolated(const SystemSpec& spec, const QuantumNumbers& qn, const GridSpec& coarse,
                                     const SolveOptions& opts) {
  ExtrapolatedLevel out;
  out.coarse = solve_state(spec, qn, coarse, opts);
  SolveOptions fine_opts = opts;
  fine_opts.initial_energy = out.coarse.energy;
  out.fine = solve_state(spec, qn, GridSpec{2 * coarse.n_cells, coarse.r_max}, fine_opts);
  out.energy = richardson(out.coarse.energy, out.fine.energy);
  return out;
}

std::vector<std::complex<double>> dirac_lower_component(const std::vector<double>& upper, const GridSpec& grid, int l,
                                                        double M, double E) {
  const double denom = M + E;
  if (std::abs(denom) <= 64.0 * std::numeric_limits<double>::epsilon() * std::max(std::abs(M), std::abs(E))) {
    throw Error(ErrorCode::DegenerateEnergy, "M + E vanishes; the lower component is undefined");
  }
  const int n = static_cast<int>(upper.size());
  if (n != grid.n_cells) throw Error(ErrorCode::InvalidArgument, "upper component does not match the grid");
  const double h = grid.h();
  std::vector<std::complex<double>> lower(n);
  constexpr std::complex<double> I{0.0, 1.0};
  for (int i = 0; i < n; ++i) {
    double d;
    if (i == 0) {
      // R is smooth in r on [0, r_max], not across the origin: one-sided.
      d = (-3.0 * upper[0] + 4.0 * upper[1] - upper[2]) / (2.0 * h);
    } else {
      const double next = i + 1 < n ? upper[i + 1] : -upper[i];  // Dirichlet ghost
      d = (next - upper[i - 1]) / (2.0 * h);
    }
    lower[i] = -I * (d - l * upper[i] / grid.radius(i)) / denom;
  }
  return lower;
}

Field2D to_field(const RadialSolution& sol, int n_theta) {
  const PolarGrid g{Chart::XPlane, sol.grid.n_cells, n_theta, sol.grid.r_max, RadialLayout::CellCentered};
  g.validate();
  std::vector<cplx> radial(sol.eigenvector.begin(), sol.eigenvector.end());
  return Field2D::from_radial(g, radial, sol.l);
}

Spinor2D to_spinor(const RadialSolution& sol, double M, int n_theta) {
  Field2D upper = to_field(sol, n_theta);
  const auto lower_radial = dirac_lower_component(sol.eigenvector, sol.grid, sol.l, M, sol.energy);
  Field2D lower = Field2D::from_radial(upper.grid(), lower_radial, sol.l + 1);
  return Spinor2D(std::move(upper), std::move(lower));
}

std::vector<ScanResult> scan_states(const SystemSpec& spec, const std::vector<QuantumNumbers>& states, int n_cells,
                                    std::optional<double> r_max, bool extrapolate, const SolveOptions& opts) {
  std::vector<ScanResult> out(states.size());
  const int count = static_cast<int>(states.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (int s = 0; s < count; ++s) {
    ScanResult& res = out[s];
    res.qn = states[s];
    try {
      const GridSpec grid{n_cells, r_max ? *r_max : default_rmax(spec, states[s])};
      if (extrapolate) {
        ExtrapolatedLevel lvl = solve_extrapolated(spec, states[s], grid, opts);
        res.extrapolated = lvl.energy;
        res.solution = std::move(lvl.fine);
      } else {
        res.solution = solve_state(spec, states[s], grid, opts);
      }
    } catch (const std::exception& e) {
      res.error = e.what();
    }
  }
  return out;
}

}  // namespace lcdual::eigensolver
