#include "lcdual/levicivita.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>

#include "lcdual/summation.hpp"

namespace lcdual::levicivita {

XCoord lc_forward(UCoord u) noexcept { return {u.u1 * u.u1 - u.u2 * u.u2, 2.0 * u.u1 * u.u2}; }

UCoord lc_inverse(XCoord x) noexcept {
  // std::sqrt on complex returns the branch with Re >= 0; on the cut
  // (negative real axis) the sign of the zero imaginary part decides, so
  // normalize it to +0 to get Im >= 0.
  const double x2 = x.x2 == 0.0 ? 0.0 : x.x2;
  cplx tau = std::sqrt(cplx{x.x1, x2});
  if (tau.real() == 0.0 && tau.imag() < 0.0) tau = -tau;
  return {tau.real(), tau.imag()};
}

double jacobian_weight(UCoord u) noexcept { return 4.0 * (u.u1 * u.u1 + u.u2 * u.u2); }

namespace {

void check_pullback_grids(const PolarGrid& source, const PolarGrid& target) {
  source.validate();
  target.validate();
  if (source.chart != Chart::XPlane) throw Error(ErrorCode::InvalidGrid, "pullback source must be on the x-plane");
  if (target.chart != Chart::UPlane) throw Error(ErrorCode::InvalidGrid, "pullback target must be on the u-plane");
  const double needed = target.r_max * target.r_max;
  if (needed > source.r_max * (1.0 + 1e-12)) {
    throw Error(ErrorCode::DomainNotCovered, "target needs x-radius " + std::to_string(needed) + ", source covers " +
                                                 std::to_string(source.r_max));
  }
}

}  // namespace

Field2D pullback_scalar(const Field2D& f, const PolarGrid& target, const PullbackOptions& opts) {
  check_pullback_grids(f.grid(), target);
  Field2D out(target);
  kernels::pullback(f, target, opts.interpolation, kernels::Prefactor::None, out.values(), opts.exec);
  return out;
}

Spinor2D pullback_spinor(const Spinor2D& psi, const PolarGrid& target, const PullbackOptions& opts) {
  check_pullback_grids(psi.grid(), target);
  if (target.contains_origin()) throw Error(ErrorCode::OriginOnGrid, "tau / (2 u^2) is singular at u = 0");
  Field2D upper(target);
  Field2D lower(target);
  kernels::pullback(psi.upper(), target, opts.interpolation, kernels::Prefactor::HalfTauOverRhoSquared,
                    upper.values(), opts.exec);
  kernels::pullback(psi.lower(), target, opts.interpolation, kernels::Prefactor::None, lower.values(), opts.exec);
  return Spinor2D(std::move(upper), std::move(lower));
}

// ---------------------------------------------------------------------------

std::vector<UCoord> momentum_sample_points() {
  constexpr int kSide = 41;
  constexpr double kHalfWidth = 2.0;
  std::vector<UCoord> pts;
  for (int a = 0; a < kSide; ++a) {
    for (int b = 0; b < kSide; ++b) {
      const UCoord u{-kHalfWidth + 2.0 * kHalfWidth * a / (kSide - 1), -kHalfWidth + 2.0 * kHalfWidth * b / (kSide - 1)};
      if (std::hypot(u.u1, u.u2) >= 0.25) pts.push_back(u);
    }
  }
  return pts;
}

double momentum_identity_residual(const XField& f, double h, const std::vector<UCoord>& samples) {
  constexpr cplx I{0.0, 1.0};
  auto pulled = [&f](double u1, double u2) {
    const XCoord x = lc_forward({u1, u2});
    return f(x.x1, x.x2);
  };
  std::vector<double> diff_sq(samples.size());
  std::vector<double> rhs_sq(samples.size());
  for (std::size_t s = 0; s < samples.size(); ++s) {
    const auto [u1, u2] = samples[s];
    const cplx du1 = (pulled(u1 + h, u2) - pulled(u1 - h, u2)) / (2.0 * h);
    const cplx du2 = (pulled(u1, u2 + h) - pulled(u1, u2 - h)) / (2.0 * h);
    const cplx lhs = -I * (du1 - I * du2);

    const XCoord x = lc_forward({u1, u2});
    const cplx dx1 = (f(x.x1 + h, x.x2) - f(x.x1 - h, x.x2)) / (2.0 * h);
    const cplx dx2 = (f(x.x1, x.x2 + h) - f(x.x1, x.x2 - h)) / (2.0 * h);
    const cplx rhs = 2.0 * cplx{u1, u2} * (-I * (dx1 - I * dx2));

    diff_sq[s] = std::norm(lhs - rhs);
    rhs_sq[s] = std::norm(rhs);
  }
  const double denom = pairwise_sum(rhs_sq);
  if (denom == 0.0) throw Error(ErrorCode::ZeroField, "momentum of the test field vanishes on the sample set");
  return std::sqrt(pairwise_sum(diff_sq) / denom);
}

double momentum_identity_residual(const XField& f, double h) {
  return momentum_identity_residual(f, h, momentum_sample_points());
}

// ---------------------------------------------------------------------------

kernels::ScalarOperator nr_oscillator_operator(const OscillatorParams& p) noexcept {
  return {p.m * p.m * p.omega * p.omega, 2.0 * p.m * p.epsilon};
}

kernels::ScalarOperator kg_oscillator_operator(const OscillatorParams& p) noexcept {
  return {0.5 * p.m * p.omega * p.omega * (p.m + p.epsilon), p.epsilon * p.epsilon - p.m * p.m};
}

kernels::ScalarOperator kg_oscillator_operator(const HydrogenParams& p) noexcept {
  return {4.0 * (p.M - p.E) * (p.M + p.E), 4.0 * p.kappa * (p.M + p.E)};
}

kernels::DiracOperator dirac_oscillator_operator(const OscillatorParams& p, DiracForm form) noexcept {
  return {0.5 * p.m * p.omega * p.omega, p.m - p.epsilon, -(p.m + p.epsilon), form == DiracForm::ExactPullback};
}

kernels::DiracOperator dirac_oscillator_operator(const HydrogenParams& p, DiracForm form) noexcept {
  return {4.0 * (p.M - p.E), -4.0 * p.kappa, -(p.M + p.E), form == DiracForm::ExactPullback};
}

namespace {

/// Ring range excluding the innermost and outermost ring.
int interior_begin() { return 1; }
int interior_end(const PolarGrid& g) { return g.n_r - 1; }

}  // namespace

double scalar_operator_residual(const Field2D& g, const kernels::ScalarOperator& op, const ResidualOptions& opts) {
  const auto& grid = g.grid();
  grid.validate();
  if (grid.n_r < 3) throw Error(ErrorCode::InvalidGrid, "residual needs at least three rings");
  const double norm_g =
      kernels::weighted_sq_norm(g.values(), grid, interior_begin(), interior_end(grid), opts.exclude_below, opts.exec);
  if (!(norm_g > 0.0)) throw Error(ErrorCode::ZeroField, "field vanishes on the interior rings");

  std::vector<cplx> out(grid.size());
  kernels::apply_scalar_operator(g, op, out, opts.exec);
  const double norm_r =
      kernels::weighted_sq_norm(out, grid, interior_begin(), interior_end(grid), opts.exclude_below, opts.exec);
  return std::sqrt(norm_r / norm_g);
}

double kg_operator_residual(const Field2D& g, double m, double omega, double epsilon, const ResidualOptions& opts) {
  return scalar_operator_residual(g, kg_oscillator_operator(OscillatorParams{m, omega, epsilon}), opts);
}

SpinorResidual dirac_operator_residual(const Spinor2D& phi, const kernels::DiracOperator& op,
                                       const ResidualOptions& opts) {
  const auto& grid = phi.grid();
  grid.validate();
  if (grid.n_r < 3) throw Error(ErrorCode::InvalidGrid, "residual needs at least three rings");
  const int b = interior_begin();
  const int e = interior_end(grid);
  const double norm_phi = kernels::weighted_sq_norm(phi.upper().values(), grid, b, e, opts.exclude_below, opts.exec) +
                          kernels::weighted_sq_norm(phi.lower().values(), grid, b, e, opts.exclude_below, opts.exec);
  if (!(norm_phi > 0.0)) throw Error(ErrorCode::ZeroField, "spinor vanishes on the interior rings");

  std::vector<cplx> up(grid.size());
  std::vector<cplx> lo(grid.size());
  kernels::apply_dirac_operator(phi, op, up, lo, opts.exec);
  const double r_up = kernels::weighted_sq_norm(up, grid, b, e, opts.exclude_below, opts.exec);
  const double r_lo = kernels::weighted_sq_norm(lo, grid, b, e, opts.exclude_below, opts.exec);
  return {std::sqrt((r_up + r_lo) / norm_phi), std::sqrt(r_up / norm_phi), std::sqrt(r_lo / norm_phi)};
}

SpinorResidual dirac_operator_residual(const Spinor2D& phi, double m, double omega, double epsilon,
                                       const ResidualOptions& opts) {
  return dirac_operator_residual(phi, dirac_oscillator_operator(OscillatorParams{m, omega, epsilon}), opts);
}

// ---------------------------------------------------------------------------

namespace {

// FFTW planning is not thread-safe.
std::mutex& fftw_plan_mutex() {
  static std::mutex m;
  return m;
}

struct FftwBuffer {
  explicit FftwBuffer(std::size_t n) : data(static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * n))) {
    if (data == nullptr) throw std::bad_alloc();
  }
  ~FftwBuffer() { fftw_free(data); }
  FftwBuffer(const FftwBuffer&) = delete;
  FftwBuffer& operator=(const FftwBuffer&) = delete;
  fftw_complex* data;
};

}  // namespace

AngularContent angular_index(const Field2D& f) {
  const auto& grid = f.grid();
  const int n = grid.n_theta;
  const int rings = grid.n_r;
  FftwBuffer buf(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k) {
    buf.data[k][0] = f.values()[k].real();
    buf.data[k][1] = f.values()[k].imag();
  }
  {
    std::lock_guard lock(fftw_plan_mutex());
    // FFTW_ESTIMATE keeps the plan, and therefore the rounding, reproducible.
    fftw_plan plan = fftw_plan_many_dft(1, &n, rings, buf.data, nullptr, 1, n, buf.data, nullptr, 1, n, FFTW_FORWARD,
                                        FFTW_ESTIMATE);
    fftw_execute(plan);
    fftw_destroy_plan(plan);
  }

  std::vector<double> power(n, 0.0);
  std::vector<double> column(rings);
  for (int k = 0; k < n; ++k) {
    for (int i = 0; i < rings; ++i) {
      const auto& c = buf.data[grid.index(i, k)];
      column[i] = (c[0] * c[0] + c[1] * c[1]) * grid.radius(i);
    }
    power[k] = pairwise_sum(column);
  }
  const double total = pairwise_sum(power);
  if (!(total > 0.0)) throw Error(ErrorCode::ZeroField, "cannot measure the angular index of a zero field");

  auto signed_l = [n](int k) { return k <= n / 2 ? k : k - n; };
  const double best = *std::max_element(power.begin(), power.end());
  const double tie = best * (1.0 - 1e-12);
  int chosen = 0;
  bool have = false;
  for (int k = 0; k < n; ++k) {
    if (power[k] < tie) continue;
    const int l = signed_l(k);
    if (!have) {
      chosen = l;
      have = true;
      continue;
    }
    const bool better = (l >= 0 && chosen < 0) || ((l >= 0) == (chosen >= 0) && std::abs(l) < std::abs(chosen));
    if (better) chosen = l;
  }
  const int k_chosen = chosen >= 0 ? chosen : chosen + n;
  return {chosen, power[k_chosen] / total};
}

double norm_sq(const Field2D& f, Exec exec) {
  return kernels::weighted_sq_norm(f.values(), f.grid(), 0, f.grid().n_r, 0.0, exec);
}

double norm_sq_with_jacobian(const Field2D& g) {
  const auto& grid = g.grid();
  std::vector<double> rings(grid.n_r);
  std::vector<double> scratch(grid.n_theta);
  for (int i = 0; i < grid.n_r; ++i) {
    for (int j = 0; j < grid.n_theta; ++j) scratch[j] = std::norm(g(i, j));
    const double rho = grid.radius(i);
    // 4 rho^2 Jacobian, halved: u and -u cover each x once.
    rings[i] = pairwise_sum(scratch) * 2.0 * rho * rho * rho * grid.dr() * grid.dtheta();
  }
  return pairwise_sum(rings);
}

}  // namespace lcdual::levicivita
