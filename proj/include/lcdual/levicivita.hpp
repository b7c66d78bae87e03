#pragma once

// The Levi-Civita map x1 + i x2 = (u1 + i u2)^2, pullbacks of scalar fields
// and spinors from the x-plane to the u-plane, discrete operator residuals on
// the u-plane, and angular-index measurement.

#include <functional>
#include <vector>

#include "lcdual/field.hpp"
#include "lcdual/kernels.hpp"
#include "lcdual/model.hpp"

namespace lcdual::levicivita {

using kernels::Exec;
using kernels::Interpolation;

struct XCoord {
  double x1 = 0.0;
  double x2 = 0.0;
};

struct UCoord {
  double u1 = 0.0;
  double u2 = 0.0;
};

/// x1 = u1^2 - u2^2, x2 = 2 u1 u2; |x| = |u|^2.
XCoord lc_forward(UCoord u) noexcept;

/// Principal square root of x1 + i x2: Re tau > 0, or Re tau = 0 and Im tau >= 0.
/// The map is 2-to-1; u and -u share an image.
UCoord lc_inverse(XCoord x) noexcept;

/// Area element ratio dx = 4 |u|^2 du.
double jacobian_weight(UCoord u) noexcept;

struct PullbackOptions {
  // Residual operators take second differences of the result; bilinear
  // samples are only C0.
  Interpolation interpolation = Interpolation::Bicubic;
  Exec exec = Exec::Parallel;
};

/// g(u) = f(lc_forward(u)). `f` must live on the x-plane and cover the target:
/// target.r_max^2 <= f.grid().r_max (DomainNotCovered otherwise).
Field2D pullback_scalar(const Field2D& f, const PolarGrid& target, const PullbackOptions& opts = {});

/// Phi1 = tau / (2 |u|^2) Psi1(lc_forward(u)), Phi2 = Psi2(lc_forward(u)),
/// tau = u1 + i u2. Throws OriginOnGrid when the target samples u = 0.
Spinor2D pullback_spinor(const Spinor2D& psi, const PolarGrid& target, const PullbackOptions& opts = {});

/// Test field on the x-plane.
using XField = std::function<cplx(double x1, double x2)>;

/// Default sample set for the momentum identity: a 41 x 41 lattice on
/// [-2, 2]^2 in the u-plane with |u| < 0.25 removed.
std::vector<UCoord> momentum_sample_points();

/// || (p1u - i p2u)(f o lc) - 2 tau [(p1x - i p2x) f](lc(u)) ||_2 / || rhs ||_2
/// over `samples`, all derivatives by central differences with step h.
double momentum_identity_residual(const XField& f, double h, const std::vector<UCoord>& samples);
double momentum_identity_residual(const XField& f, double h);

// ---------------------------------------------------------------------------
// Oscillator-side operators

/// -Lap_u + m^2 omega^2 u^2 - 2 m eps: the non-relativistic oscillator
/// eigen-equation multiplied by 2m.
kernels::ScalarOperator nr_oscillator_operator(const OscillatorParams& p) noexcept;

/// -Lap_u + (1/2) m omega^2 (m + eps) u^2 - (eps^2 - m^2).
kernels::ScalarOperator kg_oscillator_operator(const OscillatorParams& p) noexcept;

/// Same operator written in hydrogen variables: 4(M^2 - E^2) u^2 - 4 kappa (M + E).
/// Valid even where the oscillator split has m <= 0.
kernels::ScalarOperator kg_oscillator_operator(const HydrogenParams& p) noexcept;

/// How the lower row acts on Phi1.
enum class DiracForm {
  /// [[m + m omega^2 u^2 / 2 - eps, p1u - i p2u], [p1u + i p2u, -m - eps]]
  OscillatorHamiltonian,
  /// Adds -2i tau Phi1 / |u|^2 to the lower row: the term produced when
  /// (p1x + i p2x) passes through the factor 2 conj(tau) relating Psi1 and Phi1.
  ExactPullback,
};

kernels::DiracOperator dirac_oscillator_operator(const OscillatorParams& p,
                                                 DiracForm form = DiracForm::OscillatorHamiltonian) noexcept;
kernels::DiracOperator dirac_oscillator_operator(const HydrogenParams& p,
                                                 DiracForm form = DiracForm::OscillatorHamiltonian) noexcept;

struct ResidualOptions {
  /// Rings with radius below this are excluded in addition to the innermost
  /// and outermost ring.
  double exclude_below = 0.0;
  Exec exec = Exec::Parallel;
};

/// ||op g|| / ||g|| over interior rings; ZeroField when g vanishes there.
double scalar_operator_residual(const Field2D& g, const kernels::ScalarOperator& op, const ResidualOptions& opts = {});

double kg_operator_residual(const Field2D& g, double m, double omega, double epsilon, const ResidualOptions& opts = {});

struct SpinorResidual {
  double joint = 0.0;  // ||(row1, row2)|| / ||(Phi1, Phi2)||
  double upper = 0.0;  // ||row1|| / ||(Phi1, Phi2)||
  double lower = 0.0;  // ||row2|| / ||(Phi1, Phi2)||
};

SpinorResidual dirac_operator_residual(const Spinor2D& phi, const kernels::DiracOperator& op,
                                       const ResidualOptions& opts = {});
SpinorResidual dirac_operator_residual(const Spinor2D& phi, double m, double omega, double epsilon,
                                       const ResidualOptions& opts = {});

// ---------------------------------------------------------------------------

struct AngularContent {
  int l = 0;
  double purity = 0.0;  // fraction of total power in harmonic l
};

/// FFT along theta on every ring, power aggregated with the area weight r dr.
/// Power ties go to the smallest non-negative l (then smallest |l|).
AngularContent angular_index(const Field2D& f);

/// sum |f|^2 r dr dtheta over all rings.
double norm_sq(const Field2D& f, Exec exec = Exec::Parallel);

/// (1/2) sum |g|^2 4 rho^2 rho drho dtheta: the x-plane norm of a u-plane field.
/// The u-plane covers the x-plane twice, hence the half.
double norm_sq_with_jacobian(const Field2D& g);

}  // namespace lcdual::levicivita
