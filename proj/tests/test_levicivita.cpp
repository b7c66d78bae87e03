#include <cmath>
#include <cstring>
#include <functional>
#include <limits>
#include <numbers>
#include <random>

#include "doctest.h"
#include "lcdual/levicivita.hpp"

using namespace lcdual;
using namespace lcdual::levicivita;
using doctest::Approx;

namespace {

constexpr cplx I{0.0, 1.0};

template <class F>
ErrorCode code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an lcdual::Error");
  return ErrorCode::InvalidArgument;
}

PolarGrid xgrid(int n_r, int n_theta, double r_max) {
  return {Chart::XPlane, n_r, n_theta, r_max, RadialLayout::CellCentered};
}
PolarGrid ugrid(int n_r, int n_theta, double r_max) {
  return {Chart::UPlane, n_r, n_theta, r_max, RadialLayout::CellCentered};
}

double max_abs_diff(const Field2D& a, const std::function<cplx(double, double)>& f) {
  double m = 0.0;
  const auto& g = a.grid();
  for (int i = 0; i < g.n_r; ++i) {
    for (int j = 0; j < g.n_theta; ++j) m = std::max(m, std::abs(a(i, j) - f(g.radius(i), g.theta(j))));
  }
  return m;
}

}  // namespace

TEST_CASE("lc_forward examples") {
  const auto a = lc_forward({1.0, 0.0});
  CHECK(a.x1 == 1.0);
  CHECK(a.x2 == 0.0);
  const auto b = lc_forward({1.0, 1.0});
  CHECK(b.x1 == 0.0);
  CHECK(b.x2 == 2.0);
  CHECK(std::hypot(b.x1, b.x2) == 2.0);
  const auto c = lc_forward({0.0, 1.0});
  CHECK(c.x1 == -1.0);
  CHECK(c.x2 == 0.0);
}

TEST_CASE("lc_inverse examples and branch") {
  const auto a = lc_inverse({0.0, 2.0});
  CHECK(a.u1 == Approx(1.0).epsilon(1e-15));
  CHECK(a.u2 == Approx(1.0).epsilon(1e-15));
  const auto b = lc_inverse({-1.0, 0.0});
  CHECK(b.u1 == 0.0);
  CHECK(b.u2 == 1.0);
  const auto b2 = lc_inverse({-1.0, -0.0});
  CHECK(b2.u2 == 1.0);
  const auto c = lc_inverse({1.0, 0.0});
  CHECK(c.u1 == 1.0);
  CHECK(c.u2 == 0.0);
}

TEST_CASE("lc round trips and modulus identity") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  for (int i = 0; i < 2000; ++i) {
    const UCoord p{u(rng), u(rng)};
    const XCoord x = lc_forward(p);
    const double r2 = p.u1 * p.u1 + p.u2 * p.u2;
    CHECK(std::hypot(x.x1, x.x2) == Approx(r2).epsilon(4 * std::numeric_limits<double>::epsilon()));

    const UCoord q = lc_inverse(x);
    const bool same = std::abs(q.u1 - p.u1) <= 1e-14 * (1 + std::abs(p.u1)) &&
                      std::abs(q.u2 - p.u2) <= 1e-14 * (1 + std::abs(p.u2));
    const bool flipped = std::abs(q.u1 + p.u1) <= 1e-14 * (1 + std::abs(p.u1)) &&
                         std::abs(q.u2 + p.u2) <= 1e-14 * (1 + std::abs(p.u2));
    CHECK((same || flipped));
    CHECK((q.u1 > 0.0 || (q.u1 == 0.0 && q.u2 >= 0.0)));

    const XCoord y{u(rng), u(rng)};
    const XCoord back = lc_forward(lc_inverse(y));
    CHECK(back.x1 == Approx(y.x1).epsilon(1e-14).scale(5.0));
    CHECK(back.x2 == Approx(y.x2).epsilon(1e-14).scale(5.0));
  }
  CHECK(jacobian_weight({0.0, 0.0}) == 0.0);
  CHECK(jacobian_weight({1.0, 1.0}) == 8.0);
}

TEST_CASE("pullback of simple fields") {
  const PolarGrid src = xgrid(400, 64, 4.0);
  const PolarGrid dst = ugrid(60, 32, 2.0);

  const Field2D one = Field2D::sample(src, [](double, double) { return cplx{1.0, 0.0}; });
  CHECK(max_abs_diff(pullback_scalar(one, dst), [](double, double) { return cplx{1.0, 0.0}; }) <= 1e-14);

  const Field2D phase = Field2D::sample(src, [](double, double t) { return std::polar(1.0, t); });
  CHECK(max_abs_diff(pullback_scalar(phase, dst), [](double, double t) { return std::polar(1.0, 2 * t); }) <= 1e-14);

  // x1 + i x2 = r e^{i theta} pulls back to (u1 + i u2)^2; linear in r, so the
  // cubic radial stencil reproduces it to rounding.
  const Field2D z = Field2D::sample(src, [](double r, double t) { return std::polar(r, t); });
  CHECK(max_abs_diff(pullback_scalar(z, dst), [](double r, double t) { return std::polar(r * r, 2 * t); }) <= 1e-13);

  // Bilinear is exact for the same field.
  PullbackOptions bilinear;
  bilinear.interpolation = Interpolation::Bilinear;
  CHECK(max_abs_diff(pullback_scalar(z, dst, bilinear), [](double r, double t) { return std::polar(r * r, 2 * t); }) <=
        1e-13);
}

TEST_CASE("pullback preconditions") {
  const Field2D f(xgrid(10, 8, 4.0));
  CHECK(code_of([&] { pullback_scalar(f, ugrid(10, 8, 2.1)); }) == ErrorCode::DomainNotCovered);
  CHECK_NOTHROW(pullback_scalar(f, ugrid(10, 8, 2.0)));
  CHECK(code_of([&] { pullback_scalar(f, xgrid(10, 8, 1.0)); }) == ErrorCode::InvalidGrid);
  CHECK(code_of([&] { pullback_scalar(Field2D(ugrid(10, 8, 4.0)), ugrid(10, 8, 1.0)); }) == ErrorCode::InvalidGrid);

  const Spinor2D psi(f, f);
  const PolarGrid nodal{Chart::UPlane, 10, 8, 1.0, RadialLayout::Nodal};
  CHECK(code_of([&] { pullback_spinor(psi, nodal); }) == ErrorCode::OriginOnGrid);
}

TEST_CASE("spinor pullback values") {
  const PolarGrid src = xgrid(200, 64, 4.0);
  const Field2D c = Field2D::sample(src, [](double, double) { return cplx{3.0, 0.0}; });
  const Field2D lower = Field2D::sample(src, [](double r, double t) { return std::polar(std::exp(-r), 2 * t); });
  const PolarGrid dst = ugrid(40, 32, 2.0);
  const Spinor2D phi = pullback_spinor(Spinor2D(c, lower), dst);
  // Constant upper component: Phi1 = c e^{i theta_u} / (2 u).
  CHECK(max_abs_diff(phi.upper(), [](double r, double t) { return 3.0 * std::polar(1.0, t) / (2.0 * r); }) <= 1e-12);
  CHECK(angular_index(phi.upper()).l == 1);
  CHECK(angular_index(phi.lower()).l == 4);

  // Point checks at u = (1, 0) and u = (0, 1): ring with radius 1, theta 0 and pi/2.
  const PolarGrid unit{Chart::UPlane, 2, 4, 2.0, RadialLayout::CellCentered};  // radii 0.5, 1.5
  const PolarGrid srcp = xgrid(400, 64, 4.0);
  const Field2D psi1 = Field2D::sample(srcp, [](double r, double t) { return std::polar(1.0 + r, t); });
  const Spinor2D p2 = pullback_spinor(Spinor2D(psi1, psi1), unit);
  // u = (1.5, 0): tau = 1.5, x = (2.25, 0).
  CHECK(std::abs(p2.upper()(1, 0) - 1.5 / (2 * 2.25) * cplx{3.25, 0.0}) <= 1e-8);
  CHECK(std::abs(p2.lower()(1, 0) - cplx{3.25, 0.0}) <= 1e-8);
  // u = (0, 1.5): tau = 1.5 i, x = (-2.25, 0).
  CHECK(std::abs(p2.upper()(1, 1) - 1.5 * I / (2 * 2.25) * std::polar(3.25, std::numbers::pi)) <= 1e-8);
}

TEST_CASE("norm preservation with the Jacobian weight") {
  auto f = [](double r, double t) { return std::exp(-0.5 * r) * (1.0 + 0.3 * std::cos(t)) * cplx{1.0, 0.2}; };
  double prev_err = 1.0;
  for (int n : {200, 400, 800}) {
    const PolarGrid src = xgrid(4 * n, 128, 64.0);
    const Field2D fx = Field2D::sample(src, f);
    const Field2D g = pullback_scalar(fx, ugrid(n, 64, 8.0));
    const double err = std::abs(norm_sq_with_jacobian(g) / norm_sq(fx) - 1.0);
    if (prev_err < 1.0) CHECK(prev_err / err == Approx(4.0).epsilon(0.1));
    prev_err = err;
  }
  CHECK(prev_err < 1e-4);
}

TEST_CASE("angular index") {
  const PolarGrid g = ugrid(20, 32, 3.0);
  const auto a = angular_index(Field2D::sample(g, [](double r, double t) { return std::exp(-r) * std::polar(1.0, 3 * t); }));
  CHECK(a.l == 3);
  CHECK(a.purity == Approx(1.0).epsilon(1e-12));
  const auto b = angular_index(Field2D::sample(g, [](double r, double t) { return r * std::polar(1.0, -2 * t); }));
  CHECK(b.l == -2);
  const auto c = angular_index(Field2D::sample(g, [](double, double t) { return cplx{2.0 * std::cos(t), 0.0}; }));
  CHECK(c.l == 1);
  CHECK(c.purity == Approx(0.5).epsilon(1e-12));
  CHECK(code_of([&] { angular_index(Field2D(g)); }) == ErrorCode::ZeroField);

  const PolarGrid src = xgrid(300, 64, 9.0);
  const Field2D f = Field2D::sample(src, [](double r, double t) { return std::exp(-r) * r * std::polar(1.0, t); });
  const auto d = angular_index(pullback_scalar(f, ugrid(50, 32, 3.0)));
  CHECK(d.l == 2);
  CHECK(d.purity == Approx(1.0).epsilon(1e-12));
}

TEST_CASE("momentum identity") {
  const auto x1 = [](double a, double) { return cplx{a, 0.0}; };
  const auto x2 = [](double, double b) { return cplx{b, 0.0}; };
  CHECK(momentum_identity_residual(x1, 1e-2) <= 1e-12);
  CHECK(momentum_identity_residual(x2, 1e-2) <= 1e-12);
  const auto gauss = [](double a, double b) { return cplx{std::exp(-((a - 2) * (a - 2) + b * b)), 0.0}; };
  const double r1 = momentum_identity_residual(gauss, 1e-2);
  const double r2 = momentum_identity_residual(gauss, 5e-3);
  CHECK(r1 > 0.0);
  CHECK(r1 / r2 >= 3.5);
  CHECK(r1 / r2 <= 4.5);
  const auto pts = momentum_sample_points();
  CHECK(pts.size() == 41 * 41 - 21);
  for (const auto& p : pts) CHECK(std::hypot(p.u1, p.u2) >= 0.25);
}

TEST_CASE("scalar residual: exact oscillator eigenfunctions converge at second order") {
  // exp(-a u^2 / 2) u^|l| e^{i l theta} solves -Lap g + a^2 u^2 g = 2a(|l| + 1) g.
  const double a = 1.3;
  const kernels::ScalarOperator op{a * a, 2.0 * a * 2.0};
  double prev = 0.0;
  for (int n : {64, 128, 256}) {
    const PolarGrid g = ugrid(n, n, 7.0);
    const Field2D f = Field2D::sample(g, [a](double r, double t) { return std::exp(-0.5 * a * r * r) * r * std::polar(1.0, t); });
    const double res = scalar_operator_residual(f, op);
    if (prev > 0.0) CHECK(prev / res == Approx(4.0).epsilon(0.15));
    prev = res;
  }
  CHECK(prev < 1e-2);
  CHECK(code_of([] { scalar_operator_residual(Field2D(ugrid(8, 8, 1.0)), {}); }) == ErrorCode::ZeroField);
}

TEST_CASE("scalar residual grows linearly under an energy perturbation") {
  const double a = 1.0;
  const PolarGrid g = ugrid(200, 32, 7.0);
  const Field2D f = Field2D::sample(g, [a](double r, double) { return cplx{std::exp(-0.5 * a * r * r), 0.0}; });
  const double base = scalar_operator_residual(f, {a * a, 2.0 * a});
  const double d1 = scalar_operator_residual(f, {a * a, 2.0 * a + 0.1});
  const double d2 = scalar_operator_residual(f, {a * a, 2.0 * a + 0.2});
  CHECK(base < 1e-2);
  CHECK(d1 == Approx(0.1).epsilon(0.05));
  CHECK(d2 / d1 == Approx(2.0).epsilon(0.1));
}

TEST_CASE("operator factories") {
  const OscillatorParams p{1.0, std::sqrt(1.5), 2.0};
  const auto nr = nr_oscillator_operator(p);
  CHECK(nr.confinement == Approx(1.5));
  CHECK(nr.shift == 4.0);
  const auto kg = kg_oscillator_operator(p);
  CHECK(kg.confinement == Approx(0.5 * 1.5 * 3.0));
  CHECK(kg.shift == 3.0);
  // The hydrogen-variable form agrees where both exist.
  const HydrogenParams h{1.59375, 1.40625, 0.25};
  const auto kgh = kg_oscillator_operator(h);
  CHECK(kgh.confinement == Approx(kg.confinement).epsilon(1e-14));
  CHECK(kgh.shift == Approx(kg.shift).epsilon(1e-14));
  const auto d = dirac_oscillator_operator(p);
  const auto dh = dirac_oscillator_operator(h);
  CHECK(dh.confinement == Approx(d.confinement).epsilon(1e-14));
  CHECK(dh.upper_shift == Approx(d.upper_shift).epsilon(1e-14));
  CHECK(dh.lower_shift == Approx(d.lower_shift).epsilon(1e-14));
  CHECK_FALSE(d.measure_term);
  CHECK(dirac_oscillator_operator(p, DiracForm::ExactPullback).measure_term);
}

TEST_CASE("Dirac oscillator operator annihilates its exact eigen-spinor") {
  // With Phi2 = (p1 + i p2) Phi1 / (m + eps), the upper row reduces to the
  // scalar oscillator; Phi1 = exp(-b u^2 / 2) with b^2 = (m + eps) m omega^2 / 2
  // and eps^2 - m^2 = 2b gives an exact solution: Phi2 = i b u e^{i theta} Phi1 / (m + eps).
  const double m = 1.0, omega = std::sqrt(1.5), eps = 2.0;
  const double b = std::sqrt((m + eps) * 0.5 * m * omega * omega);
  REQUIRE(eps * eps - m * m == Approx(2.0 * b));
  double prev = 0.0;
  for (int n : {64, 128, 256}) {
    const PolarGrid g = ugrid(n, n, 6.0);
    const Field2D up = Field2D::sample(g, [b](double r, double) { return cplx{std::exp(-0.5 * b * r * r), 0.0}; });
    const Field2D lo = Field2D::sample(g, [=](double r, double t) {
      return I * b * r * std::polar(1.0, t) * std::exp(-0.5 * b * r * r) / (m + eps);
    });
    const auto res = dirac_operator_residual(Spinor2D(up, lo), m, omega, eps);
    if (prev > 0.0) CHECK(prev / res.joint == Approx(4.0).epsilon(0.15));
    prev = res.joint;
  }
  CHECK(prev < 1e-3);

  const PolarGrid g = ugrid(256, 256, 6.0);
  const Field2D up = Field2D::sample(g, [b](double r, double) { return cplx{std::exp(-0.5 * b * r * r), 0.0}; });
  const Field2D lo = Field2D::sample(g, [=](double r, double t) {
    return I * b * r * std::polar(1.0, t) * std::exp(-0.5 * b * r * r) / (m + eps);
  });
  const Spinor2D phi(up, lo);
  const double base = dirac_operator_residual(phi, m, omega, eps).joint;
  const double shifted = dirac_operator_residual(phi, m, omega, eps + 1.0).joint;
  CHECK(shifted == Approx(1.0).epsilon(0.01));
  CHECK(base < 1e-3);

  // Zero upper component, Gaussian lower: plainly nonzero.
  const Field2D zero(g);
  CHECK(dirac_operator_residual(Spinor2D(zero, up), m, omega, eps).joint > 0.1);
  CHECK(code_of([&] { dirac_operator_residual(Spinor2D(zero, zero), m, omega, eps); }) == ErrorCode::ZeroField);
}

TEST_CASE("serial and parallel residuals agree bitwise") {
  const PolarGrid g = ugrid(150, 32, 5.0);
  const Field2D f = Field2D::sample(g, [](double r, double t) { return std::exp(-r * r) * std::polar(1.0, 2 * t); });
  ResidualOptions s{0.0, Exec::Serial};
  ResidualOptions p{0.0, Exec::Parallel};
  const double a = scalar_operator_residual(f, {1.0, 2.0}, s);
  const double b = scalar_operator_residual(f, {1.0, 2.0}, p);
  CHECK(std::memcmp(&a, &b, sizeof a) == 0);
}
