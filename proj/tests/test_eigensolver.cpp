#include <cmath>
#include <cstring>

#include "doctest.h"
#include "lcdual/eigensolver.hpp"
#include "lcdual/spectra.hpp"

using namespace lcdual;
using namespace lcdual::eigensolver;
using doctest::Approx;

namespace {

SystemSpec system(EquationKind eq, PotentialSpec pot, double mass) { return validate_system({eq, pot, mass}); }

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

double bessel_zero(int l, int n) {
  // n-th positive zero of J_l by scanning and bisection.
  int found = 0;
  double a = 0.5, fa = std::cyl_bessel_j(l, a);
  for (double b = a + 0.05;; b += 0.05) {
    const double fb = std::cyl_bessel_j(l, b);
    if (fa * fb < 0.0) {
      if (++found == n) {
        double lo = b - 0.05, hi = b;
        for (int i = 0; i < 200; ++i) {
          const double mid = 0.5 * (lo + hi);
          if (std::cyl_bessel_j(l, lo) * std::cyl_bessel_j(l, mid) <= 0.0) hi = mid; else lo = mid;
        }
        return 0.5 * (lo + hi);
      }
    }
    fa = fb;
  }
}

double norm(const RadialSolution& s) {
  double acc = 0.0;
  for (int i = 0; i < s.grid.n_cells; ++i) acc += s.eigenvector[i] * s.eigenvector[i] * s.grid.radius(i) * s.grid.h();
  return acc;
}

}  // namespace

TEST_CASE("radial reduction") {
  const auto nr = radial_reduce(system(EquationKind::Schroedinger, Coulomb{1.0}, 1.0), 1);
  CHECK(nr.target == Target::TwoMuE);
  CHECK_FALSE(nr.energy_dependent);
  CHECK(nr.potential(2.0, 0.0) == -1.0);
  CHECK(nr.eigenvalue_for(-2.0) == -4.0);
  CHECK(nr.energy_for(-4.0) == -2.0);

  const auto kg = radial_reduce(system(EquationKind::KleinGordon, Coulomb{0.5}, 1.0), 0);
  CHECK(kg.target == Target::EnergySquaredGap);
  CHECK(kg.potential(1.0, 0.6) == Approx(-0.8));
  CHECK(kg.eigenvalue_for(0.6) == Approx(-0.64));
  CHECK(kg.energy_for(-0.64) == Approx(0.6));
  CHECK(code_of([&] { kg.energy_for(-1.5); }) == ErrorCode::NegativeDiscriminant);

  const auto osc = radial_reduce(system(EquationKind::KleinGordon, Oscillator{std::sqrt(1.5)}, 1.0), 0);
  CHECK(osc.potential(2.0, 2.0) == Approx(3.0 * 0.75 * 4.0));
  const auto nro = radial_reduce(system(EquationKind::Schroedinger, Oscillator{2.0}, 0.5), 0);
  CHECK(nro.potential(1.0, 0.0) == 1.0);
}

TEST_CASE("discretization is symmetric with positive free spectrum") {
  const auto p = radial_reduce(system(EquationKind::Schroedinger, Oscillator{0.0}, 0.5), 2);
  const GridSpec g{64, 1.0};
  const auto t = discretize(p, 0.0, g);
  CHECK(t.size() == 64);
  CHECK(t.off.size() == 63);
  const auto b = tridiagonal::gershgorin_bounds(t);
  CHECK(tridiagonal::eigenvalue_by_index(t, 0) > 0.0);
  CHECK(b.hi > 0.0);
  CHECK(code_of([] { GridSpec{8, 1.0}.validate(); }) == ErrorCode::InvalidGrid);
  CHECK(code_of([] { GridSpec{64, 0.0}.validate(); }) == ErrorCode::InvalidGrid);
}

TEST_CASE("free disk matches Bessel zeros at second order") {
  const auto spec = system(EquationKind::Schroedinger, Oscillator{0.0}, 0.5);
  for (int l : {0, 1, 3}) {
    for (int k : {0, 1}) {
      const double exact = std::pow(bessel_zero(l, k + 1), 2);
      double prev = 0.0;
      for (int n : {256, 512, 1024}) {
        const double e = solve_linear(spec, {k, l}, {n, 1.0}).energy;
        const double err = std::abs(e - exact);
        if (prev > 0.0) CHECK(prev / err == Approx(4.0).epsilon(0.05));
        prev = err;
      }
      CHECK(prev / exact < 1e-4);
    }
  }
}

TEST_CASE("non-relativistic oscillator and hydrogen") {
  const auto osc = system(EquationKind::Schroedinger, Oscillator{1.0}, 1.0);
  const auto a = solve_linear(osc, {0, 0}, {4096, 12.0});
  CHECK(a.energy == Approx(1.0).epsilon(1e-6));
  CHECK(norm(a) == Approx(1.0).epsilon(1e-12));
  const auto b = solve_linear(osc, {0, 0}, {2048, 12.0});
  const auto c = solve_linear(osc, {0, 0}, {8192, 12.0});
  const double ratio = (b.energy - 1.0) / (a.energy - 1.0);
  CHECK(ratio >= 3.5);
  CHECK(ratio <= 4.5);
  CHECK(std::abs(richardson(a.energy, c.energy) - 1.0) < 1e-9);

  const auto hyd = system(EquationKind::Schroedinger, Coulomb{1.0}, 1.0);
  const auto x = solve_extrapolated(hyd, {0, 0}, {2048, default_rmax(hyd, {0, 0})});
  CHECK(x.energy == Approx(-2.0).epsilon(1e-8));
  CHECK(x.fine.grid.n_cells == 4096);
  CHECK(x.coarse.grid.r_max == x.fine.grid.r_max);
  for (int l : {-1, 1}) {
    const auto y = solve_extrapolated(hyd, {1, l}, {2048, default_rmax(hyd, {1, l})});
    CHECK(y.energy == Approx(spectra::closed_form_energy(hyd, {1, l})).epsilon(1e-8));
  }
}

TEST_CASE("Richardson formula") {
  CHECK(richardson(1.0, 1.0) == 1.0);
  CHECK(richardson(1.04, 1.01) == Approx(1.0).epsilon(1e-14));
  CHECK(richardson(0.0, 3.0) == 4.0);
}

TEST_CASE("default rmax") {
  const auto hyd = system(EquationKind::Schroedinger, Coulomb{1.0}, 1.0);
  CHECK(default_rmax(hyd, {0, 0}) == Approx(20.0));
  const auto osc = system(EquationKind::Schroedinger, Oscillator{1.0}, 1.0);
  CHECK(default_rmax(osc, {0, 0}) == Approx(10.0));
  const auto kg = system(EquationKind::KleinGordon, Coulomb{0.5}, 1.0);
  CHECK(default_rmax(kg, {0, 0}) == Approx(50.0));
}

TEST_CASE("Klein-Gordon and Dirac levels") {
  const auto kg = system(EquationKind::KleinGordon, Coulomb{0.5}, 1.0);
  const auto dirac = system(EquationKind::Dirac, Coulomb{0.5}, 1.0);
  const GridSpec g{2048, default_rmax(kg, {0, 0})};
  const auto a = solve_state(kg, {0, 0}, g);
  const auto b = solve_state(dirac, {0, 0}, g);
  CHECK(std::memcmp(&a.energy, &b.energy, sizeof(double)) == 0);
  CHECK(a.eigenvector == b.eigenvector);
  CHECK(a.energy == Approx(0.6).epsilon(1e-4));
  CHECK(a.converged);
  CHECK(a.iterations <= 50);
  CHECK(norm(a) == Approx(1.0).epsilon(1e-12));
  const auto x = solve_extrapolated(kg, {0, 0}, g);
  CHECK(x.energy == Approx(0.6).epsilon(1e-8));

  const auto osc = system(EquationKind::KleinGordon, Oscillator{std::sqrt(1.5)}, 1.0);
  const auto o = solve_extrapolated(osc, {0, 0}, {2048, default_rmax(osc, {0, 0})});
  CHECK(o.energy == Approx(2.0).epsilon(1e-8));
  CHECK(o.fine.iterations <= 50);
}

TEST_CASE("solver errors") {
  const auto nr = system(EquationKind::Schroedinger, Coulomb{1.0}, 1.0);
  CHECK(code_of([&] { solve_selfconsistent(nr, {0, 0}, {256, 20.0}); }) == ErrorCode::NotRelativistic);
  const auto kg = system(EquationKind::KleinGordon, Coulomb{0.5}, 1.0);
  SolveOptions one;
  one.max_iter = 1;
  CHECK(code_of([&] { solve_selfconsistent(kg, {0, 0}, {256, 50.0}, one); }) == ErrorCode::MaxIterExceeded);
  CHECK(code_of([&] { solve_linear(nr, {-1, 0}, {256, 20.0}); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([&] { solve_linear(nr, {300, 0}, {256, 20.0}); }) == ErrorCode::CountExceedsDimension);
}

TEST_CASE("Dirac lower component") {
  GridSpec g{256, 6.0};
  std::vector<double> zero(g.n_cells, 0.0);
  for (const auto& v : dirac_lower_component(zero, g, 0, 1.0, 0.5)) CHECK(v == std::complex<double>{});

  double prev = 0.0;
  for (int n : {256, 512, 1024}) {
    g.n_cells = n;
    std::vector<double> R(n);
    for (int i = 0; i < n; ++i) R[i] = std::exp(-g.radius(i) * g.radius(i));
    const auto G = dirac_lower_component(R, g, 0, 1.0, 0.5);
    double err = 0.0;
    for (int i = 0; i < n; ++i) {
      const double r = g.radius(i);
      const std::complex<double> exact{0.0, 2.0 * r * std::exp(-r * r) / 1.5};
      err = std::max(err, std::abs(G[i] - exact));
    }
    if (prev > 0.0) CHECK(prev / err == Approx(4.0).epsilon(0.1));
    prev = err;
  }
  CHECK(code_of([&] { dirac_lower_component(zero, GridSpec{16, 1.0}, 0, 1.0, -1.0); }) == ErrorCode::DegenerateEnergy);
}

TEST_CASE("fields from radial solutions") {
  const auto kg = system(EquationKind::Dirac, Coulomb{0.5}, 1.0);
  const auto s = solve_state(kg, {0, 0}, {256, 50.0});
  const Field2D f = to_field(s, 16);
  CHECK(f.grid().chart == Chart::XPlane);
  CHECK(f.grid().n_r == 256);
  CHECK(f(3, 0).real() == s.eigenvector[3]);
  const Spinor2D sp = to_spinor(s, 1.0, 16);
  CHECK(sp.upper()(3, 4) == f(3, 4));
  CHECK(std::abs(sp.lower()(3, 0)) > 0.0);
}

TEST_CASE("scan keeps order, captures errors and matches serial solves") {
  const auto hyd = system(EquationKind::Schroedinger, Coulomb{1.0}, 1.0);
  const std::vector<QuantumNumbers> states{{0, 0}, {1, -1}, {-1, 0}, {0, 2}};
  const auto res = scan_states(hyd, states, 512, std::nullopt, true);
  REQUIRE(res.size() == 4);
  for (std::size_t i = 0; i < states.size(); ++i) CHECK(res[i].qn == states[i]);
  CHECK(res[2].error.find("InvalidArgument") == 0);
  CHECK_FALSE(res[2].solution.has_value());
  const auto ref = solve_extrapolated(hyd, {1, -1}, {512, default_rmax(hyd, {1, -1})});
  CHECK(*res[1].extrapolated == ref.energy);
  CHECK(res[1].solution->energy == ref.fine.energy);
}
