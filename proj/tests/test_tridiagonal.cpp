#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "lcdual/tridiagonal.hpp"

using namespace lcdual;
using namespace lcdual::tridiagonal;
using doctest::Approx;

namespace {

SymTridiag toeplitz(int n, double d, double e) {
  return {std::vector<double>(n, d), std::vector<double>(n - 1, e)};
}

std::vector<double> apply(const SymTridiag& t, const std::vector<double>& v) {
  const int n = t.size();
  std::vector<double> out(n);
  for (int i = 0; i < n; ++i) {
    out[i] = t.diag[i] * v[i];
    if (i > 0) out[i] += t.off[i - 1] * v[i - 1];
    if (i + 1 < n) out[i] += t.off[i] * v[i + 1];
  }
  return out;
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace

TEST_CASE("2x2 example") {
  const SymTridiag t{{2.0, 2.0}, {-1.0}};
  CHECK(sturm_count(t, 0.5) == 0);
  CHECK(sturm_count(t, 2.0) == 1);
  CHECK(sturm_count(t, 3.5) == 2);
  CHECK(eigenvalue_by_index(t, 0) == Approx(1.0).epsilon(1e-13));
  CHECK(eigenvalue_by_index(t, 1) == Approx(3.0).epsilon(1e-13));
  const auto pairs = solve_linear_spectrum(t, 2);
  CHECK(std::abs(pairs.vectors[0][0]) == Approx(std::sqrt(0.5)).epsilon(1e-12));
  CHECK(pairs.vectors[0][0] * pairs.vectors[0][1] > 0.0);
  CHECK(pairs.vectors[1][0] * pairs.vectors[1][1] < 0.0);
}

TEST_CASE("Toeplitz spectrum matches the analytic eigenvalues") {
  const int n = 200;
  const auto t = toeplitz(n, 2.0, -1.0);
  const auto b = gershgorin_bounds(t);
  CHECK(b.lo == 0.0);
  CHECK(b.hi == 4.0);
  CHECK(inf_norm(t) == 4.0);
  for (int k = 0; k < n; k += 17) {
    const double exact = 2.0 - 2.0 * std::cos((k + 1) * std::numbers::pi / (n + 1));
    CHECK(eigenvalue_by_index(t, k) == Approx(exact).epsilon(1e-12).scale(1.0));
  }
}

TEST_CASE("index and count guards") {
  const auto t = toeplitz(5, 2.0, -1.0);
  CHECK_THROWS_AS(eigenvalue_by_index(t, 5), Error);
  CHECK_THROWS_AS(eigenvalue_by_index(t, -1), Error);
  try {
    solve_linear_spectrum(t, 6);
    FAIL("expected CountExceedsDimension");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::CountExceedsDimension);
  }
  CHECK(solve_linear_spectrum(t, 0).values.empty());
}

TEST_CASE("eigenpairs are orthonormal and satisfy T v = lambda v") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  SymTridiag t;
  const int n = 300;
  for (int i = 0; i < n; ++i) t.diag.push_back(4.0 * u(rng) + 0.01 * i);
  for (int i = 0; i + 1 < n; ++i) t.off.push_back(u(rng));
  const auto pairs = solve_linear_spectrum(t, 12);
  REQUIRE(pairs.values.size() == 12);
  for (int a = 0; a < 12; ++a) {
    if (a > 0) CHECK(pairs.values[a] >= pairs.values[a - 1]);
    const auto& v = pairs.vectors[a];
    CHECK(dot(v, v) == Approx(1.0).epsilon(1e-12));
    const auto tv = apply(t, v);
    double res = 0.0;
    for (int i = 0; i < n; ++i) res = std::max(res, std::abs(tv[i] - pairs.values[a] * v[i]));
    CHECK(res <= 1e-9 * inf_norm(t));
    for (int b = 0; b < a; ++b) CHECK(std::abs(dot(v, pairs.vectors[b])) <= 1e-9);
  }
}

TEST_CASE("fixed seed gives bitwise identical vectors") {
  const auto t = toeplitz(64, 2.0, -1.0);
  const auto a = solve_linear_spectrum(t, 4, 7);
  const auto b = solve_linear_spectrum(t, 4, 7);
  CHECK(a.values == b.values);
  CHECK(a.vectors == b.vectors);
  const auto v1 = inverse_iteration(t, a.values[0], 99);
  const auto v2 = inverse_iteration(t, a.values[0], 99);
  CHECK(v1 == v2);
}

TEST_CASE("sturm count is monotone in x") {
  const auto t = toeplitz(50, 2.0, -1.0);
  int prev = 0;
  for (double x = -0.5; x <= 4.5; x += 0.01) {
    const int c = sturm_count(t, x);
    CHECK(c >= prev);
    prev = c;
  }
  CHECK(prev == 50);
}
