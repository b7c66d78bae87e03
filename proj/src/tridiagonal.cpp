#include "lcdual/tridiagonal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>

#include "lcdual/summation.hpp"

namespace lcdual::tridiagonal {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

double pivmin(const SymTridiag& t) noexcept {
  double m = 1.0;
  for (double e : t.off) m = std::max(m, e * e);
  return std::numeric_limits<double>::min() * m;
}

// Uniform in [-1, 1) from the top 53 bits; std::uniform_real_distribution is
// not specified bit-for-bit across standard libraries.
double unit_sample(std::mt19937_64& rng) noexcept {
  return static_cast<double>(rng() >> 11) * 0x1.0p-52 - 1.0;
}

double norm2(const std::vector<double>& v) {
  std::vector<double> sq(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) sq[i] = v[i] * v[i];
  return std::sqrt(pairwise_sum(sq));
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  std::vector<double> p(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) p[i] = a[i] * b[i];
  return pairwise_sum(p);
}

// LU factorization of T - lambda with partial pivoting (LAPACK dgtsv layout):
// U has diagonal d, first superdiagonal du and second superdiagonal du2.
struct TridiagLU {
  std::vector<double> d, du, du2, l;
  std::vector<char> swapped;

  TridiagLU(const SymTridiag& t, double lambda, double tiny) {
    const int n = t.size();
    d.resize(n);
    du.assign(std::max(n - 1, 0), 0.0);
    du2.assign(std::max(n - 2, 0), 0.0);
    l.assign(std::max(n - 1, 0), 0.0);
    swapped.assign(std::max(n - 1, 0), 0);
    for (int i = 0; i < n; ++i) d[i] = t.diag[i] - lambda;
    std::vector<double> sub(t.off);
    for (int i = 0; i + 1 < n; ++i) du[i] = t.off[i];
    for (int i = 0; i + 1 < n; ++i) {
      if (std::abs(d[i]) >= std::abs(sub[i])) {
        if (d[i] == 0.0) d[i] = tiny;
        l[i] = sub[i] / d[i];
        d[i + 1] -= l[i] * du[i];
      } else {
        swapped[i] = 1;
        l[i] = d[i] / sub[i];
        d[i] = sub[i];
        const double tmp = d[i + 1];
        d[i + 1] = du[i] - l[i] * tmp;
        du[i] = tmp;
        if (i + 2 < n) {
          du2[i] = du[i + 1];
          du[i + 1] = -l[i] * du2[i];
        }
      }
    }
    if (n > 0 && d[n - 1] == 0.0) d[n - 1] = tiny;
  }

  void solve(std::vector<double>& b) const {
    const int n = static_cast<int>(d.size());
    for (int i = 0; i + 1 < n; ++i) {
      if (swapped[i]) {
        const double tmp = b[i];
        b[i] = b[i + 1];
        b[i + 1] = tmp - l[i] * b[i];
      } else {
        b[i + 1] -= l[i] * b[i];
      }
    }
    for (int i = n - 1; i >= 0; --i) {
      double s = b[i];
      if (i + 1 < n) s -= du[i] * b[i + 1];
      if (i + 2 < n) s -= du2[i] * b[i + 2];
      b[i] = s / d[i];
    }
  }
};

void fix_sign(std::vector<double>& v) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (std::abs(v[i]) > std::abs(v[best])) best = i;
  }
  if (!v.empty() && v[best] < 0.0) {
    for (double& x : v) x = -x;
  }
}

}  // namespace

int sturm_count(const SymTridiag& t, double x) noexcept {
  const double pm = pivmin(t);
  int count = 0;
  double d = 1.0;
  for (int i = 0; i < t.size(); ++i) {
    const double e2 = i == 0 ? 0.0 : t.off[i - 1] * t.off[i - 1];
    d = t.diag[i] - x - (i == 0 ? 0.0 : e2 / d);
    if (std::abs(d) < pm) d = -pm;
    if (d < 0.0) ++count;
  }
  return count;
}

Bounds gershgorin_bounds(const SymTridiag& t) noexcept {
  const int n = t.size();
  Bounds b{std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
  for (int i = 0; i < n; ++i) {
    const double radius = (i > 0 ? std::abs(t.off[i - 1]) : 0.0) + (i + 1 < n ? std::abs(t.off[i]) : 0.0);
    b.lo = std::min(b.lo, t.diag[i] - radius);
    b.hi = std::max(b.hi, t.diag[i] + radius);
  }
  return b;
}

double inf_norm(const SymTridiag& t) noexcept {
  const int n = t.size();
  double m = 0.0;
  for (int i = 0; i < n; ++i) {
    m = std::max(m, std::abs(t.diag[i]) + (i > 0 ? std::abs(t.off[i - 1]) : 0.0) +
                        (i + 1 < n ? std::abs(t.off[i]) : 0.0));
  }
  return m;
}

double eigenvalue_by_index(const SymTridiag& t, int index) {
  const int n = t.size();
  if (index < 0 || index >= n) {
    throw Error(ErrorCode::CountExceedsDimension,
                "eigenvalue index " + std::to_string(index) + " outside dimension " + std::to_string(n));
  }
  const Bounds g = gershgorin_bounds(t);
  const double slack = 2.0 * kEps * std::max(std::abs(g.lo), std::abs(g.hi)) + pivmin(t);
  double lo = g.lo - slack;
  double hi = g.hi + slack;
  // Invariant: count(lo) <= index < count(hi).
  const double abs_floor = kEps * inf_norm(t);
  for (int it = 0; it < 2000; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (hi - lo <= std::max(1e-13 * std::max(std::abs(lo), std::abs(hi)), abs_floor)) break;
    if (sturm_count(t, mid) > index) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return 0.5 * (lo + hi);
}

std::vector<double> inverse_iteration(const SymTridiag& t, double lambda, std::uint64_t seed, int iterations) {
  const int n = t.size();
  const double norm = std::max(inf_norm(t), std::numeric_limits<double>::min());
  const TridiagLU lu(t, lambda, kEps * norm);

  std::mt19937_64 rng(seed);
  std::vector<double> v(n);
  for (double& x : v) x = unit_sample(rng);
  for (int it = 0; it < iterations; ++it) {
    lu.solve(v);
    const double nv = norm2(v);
    if (!std::isfinite(nv) || nv == 0.0) {
      throw Error(ErrorCode::ConvergenceFailure, "inverse iteration produced a non-finite vector");
    }
    for (double& x : v) x /= nv;
  }

  // Stagnation check: the residual must be at the rounding level of T.
  std::vector<double> r(n);
  for (int i = 0; i < n; ++i) {
    double s = (t.diag[i] - lambda) * v[i];
    if (i > 0) s += t.off[i - 1] * v[i - 1];
    if (i + 1 < n) s += t.off[i] * v[i + 1];
    r[i] = s;
  }
  const double res = norm2(r);
  if (!(res <= 1e-8 * norm)) {
    throw Error(ErrorCode::ConvergenceFailure,
                "inverse iteration stagnated, residual " + std::to_string(res / norm) + " relative to ||T||");
  }
  return v;
}

EigenPairs solve_linear_spectrum(const SymTridiag& t, int count, std::uint64_t seed) {
  const int n = t.size();
  if (count > n) {
    throw Error(ErrorCode::CountExceedsDimension,
                "requested " + std::to_string(count) + " eigenpairs of a " + std::to_string(n) + "x" +
                    std::to_string(n) + " matrix");
  }
  if (count < 0) throw Error(ErrorCode::InvalidArgument, "negative eigenpair count");

  EigenPairs out;
  const double cluster = 1e-10 * std::max(inf_norm(t), 1.0);
  for (int k = 0; k < count; ++k) {
    const double lambda = eigenvalue_by_index(t, k);
    std::vector<double> v = inverse_iteration(t, lambda, seed + static_cast<std::uint64_t>(k));
    // Reorthogonalize inside a cluster of (numerically) equal eigenvalues.
    for (int j = k - 1; j >= 0 && lambda - out.values[j] < cluster; --j) {
      const double c = dot(v, out.vectors[j]);
      for (int i = 0; i < n; ++i) v[i] -= c * out.vectors[j][i];
    }
    const double nv = norm2(v);
    for (double& x : v) x /= nv;
    fix_sign(v);
    out.values.push_back(lambda);
    out.vectors.push_back(std::move(v));
  }
  return out;
}

}  // namespace lcdual::tridiagonal
