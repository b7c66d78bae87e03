// Serial reference vs OpenMP kernels on a u-plane grid of n_r rings.

#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "lcdual/kernels.hpp"

using namespace lcdual;
using kernels::Exec;

namespace {

PolarGrid ugrid(int n_r) { return {Chart::UPlane, n_r, std::max(32, n_r / 8), 6.0, RadialLayout::CellCentered}; }

Field2D xfield(int n_r) {
  const PolarGrid g{Chart::XPlane, 4 * n_r, 2 * std::max(32, n_r / 8), 36.0, RadialLayout::CellCentered};
  return Field2D::sample(g, [](double r, double t) { return std::exp(-0.5 * r) * std::polar(1.0, t); });
}

Exec exec_of(const benchmark::State& s) { return s.range(1) == 0 ? Exec::Serial : Exec::Parallel; }

void BM_Pullback(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Field2D src = xfield(n);
  const PolarGrid dst = ugrid(n);
  std::vector<cplx> out(dst.size());
  for (auto _ : state) {
    kernels::pullback(src, dst, kernels::Interpolation::Bicubic, kernels::Prefactor::None, out, exec_of(state));
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long long>(dst.size()));
}

void BM_ScalarOperator(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Field2D g = Field2D::sample(ugrid(n), [](double r, double t) { return std::exp(-r * r) * std::polar(1.0, 2 * t); });
  std::vector<cplx> out(g.grid().size());
  for (auto _ : state) {
    kernels::apply_scalar_operator(g, {1.0, 2.0}, out, exec_of(state));
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long long>(out.size()));
}

void BM_DiracOperator(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const PolarGrid g = ugrid(n);
  const Field2D a = Field2D::sample(g, [](double r, double) { return cplx{std::exp(-r * r), 0.0}; });
  const Field2D b = Field2D::sample(g, [](double r, double t) { return r * std::exp(-r * r) * std::polar(1.0, t); });
  const Spinor2D phi(a, b);
  std::vector<cplx> up(g.size()), lo(g.size());
  for (auto _ : state) {
    kernels::apply_dirac_operator(phi, {0.75, -1.0, -3.0, true}, up, lo, exec_of(state));
    benchmark::DoNotOptimize(up.data());
    benchmark::DoNotOptimize(lo.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long long>(g.size()));
}

void BM_Norm(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const PolarGrid g = ugrid(n);
  const Field2D f = Field2D::sample(g, [](double r, double) { return cplx{std::exp(-r), 0.0}; });
  for (auto _ : state) {
    benchmark::DoNotOptimize(kernels::weighted_sq_norm(f.values(), g, 0, g.n_r, 0.0, exec_of(state)));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long long>(g.size()));
}

void sizes(benchmark::internal::Benchmark* b) {
  for (int n : {256, 1024, 2048}) {
    b->Args({n, 0});
    b->Args({n, 1});
  }
  b->ArgNames({"n_r", "omp"})->Unit(benchmark::kMillisecond);
}

}  // namespace

BENCHMARK(BM_Pullback)->Apply(sizes);
BENCHMARK(BM_ScalarOperator)->Apply(sizes);
BENCHMARK(BM_DiracOperator)->Apply(sizes);
BENCHMARK(BM_Norm)->Apply(sizes);

BENCHMARK_MAIN();
