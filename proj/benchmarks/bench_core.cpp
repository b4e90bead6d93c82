#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "tubestab/numerics.hpp"
#include "tubestab/pde_sim.hpp"
#include "tubestab/spectral.hpp"

using namespace tubestab;

namespace {

const ReactorParams kParams = ReactorParams::experiment_defaults();

void BM_FindRoot(benchmark::State& state) {
  auto f = [](double x) { return std::cos(x) - x; };
  for (auto _ : state) {
    benchmark::DoNotOptimize(find_root(f, Bracket::make(f, 0.0, 1.0)));
  }
}
BENCHMARK(BM_FindRoot);

void BM_TridiagonalSolve(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const std::vector<double> lower(n - 1, -1.0), upper(n - 1, -1.0), diag(n, 4.0), rhs(n, 1.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_tridiagonal(lower, diag, upper, rhs));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_TridiagonalSolve)->RangeMultiplier(4)->Range(64, 16384)->Complexity(benchmark::oN);

void BM_PrincipalEigenvalue(benchmark::State& state) {
  const double alpha = static_cast<double>(state.range(0)) / 100.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(principal_eigenvalue(kParams, alpha));
  }
}
BENCHMARK(BM_PrincipalEigenvalue)->Arg(-1000)->Arg(0)->Arg(90);

void BM_ImexStep(benchmark::State& state) {
  const Grid grid(1.0, static_cast<std::size_t>(state.range(0)));
  const ClosedLoopSetup setup{kParams, 0.0, 0.1};
  const auto cn = step_operator(setup, grid, 0.05);
  const std::vector<double> steady(grid.size(), 0.0);
  std::vector<double> xi(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) xi[i] = 0.1 * phi(setup, grid.x(i));
  for (auto _ : state) {
    imex_step(cn, kParams, steady, xi);
    benchmark::ClobberMemory();
  }
}
BENCHMARK(BM_ImexStep)->Arg(201)->Arg(1001);

void BM_Simulate(benchmark::State& state) {
  SimConfig cfg;
  cfg.t_final = 100.0;
  const ClosedLoopSetup setup{kParams, 0.5, 0.1};
  const Profile xi0 = Profile::sample(cfg.grid, [&](double x) { return 0.05 * phi(setup, x); });
  for (auto _ : state) {
    benchmark::DoNotOptimize(simulate(setup, Profile(cfg.grid), xi0, cfg));
  }
}
BENCHMARK(BM_Simulate)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
