#include <benchmark/benchmark.h>

#include "heunqdot/oracle.hpp"
#include "heunqdot/termination.hpp"
#include "heunqdot/wavefunction.hpp"

using namespace heunqdot;

static void BM_SolveTermination(benchmark::State& state) {
  const auto n = static_cast<std::int32_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(solve_termination(n, 1, Convention::TableConsistent));
}
BENCHMARK(BM_SolveTermination)->DenseRange(2, 8, 2);

static void BM_ClosedFormMoments(benchmark::State& state) {
  const auto res = solve_termination(5, 1, Convention::TableConsistent);
  const double t = res.roots.roots.front().t_star;
  for (auto _ : state) {
    const auto st = make_state(res.system, t);
    benchmark::DoNotOptimize(moment(st, 1));
  }
}
BENCHMARK(BM_ClosedFormMoments);

static void BM_QuadratureMoment(benchmark::State& state) {
  const auto res = solve_termination(5, 1, Convention::TableConsistent);
  const auto st = make_state(res.system, res.roots.roots.front().t_star);
  for (auto _ : state) benchmark::DoNotOptimize(moment_by_quadrature(st, 1));
}
BENCHMARK(BM_QuadratureMoment);

static void BM_OracleStates(benchmark::State& state) {
  ShootingConfig cfg;
  cfg.node_target = static_cast<std::int32_t>(state.range(0));
  const auto problem = RadialProblem::make(0.157490, 0);
  for (auto _ : state) benchmark::DoNotOptimize(solve_eigen(problem, cfg, true));
}
BENCHMARK(BM_OracleStates)->Arg(0)->Arg(3)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
