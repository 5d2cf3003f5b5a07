#include <benchmark/benchmark.h>

#include "wdro/backtest.hpp"
#include "wdro/dro.hpp"
#include "wdro/feasibility.hpp"
#include "wdro/market_sim.hpp"
#include "wdro/rng.hpp"

using namespace wdro;

namespace {

ReturnSample bench_sample(Eigen::Index m, Eigen::Index n) {
  return market_sim::generate(market_sim::MarketModel::with_defaults(m), n, 17);
}

DroConfig bench_config(double epsilon) {
  DroConfig cfg;
  cfg.epsilon = epsilon;
  cfg.mu = 0.05;
  cfg.alpha = 0.05;
  return cfg;
}

}  // namespace

static void BM_ComputeMoments(benchmark::State& state) {
  auto sample = bench_sample(state.range(0), 250);
  for (auto _ : state) benchmark::DoNotOptimize(compute_moments(sample));
}
BENCHMARK(BM_ComputeMoments)->Arg(5)->Arg(10)->Arg(25);

static void BM_SolveMeanVariance(benchmark::State& state) {
  auto sample = bench_sample(state.range(0), 120);
  auto mom = compute_moments(sample);
  auto cfg = bench_config(0.005);
  for (auto _ : state) {
    auto sol = dro::solve_dro(dro::build_mean_variance_socp(mom, cfg),
                              dro::ProblemKind::MeanVariance);
    benchmark::DoNotOptimize(sol.objective);
  }
}
BENCHMARK(BM_SolveMeanVariance)->Arg(3)->Arg(10)->Arg(25)->Unit(benchmark::kMillisecond);

static void BM_SolveMeanCVaR(benchmark::State& state) {
  auto sample = bench_sample(5, state.range(0));
  auto cfg = bench_config(0.005);
  for (auto _ : state) {
    auto sol = dro::solve_dro(dro::build_mean_cvar_socp(sample, cfg),
                              dro::ProblemKind::MeanCVaR);
    benchmark::DoNotOptimize(sol.objective);
  }
}
BENCHMARK(BM_SolveMeanCVaR)->Arg(30)->Arg(60)->Arg(120)->Unit(benchmark::kMillisecond);

static void BM_EpsMaxBisection(benchmark::State& state) {
  auto mom = compute_moments(bench_sample(state.range(0), 120));
  const double mu = 0.5 * mom.mean.maxCoeff();
  for (auto _ : state)
    benchmark::DoNotOptimize(feasibility::eps_max(mom, mu, 2).eps_max);
}
BENCHMARK(BM_EpsMaxBisection)->Arg(5)->Arg(10)->Unit(benchmark::kMillisecond);

static void BM_EpsMaxAnalytic(benchmark::State& state) {
  auto mom = compute_moments(bench_sample(state.range(0), 120));
  const double mu = 0.5 * mom.mean.maxCoeff();
  for (auto _ : state)
    benchmark::DoNotOptimize(feasibility::eps_max_analytic(mom, mu, 2).eps_max);
}
BENCHMARK(BM_EpsMaxAnalytic)->Arg(5)->Arg(10);

static void BM_EmpiricalCVaR(benchmark::State& state) {
  std::vector<double> losses(static_cast<std::size_t>(state.range(0)));
  rng::engine eng(5);
  for (auto& l : losses) l = rng::uniform_open01(eng) - 0.5;
  for (auto _ : state)
    benchmark::DoNotOptimize(backtest::empirical_cvar(losses, 0.05));
}
BENCHMARK(BM_EmpiricalCVaR)->Arg(250)->Arg(2500);

BENCHMARK_MAIN();
