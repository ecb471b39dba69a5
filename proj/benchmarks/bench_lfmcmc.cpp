// Copyright 2026 The lfmcmc Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "lfmcmc/diagnostics.hpp"
#include "lfmcmc/distance.hpp"
#include "lfmcmc/kernel.hpp"
#include "lfmcmc/models.hpp"
#include "lfmcmc/random.hpp"
#include "lfmcmc/samplers.hpp"

namespace lfmcmc {
namespace {

void BM_PhiloxUniform(benchmark::State& state) {
  RandomStream rng(1, 0);
  for (auto _ : state) benchmark::DoNotOptimize(rng.uniform());
}
BENCHMARK(BM_PhiloxUniform);

void BM_MahalanobisDistance(benchmark::State& state) {
  const GammaModel model;
  RandomStream rng(1, 0);
  const DistanceMetric metric = DistanceMetric::mahalanobis(
      estimate_covariance(model, ParamVector{16.0, 0.25}, 1000, rng));
  const SummaryVector a{4.0, 1.0}, b{3.7, 1.2};
  for (auto _ : state) benchmark::DoNotOptimize(metric(a, b));
}
BENCHMARK(BM_MahalanobisDistance);

void BM_LogWeight(benchmark::State& state) {
  const Kernel kernel = static_cast<Kernel>(state.range(0));
  double rho = 0.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(log_weight(kernel, 2.0, rho));
    rho = rho < 3.0 ? rho + 0.01 : 0.1;
  }
}
BENCHMARK(BM_LogWeight)
    ->Arg(static_cast<int>(Kernel::uniform))
    ->Arg(static_cast<int>(Kernel::gaussian))
    ->Arg(static_cast<int>(Kernel::epanechnikov));

void BM_ExponentialSimulate(benchmark::State& state) {
  const ExponentialModel model;
  RandomStream rng(1, 0);
  for (auto _ : state) benchmark::DoNotOptimize(model.simulate_summary(ParamVector{0.25}, rng));
}
BENCHMARK(BM_ExponentialSimulate);

// Iterations per second of a full LF-MCMC run on the Exponential model.
void BM_LfMcmcExponential(benchmark::State& state) {
  const ExponentialModel model;
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  const WeightSpec spec(Kernel::uniform, DistanceMetric::euclidean(2), 3.0);
  for (auto _ : state) {
    RandomStream rng(1, 0);
    benchmark::DoNotOptimize(lf_mcmc_run(model, GaussianRandomWalk({1.0}), spec,
                                         EpsilonSchedule::self_scaling(3.0),
                                         observed_summaries(StatisticSubset::both),
                                         ParamVector{0.25}, n, rng));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n));
}
BENCHMARK(BM_LfMcmcExponential)->Arg(10000)->Unit(benchmark::kMillisecond);

void BM_ReplicateGamma(benchmark::State& state) {
  const GammaModel model;
  const std::size_t S = static_cast<std::size_t>(state.range(0));
  RandomStream pilot(1, 1);
  const WeightSpec spec(Kernel::uniform,
                        DistanceMetric::mahalanobis(
                            estimate_covariance(model, ParamVector{16.0, 0.25}, 1000, pilot)),
                        2.0);
  for (auto _ : state) {
    RandomStream rng(1, 0);
    benchmark::DoNotOptimize(replicate_mcmc_run(model, GaussianRandomWalk({2.0, 0.03}), spec,
                                                EpsilonSchedule::fixed(2.0),
                                                observed_summaries(StatisticSubset::both),
                                                ParamVector{16.0, 0.25}, 1000, S, rng));
  }
  state.SetItemsProcessed(state.iterations() * 1000);
}
BENCHMARK(BM_ReplicateGamma)->Arg(1)->Arg(10)->Arg(50)->Unit(benchmark::kMillisecond);

void BM_KsStatistic(benchmark::State& state) {
  RandomStream rng(1, 0);
  std::vector<double> xs(static_cast<std::size_t>(state.range(0)));
  for (double& v : xs) v = rng.exponential(4.0);
  const ReferenceDistribution ref = exponential_true_posterior();
  for (auto _ : state) benchmark::DoNotOptimize(ks_statistic(xs, ref));
}
BENCHMARK(BM_KsStatistic)->Arg(1000)->Arg(100000);

}  // namespace
}  // namespace lfmcmc

BENCHMARK_MAIN();
