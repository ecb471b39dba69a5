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

#include "lfmcmc/harness.hpp"

#include <gtest/gtest.h>

#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>
#include <string>

#include "lfmcmc/errors.hpp"
#include "lfmcmc/models.hpp"
#include "lfmcmc/samplers.hpp"

namespace lfmcmc {
namespace {

namespace fs = std::filesystem;

class TempDir {
 public:
  TempDir() {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    path_ = fs::temp_directory_path() /
            (std::string("lfmcmc_") + info->test_suite_name() + "_" + info->name());
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  const fs::path& path() const { return path_; }

 private:
  fs::path path_;
};

ExperimentConfig parse(const std::string& text) {
  std::istringstream in(text);
  return parse_config(in);
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

const DiagnosticRow* find_row(const std::vector<DiagnosticRow>& rows, const std::string& stat) {
  for (const auto& r : rows) {
    if (r.statistic == stat) return &r;
  }
  return nullptr;
}

constexpr const char* kToy = R"(
[experiment]
name = toy
seed = 5
n_iter = 3000
burn_in = 500
n_chains = 3
[model]
name = normal_toy
[weight]
kernel = gaussian
epsilon = 1
[schedule]
type = fixed
[proposal]
scale = 2
)";

TEST(Harness, WritesTracesAndSummaryWithDigest) {
  TempDir dir;
  const ExperimentConfig config = parse(kToy);
  const RunOutput out = run_experiment(config, dir.path());
  ASSERT_EQ(out.traces.size(), 3u);
  for (int i = 0; i < 3; ++i) {
    const fs::path trace = dir.path() / "toy" / ("trace_chain" + std::to_string(i) + ".csv");
    ASSERT_TRUE(fs::exists(trace));
    std::ifstream in(trace);
    const ChainTrace back = read_trace_csv(in);
    EXPECT_EQ(back.size(), 3000u);
    std::ifstream meta(trace.string() + ".meta");
    const auto kv = read_key_values(meta);
    EXPECT_EQ(kv.at("config_digest"), config_digest(config));
    EXPECT_EQ(kv.at("stream_id"), std::to_string(i));
  }
  std::ifstream summary(dir.path() / "toy" / "summary.csv");
  const auto rows = read_diagnostics_csv(summary);
  ASSERT_NE(find_row(rows, "acceptance_rate"), nullptr);
  ASSERT_NE(find_row(rows, "mean_theta"), nullptr);
  ASSERT_NE(find_row(rows, "hpd95_hi_theta"), nullptr);
  const DiagnosticRow* ks = nullptr;
  for (const auto& r : rows) {
    if (r.statistic.rfind("ks_", 0) == 0) ks = &r;
  }
  ASSERT_NE(ks, nullptr);
  EXPECT_LT(ks->value, 0.06);
  EXPECT_EQ(find_row(rows, "n_kept")->value, 3.0 * 2500.0);
  EXPECT_EQ(find_row(rows, "empty")->value, 0.0);
  std::ifstream summary_meta(dir.path() / "toy" / "summary.csv.meta");
  EXPECT_EQ(read_key_values(summary_meta).at("config_digest"), config_digest(config));
}

TEST(Harness, IdenticalConfigGivesByteIdenticalTraces) {
  TempDir a, b;
  const ExperimentConfig config = parse(kToy);
  run_experiment(config, a.path());
  run_experiment(config, b.path());
  for (const char* f : {"trace_chain0.csv", "trace_chain2.csv", "summary.csv"}) {
    const std::string x = slurp(a.path() / "toy" / f);
    EXPECT_FALSE(x.empty());
    EXPECT_EQ(x, slurp(b.path() / "toy" / f)) << f;
  }
}

TEST(Harness, ZeroIterationsGivesEmptyTracesAndFlaggedSummary) {
  TempDir dir;
  std::string text = kToy;
  text.replace(text.find("n_iter = 3000"), 13, "n_iter = 0");
  const RunOutput out = run_experiment(parse(text), dir.path());
  EXPECT_EQ(slurp(dir.path() / "toy" / "trace_chain0.csv"),
            "t,phase,accepted,epsilon,rho,theta_1\n");
  EXPECT_EQ(find_row(out.summary, "n_kept")->value, 0.0);
  EXPECT_EQ(find_row(out.summary, "empty")->value, 1.0);
  EXPECT_TRUE(std::isnan(find_row(out.summary, "mean_theta")->value));
  EXPECT_TRUE(std::isnan(find_row(out.summary, "acceptance_rate")->value));
}

TEST(Harness, ChainStreamsAreIsolated) {
  TempDir dir;
  const ExperimentConfig three = parse(kToy);
  std::string one_text = kToy;
  one_text.replace(one_text.find("n_chains = 3"), 12, "n_chains = 1");
  const RunOutput many = run_experiment(three, dir.path() / "many");
  const RunOutput one = run_experiment(parse(one_text), dir.path() / "one");
  EXPECT_TRUE(many.traces[0] == one.traces[0]);
  // Chain 2 replayed on its own, outside the harness, matches too.
  RandomStream rng(5, 2);
  const NormalToy toy;
  const ChainTrace direct =
      lf_mcmc_run(toy, GaussianRandomWalk({2.0}),
                  WeightSpec(Kernel::gaussian, DistanceMetric::euclidean(1), 1.0),
                  EpsilonSchedule::fixed(1.0), NormalToy::observed(), ParamVector{0.0}, 3000, rng);
  ASSERT_EQ(direct.size(), many.traces[2].size());
  for (std::size_t i = 0; i < direct.size(); ++i) {
    ASSERT_EQ(direct.theta(i)[0], many.traces[2].theta(i)[0]);
  }
}

TEST(Harness, ParallelForRunsEveryIndexOnceAndRethrows) {
  std::vector<std::atomic<int>> hits(100);
  parallel_for(hits.size(), [&](std::size_t i) { ++hits[i]; });
  for (const auto& h : hits) EXPECT_EQ(h.load(), 1);
  EXPECT_THROW(parallel_for(10,
                            [](std::size_t i) {
                              if (i == 7) throw ConfigError("boom");
                            }),
               ConfigError);
}

TEST(Harness, SamplerKindsRunEndToEnd) {
  TempDir dir;
  const char* kConfigs[] = {
      "[experiment]\nname=rej\nsampler=rejection\n[model]\nname=normal_toy\nprior_lo=-10\n"
      "prior_hi=10\n[weight]\nepsilon=0.5\n[rejection]\nn_accept=200\n",
      "[experiment]\nname=rep\nsampler=replicate\nn_iter=500\n[model]\nname=gamma\n"
      "[weight]\nmetric=mahalanobis\nepsilon=2\n[replicate]\nS=5\n[proposal]\nscale=2,0.03\n",
      "[experiment]\nname=aug\nsampler=epsilon_augmented\nn_iter=2000\n[model]\nname=normal_toy\n"
      "[weight]\nkernel=gaussian\n[epsilon_augmented]\nfilter=0.5 2\n",
      "[experiment]\nname=err\nsampler=error_augmented\nn_iter=300\n[model]\nname=gamma\n"
      "[proposal]\nscale=1,0.02\n[error_augmented]\nS=20\ntau_prior_scale=0.75\n",
  };
  for (const char* text : kConfigs) {
    const ExperimentConfig config = parse(text);
    const RunOutput out = run_experiment(config, dir.path());
    EXPECT_TRUE(fs::exists(dir.path() / config.name / "summary.csv")) << config.name;
    EXPECT_NE(find_row(out.summary, "acceptance_rate"), nullptr);
  }
  std::ifstream err(dir.path() / "err" / "summary.csv");
  const auto rows = read_diagnostics_csv(err);
  EXPECT_NE(find_row(rows, "hpd50_lo_tau_2"), nullptr);
  std::ifstream aug(dir.path() / "aug" / "summary.csv");
  EXPECT_NE(find_row(read_diagnostics_csv(aug), "mean_theta_filtered"), nullptr);
  std::ifstream rej(dir.path() / "rej" / "summary.csv");
  EXPECT_EQ(find_row(read_diagnostics_csv(rej), "n_kept")->value, 200.0);
}

TEST(Harness, InitializationFailureSurfaces) {
  TempDir dir;
  const ExperimentConfig config = parse(
      "[experiment]\nname=bad\nn_iter=10\n[weight]\nepsilon=1e-12\n[schedule]\ntype=fixed\n"
      "[init]\ntheta0=40\nbudget=10\n");
  EXPECT_THROW(run_experiment(config, dir.path()), InitializationError);
}

TEST(PriorPredictive, CountsAndSchema) {
  TempDir dir;
  const auto rows = run_prior_predictive(
      parse("[experiment]\nname=pp\n[model]\nname=exponential\n"
            "[prior_predictive]\nranges=0:20\nn_draws=2000\n"),
      dir.path());
  EXPECT_EQ(rows.size(), 2000u);
  std::ifstream in(dir.path() / "pp" / "prior_predictive.csv");
  std::string header;
  std::getline(in, header);
  EXPECT_EQ(header, "theta_1,T_1,T_2");
  std::size_t lines = 0;
  for (std::string line; std::getline(in, line);) ++lines;
  EXPECT_EQ(lines, 2000u);
  for (const auto& r : rows) {
    ASSERT_GE(r[0], 0.0);
    ASSERT_LE(r[0], 20.0);
  }
}

TEST(PriorPredictive, DegenerateRange) {
  TempDir dir;
  const auto rows = run_prior_predictive(
      parse("[model]\nname=exponential\n[prior_predictive]\nranges=2:2\nn_draws=100\n"),
      dir.path());
  for (const auto& r : rows) EXPECT_EQ(r[0], 2.0);
}

TEST(PriorPredictive, EmptyRangesIsConfigError) {
  TempDir dir;
  EXPECT_THROW(run_prior_predictive(parse("[model]\nname=exponential\n"), dir.path()),
               ConfigError);
  EXPECT_THROW(run_prior_predictive(
                   parse("[model]\nname=gamma\n[prior_predictive]\nranges=0:20\n"), dir.path()),
               ConfigError);
}

TEST(PriorPredictive, GammaModelExplainsDataBetter) {
  TempDir dir;
  auto fraction = [&](const std::string& model, const std::string& ranges) {
    const auto rows = run_prior_predictive(
        parse("[experiment]\nname=" + model + "\n[model]\nname=" + model +
              "\n[prior_predictive]\nranges=" + ranges + "\nn_draws=100000\n"),
        dir.path());
    std::size_t hit = 0;
    const std::size_t d = model == "gamma" ? 2 : 1;
    for (const auto& r : rows) {
      hit += std::abs(r[d] - 4.0) <= 0.5 && std::abs(r[d + 1] - 1.0) <= 0.5;
    }
    return static_cast<double>(hit) / static_cast<double>(rows.size());
  };
  EXPECT_LT(fraction("exponential", "0:20"), fraction("gamma", "0:20 0:20"));
}

TEST(Harness, Figure2RecipeReachesTargetQuickly) {
  TempDir dir;
  const ExperimentConfig config = parse(
      "[experiment]\nname=f2\nn_iter=5000\nn_chains=4\nseed=3\n[model]\nname=exponential\n"
      "[weight]\nmetric=mahalanobis\nepsilon=3\n[init]\ntheta0=10\n");
  const RunOutput out = run_experiment(config, dir.path());
  for (const ChainTrace& tr : out.traces) {
    EXPECT_EQ(tr.epsilon(tr.size() - 1), 3.0);
  }
}

TEST(Harness, StatisticLabel) {
  EXPECT_EQ(statistic_label("Gamma(21,80)"), "gamma_21_80");
  EXPECT_EQ(statistic_label("N(0, 2)"), "n_0_2");
}

}  // namespace
}  // namespace lfmcmc
