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

// Experiment configuration: a sectioned key-value text file.
//
//   [experiment]  name, sampler, seed, n_iter, burn_in, thin, n_chains, output_dir
//   [model]       name, statistics, n, prior_lo, prior_hi, efficiency, prior_upper
//   [weight]      kernel, metric, epsilon, covariance, pilot_theta, pilot_sims
//   [schedule]    type, epsilon0, rate
//   [proposal]    scale
//   [init]        theta0, strategy, budget
//   [replicate]   S
//   [epsilon_augmented]  rate, proposal_scale, epsilon0, filter
//   [error_augmented]    S, tau_prior_scale, tau_proposal_scale, min_bandwidth,
//                        normalize_bandwidth
//   [rejection]   n_accept, max_draws
//   [prior_predictive]   ranges, n_draws
//
// Lists are comma- or whitespace-separated decimals; ranges are lo:hi pairs.
// Unknown sections and keys are rejected.

#ifndef LFMCMC_CONFIG_HPP_
#define LFMCMC_CONFIG_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lfmcmc/distance.hpp"
#include "lfmcmc/kernel.hpp"
#include "lfmcmc/model.hpp"
#include "lfmcmc/models.hpp"
#include "lfmcmc/random.hpp"
#include "lfmcmc/samplers.hpp"
#include "lfmcmc/schedule.hpp"

namespace lfmcmc {

enum class SamplerKind { rejection, lf_mcmc, replicate, epsilon_augmented, error_augmented };

std::string_view to_string(SamplerKind kind);
SamplerKind parse_sampler_kind(std::string_view name);

struct ExperimentConfig {
  // [experiment]
  std::string name = "experiment";
  SamplerKind sampler = SamplerKind::lf_mcmc;
  std::uint64_t seed = 1;
  std::size_t n_iter = 10000;
  std::size_t burn_in = 0;
  std::size_t thin = 1;
  std::size_t n_chains = 1;
  std::string output_dir;

  // [model]
  std::string model = "normal_toy";
  StatisticSubset statistics = StatisticSubset::both;
  std::size_t n = 20;
  double prior_lo = -50.0;
  double prior_hi = 50.0;
  double efficiency = 1.0;
  std::optional<double> prior_upper;

  // [weight]
  Kernel kernel = Kernel::uniform;
  MetricKind metric = MetricKind::euclidean;
  double epsilon = 1.0;
  std::vector<double> covariance;  // row-major; estimated at pilot_theta when empty
  std::vector<double> pilot_theta;
  std::size_t pilot_sims = 1000;

  // [schedule]; the target is weight.epsilon
  ScheduleKind schedule = ScheduleKind::self_scaling;
  std::optional<double> schedule_epsilon0;
  double schedule_rate = 0.0;

  // [proposal]
  std::vector<double> proposal_scale{1.0};

  // [init]
  std::vector<double> theta0;
  InitOptions init;

  // [replicate]
  std::size_t replicates = 1;

  // [epsilon_augmented]
  EpsilonAugmentation epsilon_augmentation;
  std::vector<double> epsilon_filter;

  // [error_augmented]
  ErrorAugmentation error_augmentation;

  // [rejection]
  std::size_t n_accept = 1000;
  std::size_t max_draws = 1000000;

  // [prior_predictive]
  std::vector<std::pair<double, double>> ranges;
  std::size_t n_draws = 2000;

  // Canonical "section.key=value" lines of the parsed file, sorted.
  std::string canonical_text;
};

ExperimentConfig parse_config(std::istream& in);
ExperimentConfig load_config(const std::filesystem::path& path);

// Hex SHA-256 of the canonical text.
std::string config_digest(const ExperimentConfig& config);

std::unique_ptr<GenerativeModel> make_model(const ExperimentConfig& config);
SummaryVector make_observed(const ExperimentConfig& config);
EpsilonSchedule make_schedule(const ExperimentConfig& config);
// Builds the distance metric, estimating the covariance at pilot_theta from
// pilot_sims simulations on `pilot` when none is given.
DistanceMetric make_metric(const ExperimentConfig& config, const GenerativeModel& model,
                           RandomStream& pilot);
ParamVector make_theta0(const ExperimentConfig& config, const GenerativeModel& model);

std::string sha256_hex(std::string_view data);

}  // namespace lfmcmc

#endif  // LFMCMC_CONFIG_HPP_
