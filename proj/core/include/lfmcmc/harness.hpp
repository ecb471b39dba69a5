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

// Config-driven experiment runner and shared output helpers.

#ifndef LFMCMC_HARNESS_HPP_
#define LFMCMC_HARNESS_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lfmcmc/config.hpp"
#include "lfmcmc/diagnostics.hpp"
#include "lfmcmc/trace.hpp"

namespace lfmcmc {

// Environment variable naming the default output directory.
inline constexpr const char* kOutputDirEnv = "LFMCMC_OUTPUT_DIR";
// Stream id reserved for covariance pilot simulations; chains use 0..n-1.
inline constexpr std::uint64_t kPilotStreamId = 0xFFFFFFFF00000000ULL;

// $LFMCMC_OUTPUT_DIR, or "lfmcmc_output" in the working directory.
std::filesystem::path default_output_dir();

// Runs body(0..n-1) on up to hardware_concurrency threads. The first
// exception thrown by any call is rethrown after all workers finish.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

// Writes <stem>.csv and <stem>.csv.meta.
void write_trace_files(const std::filesystem::path& dir, const std::string& stem,
                       const ChainTrace& trace);
// Writes <stem>.csv in the diagnostics schema and <stem>.csv.meta.
void write_rows_file(const std::filesystem::path& dir, const std::string& stem,
                     std::span<const DiagnosticRow> rows, const KeyValues& meta);

// Lower-case alphanumerics and '_' only, for use inside statistic names.
std::string statistic_label(std::string_view text);

// Posterior summaries of a kept sample: n, mean, sd, 50% and 95% HPD bounds.
// Values that need more points than the sample has are NaN.
struct SampleSummary {
  double n = 0.0;
  double mean = 0.0;
  double sd = 0.0;
  Interval hpd50;
  Interval hpd95;
};
SampleSummary summarize_sample(std::span<const double> sample);

// The analytic posteriors known for a configuration, if any.
std::vector<ReferenceDistribution> analytic_references(const ExperimentConfig& config);

struct RunOutput {
  std::vector<ChainTrace> traces;
  std::vector<DiagnosticRow> summary;
  std::vector<std::string> warnings;
  std::filesystem::path directory;
};

// Runs config.n_chains chains on streams (seed, 0..n_chains-1), writes
// trace_chain<i>.csv per chain and summary.csv under out_dir / config.name.
// Summary rows: acceptance rates (sampling phase), n_kept, an "empty" flag
// (1 when no states survive burn-in and thinning), posterior mean, sd and
// HPD bounds per parameter, and KS distances to any analytic reference.
RunOutput run_experiment(const ExperimentConfig& config, const std::filesystem::path& out_dir);

// Draws theta uniformly over config.ranges and simulates summaries at each;
// writes prior_predictive.csv (theta_1..theta_d,T_1..T_R) under
// out_dir / config.name. Returns the rows written.
std::vector<std::vector<double>> run_prior_predictive(const ExperimentConfig& config,
                                                      const std::filesystem::path& out_dir);

}  // namespace lfmcmc

#endif  // LFMCMC_HARNESS_HPP_
