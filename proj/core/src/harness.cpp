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

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <limits>
#include <mutex>
#include <thread>

#include "lfmcmc/errors.hpp"
#include "lfmcmc/samplers.hpp"

namespace lfmcmc {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  return out;
}

std::vector<double> broadcast_scale(const std::vector<double>& scale, std::size_t dim) {
  if (scale.size() == 1) return std::vector<double>(dim, scale[0]);
  if (scale.size() != dim) {
    throw ConfigError("config key 'proposal.scale': needs 1 or " + std::to_string(dim) +
                      " values");
  }
  return scale;
}

ChainTrace rejection_trace(const GenerativeModel& model, const RejectionResult& result,
                           double epsilon) {
  ChainTrace trace(model.param_dim());
  for (const ParamVector& theta : result.accepted) {
    trace.append(Phase::sampling, true, epsilon, kNaN, theta.values());
  }
  return trace;
}

// Kept records of a trace: index >= burn_in, every thin-th sampling-phase
// record, optionally restricted to eps_t <= eps_max.
std::vector<std::size_t> kept_indices(const ChainTrace& trace, std::size_t burn_in,
                                      std::size_t thin, double eps_max) {
  std::vector<std::size_t> out;
  std::size_t seen = 0;
  for (std::size_t i = burn_in; i < trace.size(); ++i) {
    if (trace.phase(i) != Phase::sampling) continue;
    if (seen++ % thin != 0) continue;
    if (trace.epsilon(i) <= eps_max) out.push_back(i);
  }
  return out;
}

}  // namespace

std::filesystem::path default_output_dir() {
  if (const char* env = std::getenv(kOutputDirEnv); env != nullptr && *env != '\0') {
    return env;
  }
  return "lfmcmc_output";
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body) {
  const std::size_t workers =
      std::min<std::size_t>(n, std::max(1u, std::thread::hardware_concurrency()));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> threads;
  threads.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    threads.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) {
        try {
          body(i);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      }
    });
  }
  for (std::thread& t : threads) t.join();
  if (error) std::rethrow_exception(error);
}

void write_trace_files(const std::filesystem::path& dir, const std::string& stem,
                       const ChainTrace& trace) {
  std::filesystem::create_directories(dir);
  auto csv = open_output(dir / (stem + ".csv"));
  write_trace_csv(csv, trace);
  auto meta = open_output(dir / (stem + ".csv.meta"));
  write_key_values(meta, trace_metadata_values(trace));
}

void write_rows_file(const std::filesystem::path& dir, const std::string& stem,
                     std::span<const DiagnosticRow> rows, const KeyValues& meta) {
  std::filesystem::create_directories(dir);
  auto csv = open_output(dir / (stem + ".csv"));
  write_diagnostics_csv(csv, rows);
  auto side = open_output(dir / (stem + ".csv.meta"));
  write_key_values(side, meta);
}

std::string statistic_label(std::string_view text) {
  std::string out;
  for (char ch : text) {
    const auto c = static_cast<unsigned char>(ch);
    if (std::isalnum(c)) {
      out.push_back(static_cast<char>(std::tolower(c)));
    } else if (!out.empty() && out.back() != '_') {
      out.push_back('_');
    }
  }
  while (!out.empty() && out.back() == '_') out.pop_back();
  return out;
}

SampleSummary summarize_sample(std::span<const double> sample) {
  SampleSummary s;
  s.n = static_cast<double>(sample.size());
  s.mean = sample.empty() ? kNaN : mean(sample);
  s.sd = sample.size() < 2 ? kNaN : std::sqrt(variance(sample));
  if (sample.size() >= 20) {
    s.hpd50 = hpd_interval(sample, 0.5);
    s.hpd95 = hpd_interval(sample, 0.95);
  } else {
    s.hpd50 = s.hpd95 = Interval{kNaN, kNaN};
  }
  return s;
}

std::vector<ReferenceDistribution> analytic_references(const ExperimentConfig& config) {
  std::vector<ReferenceDistribution> refs;
  if (config.model == "normal_toy") {
    if (config.kernel == Kernel::uniform) {
      refs.push_back(toy_lf_reference(config.epsilon, Kernel::uniform, config.efficiency));
    } else if (config.kernel == Kernel::gaussian) {
      // The closed form is written in uniform-equivalent units.
      refs.push_back(toy_lf_reference(config.epsilon * std::sqrt(3.0), Kernel::gaussian,
                                      config.efficiency));
    }
  } else if (config.model == "exponential" && config.prior_upper == std::nullopt) {
    refs.push_back(exponential_true_posterior());
    if (config.statistics == StatisticSubset::sd) {
      refs.push_back(exponential_sd_only_reference());
    }
  }
  return refs;
}

RunOutput run_experiment(const ExperimentConfig& config, const std::filesystem::path& out_dir) {
  const std::unique_ptr<GenerativeModel> model = make_model(config);
  const SummaryVector observed = make_observed(config);
  const std::string digest = config_digest(config);
  const ParamVector theta0 = make_theta0(config, *model);
  const GaussianRandomWalk proposal(broadcast_scale(config.proposal_scale, model->param_dim()));

  RandomStream pilot(config.seed, kPilotStreamId);
  const DistanceMetric metric = make_metric(config, *model, pilot);
  const WeightSpec spec(config.kernel, metric, config.epsilon);

  RunOutput out;
  out.directory = out_dir / config.name;
  out.traces.resize(config.n_chains);
  std::vector<std::size_t> draws(config.n_chains, 0);

  parallel_for(config.n_chains, [&](std::size_t chain) {
    RandomStream rng(config.seed, chain);
    ChainTrace trace;
    switch (config.sampler) {
      case SamplerKind::rejection: {
        const RejectionResult result =
            rejection_sample(*model, spec, observed, config.n_accept, config.max_draws, rng);
        trace = rejection_trace(*model, result, config.epsilon);
        trace.metadata() = TraceMetadata{"rejection", config.seed, chain, "",
                                         model->param_names(), {}};
        if (result.warning) trace.metadata().warnings.push_back(*result.warning);
        draws[chain] = result.draws;
        break;
      }
      case SamplerKind::lf_mcmc:
        trace = lf_mcmc_run(*model, proposal, spec, make_schedule(config), observed, theta0,
                            config.n_iter, rng, config.init);
        break;
      case SamplerKind::replicate:
        trace = replicate_mcmc_run(*model, proposal, spec, make_schedule(config), observed,
                                   theta0, config.n_iter, config.replicates, rng, config.init);
        break;
      case SamplerKind::epsilon_augmented:
        trace = epsilon_augmented_run(*model, proposal, config.kernel, metric,
                                      config.epsilon_augmentation, observed, theta0,
                                      config.n_iter, rng);
        break;
      case SamplerKind::error_augmented: {
        ErrorAugmentation aug = config.error_augmentation;
        aug.metric = metric;
        trace = error_augmented_run(*model, proposal, aug, observed, theta0, config.n_iter, rng);
        break;
      }
    }
    trace.metadata().config_digest = digest;
    out.traces[chain] = std::move(trace);
  });

  const std::size_t replicates = config.sampler == SamplerKind::error_augmented
                                     ? config.error_augmentation.replicates
                                     : config.sampler == SamplerKind::replicate
                                           ? config.replicates
                                           : 1;
  auto add = [&](const std::string& statistic, double value, double epsilon) {
    out.summary.push_back({config.name, epsilon, replicates,
                           std::string(to_string(config.kernel)),
                           std::string(to_string(config.metric)), statistic, value});
  };

  // Acceptance rates.
  std::size_t accepted = 0;
  std::size_t total = 0;
  for (std::size_t chain = 0; chain < config.n_chains; ++chain) {
    const ChainTrace& trace = out.traces[chain];
    std::size_t chain_accepted = 0;
    std::size_t chain_total = 0;
    if (config.sampler == SamplerKind::rejection) {
      chain_accepted = trace.size();
      chain_total = draws[chain];
    } else {
      for (std::size_t i = 0; i < trace.size(); ++i) {
        if (trace.phase(i) != Phase::sampling) continue;
        ++chain_total;
        if (trace.accepted(i)) ++chain_accepted;
      }
    }
    accepted += chain_accepted;
    total += chain_total;
    add("acceptance_rate_chain" + std::to_string(chain),
        chain_total == 0 ? kNaN : static_cast<double>(chain_accepted) / chain_total,
        config.epsilon);
    for (const std::string& w : trace.metadata().warnings) {
      out.warnings.push_back("chain " + std::to_string(chain) + ": " + w);
    }
  }
  add("acceptance_rate", total == 0 ? kNaN : static_cast<double>(accepted) / total,
      config.epsilon);

  // Pooled parameter summaries, optionally per epsilon filter.
  std::vector<double> filters{std::numeric_limits<double>::infinity()};
  if (config.sampler == SamplerKind::epsilon_augmented) {
    filters.insert(filters.end(), config.epsilon_filter.begin(), config.epsilon_filter.end());
  }
  const std::vector<std::string> names = model->param_names();
  const std::vector<ReferenceDistribution> refs = analytic_references(config);
  for (double eps_max : filters) {
    const double row_eps = std::isinf(eps_max) ? config.epsilon : eps_max;
    const std::string suffix = std::isinf(eps_max) ? "" : "_filtered";
    std::vector<std::vector<double>> pooled(model->param_dim());
    for (const ChainTrace& trace : out.traces) {
      for (std::size_t i : kept_indices(trace, config.burn_in, config.thin, eps_max)) {
        for (std::size_t k = 0; k < pooled.size(); ++k) pooled[k].push_back(trace.theta(i)[k]);
      }
    }
    add("n_kept" + suffix, static_cast<double>(pooled[0].size()), row_eps);
    add("empty" + suffix, pooled[0].empty() ? 1.0 : 0.0, row_eps);
    for (std::size_t k = 0; k < pooled.size(); ++k) {
      const SampleSummary s = summarize_sample(pooled[k]);
      const std::string& p = names[k];
      add("mean_" + p + suffix, s.mean, row_eps);
      add("sd_" + p + suffix, s.sd, row_eps);
      add("hpd50_lo_" + p + suffix, s.hpd50.lo, row_eps);
      add("hpd50_hi_" + p + suffix, s.hpd50.hi, row_eps);
      add("hpd95_lo_" + p + suffix, s.hpd95.lo, row_eps);
      add("hpd95_hi_" + p + suffix, s.hpd95.hi, row_eps);
    }
    for (const ReferenceDistribution& ref : refs) {
      add("ks_" + statistic_label(ref.label) + suffix,
          pooled[0].empty() ? kNaN : ks_statistic(pooled[0], ref), row_eps);
    }
  }

  if (config.sampler == SamplerKind::error_augmented) {
    for (std::size_t r = 0; r < model->summary_dim(); ++r) {
      std::vector<double> tau;
      for (const ChainTrace& trace : out.traces) {
        for (std::size_t i : kept_indices(trace, config.burn_in, config.thin,
                                          std::numeric_limits<double>::infinity())) {
          tau.push_back(trace.tau(i)[r]);
        }
      }
      const SampleSummary s = summarize_sample(tau);
      const std::string t = "tau_" + std::to_string(r + 1);
      add("mean_" + t, s.mean, kNaN);
      add("hpd50_lo_" + t, s.hpd50.lo, kNaN);
      add("hpd50_hi_" + t, s.hpd50.hi, kNaN);
    }
  }

  for (std::size_t chain = 0; chain < out.traces.size(); ++chain) {
    write_trace_files(out.directory, "trace_chain" + std::to_string(chain), out.traces[chain]);
  }
  KeyValues meta{{"experiment", config.name},
                 {"sampler", std::string(to_string(config.sampler))},
                 {"seed", std::to_string(config.seed)},
                 {"config_digest", digest},
                 {"n_chains", std::to_string(config.n_chains)},
                 {"n_iter", std::to_string(config.n_iter)},
                 {"burn_in", std::to_string(config.burn_in)},
                 {"thin", std::to_string(config.thin)}};
  for (std::size_t i = 0; i < out.warnings.size(); ++i) {
    meta.emplace_back("warning_" + std::to_string(i), out.warnings[i]);
  }
  write_rows_file(out.directory, "summary", out.summary, meta);
  return out;
}

std::vector<std::vector<double>> run_prior_predictive(const ExperimentConfig& config,
                                                      const std::filesystem::path& out_dir) {
  const std::unique_ptr<GenerativeModel> model = make_model(config);
  if (config.ranges.empty()) {
    throw ConfigError("config key 'prior_predictive.ranges': at least one lo:hi range needed");
  }
  if (config.ranges.size() != model->param_dim()) {
    throw ConfigError("config key 'prior_predictive.ranges': model '" +
                      std::string(model->name()) + "' needs " +
                      std::to_string(model->param_dim()) + " ranges");
  }
  RandomStream rng(config.seed, 0);
  std::vector<std::vector<double>> rows;
  rows.reserve(config.n_draws);
  for (std::size_t i = 0; i < config.n_draws; ++i) {
    ParamVector theta(model->param_dim());
    for (std::size_t k = 0; k < theta.size(); ++k) {
      const auto [lo, hi] = config.ranges[k];
      theta[k] = lo == hi ? lo : lo + (hi - lo) * rng.uniform();
    }
    const SummaryVector summary = model->simulate_summary(theta, rng);
    std::vector<double> row(theta.begin(), theta.end());
    row.insert(row.end(), summary.begin(), summary.end());
    rows.push_back(std::move(row));
  }

  const std::filesystem::path dir = out_dir / config.name;
  std::filesystem::create_directories(dir);
  auto csv = open_output(dir / "prior_predictive.csv");
  for (std::size_t k = 0; k < model->param_dim(); ++k) {
    csv << (k ? "," : "") << "theta_" << k + 1;
  }
  for (std::size_t r = 0; r < model->summary_dim(); ++r) csv << ",T_" << r + 1;
  csv << '\n';
  for (const auto& row : rows) {
    for (std::size_t j = 0; j < row.size(); ++j) csv << (j ? "," : "") << format_double(row[j]);
    csv << '\n';
  }
  auto meta = open_output(dir / "prior_predictive.csv.meta");
  write_key_values(meta, {{"experiment", config.name},
                          {"model", config.model},
                          {"seed", std::to_string(config.seed)},
                          {"stream_id", "0"},
                          {"config_digest", config_digest(config)},
                          {"n_draws", std::to_string(config.n_draws)}});
  return rows;
}

}  // namespace lfmcmc
