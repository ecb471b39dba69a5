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

#include "lfmcmc/figures.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "lfmcmc/errors.hpp"
#include "lfmcmc/harness.hpp"
#include "lfmcmc/models.hpp"
#include "lfmcmc/samplers.hpp"

namespace lfmcmc {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr std::size_t kPilotSims = 1000;
constexpr std::size_t kReplicates = 25;
constexpr std::size_t kKeptStates = 1000;
constexpr std::size_t kBurnIn = 10000;
constexpr std::size_t kThin = 1000;

// Stream ids. Chains of one figure never share a stream; pilots sit in the
// reserved pilot range.
constexpr std::uint64_t kFig2Chains = 0;
constexpr std::uint64_t kFig2PanelC = 100;
constexpr std::uint64_t kFig3Calibration = 2000;
constexpr std::uint64_t kFig3Replicates = 10000;
constexpr std::uint64_t kFig4Replicates = 20000;
constexpr std::uint64_t kFig5Cells = 30000;
constexpr std::uint64_t kFig6Chains = 40000;
constexpr std::uint64_t kPilotExponential = kPilotStreamId;
constexpr std::uint64_t kPilotExponentialMean = kPilotStreamId + 1;
constexpr std::uint64_t kPilotExponentialSd = kPilotStreamId + 2;
constexpr std::uint64_t kPilotGamma = kPilotStreamId + 10;

constexpr double kExponentialStep = 1.0;

std::string kernel_name(Kernel k) { return std::string(to_string(k)); }
std::string metric_name(MetricKind m) { return std::string(to_string(m)); }

std::string eps_label(double eps) {
  std::ostringstream s;
  s << eps;
  return statistic_label(s.str());
}

DistanceMetric exponential_metric(StatisticSubset subset, MetricKind kind, std::uint64_t seed,
                                  std::uint64_t pilot_stream) {
  const ExponentialModel model(subset);
  if (kind == MetricKind::euclidean) return DistanceMetric::euclidean(model.summary_dim());
  RandomStream pilot(seed, pilot_stream);
  const Eigen::MatrixXd cov = estimate_covariance(model, ParamVector{0.25}, kPilotSims, pilot);
  return DistanceMetric::make(kind, model.summary_dim(), cov);
}

double sampling_rate(const ChainTrace& trace) {
  for (std::size_t i = 0; i < trace.size(); ++i) {
    if (trace.phase(i) == Phase::sampling) return acceptance_rate(trace, PhaseFilter::sampling);
  }
  return kNaN;
}

struct Stats {
  double mean = kNaN;
  double se = kNaN;
  double min = kNaN;
  double max = kNaN;
};

Stats stats_of(const std::vector<double>& xs) {
  Stats s;
  if (xs.empty()) return s;
  s.mean = mean(xs);
  s.se = xs.size() < 2 ? kNaN : std::sqrt(variance(xs) / static_cast<double>(xs.size()));
  s.min = *std::min_element(xs.begin(), xs.end());
  s.max = *std::max_element(xs.begin(), xs.end());
  return s;
}

// Thinned replicate protocol shared by fig3 and fig4.
struct ReplicatePlan {
  std::size_t burn_in;
  std::size_t thin;
  std::size_t n_iter;
};

ReplicatePlan replicate_plan(double scale) {
  const std::size_t burn = scaled_count(kBurnIn, scale);
  const std::size_t thin = scaled_count(kThin, scale);
  return {burn, thin, burn + kKeptStates * thin};
}

// fig2 -------------------------------------------------------------------------

FigureResult figure2(const FigureOptions& opt) {
  FigureResult res;
  const ExponentialModel model;
  const SummaryVector observed = observed_summaries(StatisticSubset::both);
  const DistanceMetric metric = exponential_metric(StatisticSubset::both,
                                                   MetricKind::mahalanobis, opt.seed,
                                                   kPilotExponential);
  const GaussianRandomWalk proposal({kExponentialStep});
  const std::array<double, 4> panel_c{4.5, 4.0, 3.5, 3.0};
  const std::size_t n_chain = scaled_count(20000, opt.scale);
  const std::size_t n_panel = scaled_count(100000, opt.scale);
  constexpr double kTarget = 3.0;

  std::vector<ChainTrace> traces(8);
  parallel_for(traces.size(), [&](std::size_t job) {
    const bool chain = job < 4;
    const double eps = chain ? kTarget : panel_c[job - 4];
    RandomStream rng(opt.seed, chain ? kFig2Chains + job : kFig2PanelC + (job - 4));
    traces[job] = lf_mcmc_run(model, proposal, WeightSpec(Kernel::uniform, metric, eps),
                              EpsilonSchedule::self_scaling(eps), observed, ParamVector{10.0},
                              chain ? n_chain : n_panel, rng);
  });

  const ReferenceDistribution truth = exponential_true_posterior();
  for (std::size_t job = 0; job < traces.size(); ++job) {
    const ChainTrace& tr = traces[job];
    const bool chain = job < 4;
    const double eps = chain ? kTarget : panel_c[job - 4];
    auto add = [&](const std::string& experiment, const std::string& stat, double v) {
      res.rows.push_back({experiment, eps, 1, "uniform", "mahalanobis", stat, v});
    };
    if (chain) {
      const std::string experiment = "fig2_chain" + std::to_string(job);
      double reached = kNaN;
      for (std::size_t i = 0; i < tr.size(); ++i) {
        if (tr.epsilon(i) <= kTarget) {
          reached = static_cast<double>(tr.t(i));
          break;
        }
      }
      add(experiment, "iterations_to_target", reached);
      add(experiment, "final_epsilon", tr.empty() ? kNaN : tr.epsilon(tr.size() - 1));
      add(experiment, "acceptance_rate", sampling_rate(tr));
      if (opt.keep_traces) res.traces.emplace_back(experiment, tr);
    } else {
      const std::vector<double> lambda = kept_component(tr, 0);
      add("fig2_panel_c", "acceptance_rate", sampling_rate(tr));
      add("fig2_panel_c", "n_kept", static_cast<double>(lambda.size()));
      add("fig2_panel_c", "mean_lambda", lambda.empty() ? kNaN : mean(lambda));
      add("fig2_panel_c", "sd_lambda", lambda.size() < 2 ? kNaN : std::sqrt(variance(lambda)));
      add("fig2_panel_c", "ks_" + statistic_label(truth.label),
          lambda.empty() ? kNaN : ks_statistic(lambda, truth));
      if (opt.keep_traces) res.traces.emplace_back("fig2_panel_c_eps" + eps_label(eps), tr);
    }
  }
  return res;
}

// fig3 -------------------------------------------------------------------------

struct Curve {
  std::string panel;
  Kernel kernel;
  MetricKind metric;
};

double run_rate(const GenerativeModel& model, const ProposalDistribution& proposal,
                Kernel kernel, const DistanceMetric& metric, const SummaryVector& observed,
                double eps, std::size_t n, RandomStream rng) {
  const ChainTrace tr = lf_mcmc_run(model, proposal, WeightSpec(kernel, metric, eps),
                                    EpsilonSchedule::self_scaling(eps), observed,
                                    ParamVector{0.25}, n, rng);
  const double rate = sampling_rate(tr);
  return std::isnan(rate) ? 0.0 : rate;
}

// Bisection on log(eps) for a post-convergence acceptance rate, reusing one
// stream state so that the rate is a smooth function of eps.
double calibrate_epsilon(const GenerativeModel& model, const ProposalDistribution& proposal,
                         Kernel kernel, const DistanceMetric& metric,
                         const SummaryVector& observed, double target_rate, std::size_t n,
                         const RandomStream& rng, double eps_max) {
  double lo = std::log(0.05);
  double hi = std::log(eps_max);
  for (int step = 0; step < 16; ++step) {
    const double mid = 0.5 * (lo + hi);
    const double rate = run_rate(model, proposal, kernel, metric, observed, std::exp(mid), n, rng);
    (rate < target_rate ? lo : hi) = mid;
  }
  return std::exp(0.5 * (lo + hi));
}

FigureResult figure3(const FigureOptions& opt) {
  FigureResult res;
  const ExponentialModel model;
  const SummaryVector observed = observed_summaries(StatisticSubset::both);
  const GaussianRandomWalk proposal({kExponentialStep});
  const std::vector<Curve> curves{
      {"fig3a", Kernel::uniform, MetricKind::mahalanobis},
      {"fig3a", Kernel::epanechnikov, MetricKind::mahalanobis},
      {"fig3a", Kernel::triangle, MetricKind::mahalanobis},
      {"fig3b", Kernel::uniform, MetricKind::scaled_euclidean},
      {"fig3b", Kernel::uniform, MetricKind::euclidean},
  };
  const std::vector<double> levels{0.02, 0.05, 0.10};

  // As lambda grows T(x) tends to (0, 0), so at or above d(T(y), 0) the
  // posterior is improper under the flat prior. Each metric has its own bound.
  std::vector<DistanceMetric> metrics;
  std::vector<double> eps_max;
  for (const Curve& c : curves) {
    metrics.push_back(exponential_metric(StatisticSubset::both, c.metric, opt.seed,
                                         kPilotExponential));
    eps_max.push_back(metrics.back()(observed, SummaryVector{0.0, 0.0}));
  }

  const std::size_t n_cal = std::max<std::size_t>(5000, scaled_count(50000, opt.scale));
  const std::size_t n_cells = curves.size() * levels.size();
  std::vector<double> eps(n_cells);
  parallel_for(n_cells, [&](std::size_t cell) {
    const std::size_t c = cell / levels.size();
    const std::size_t l = cell % levels.size();
    eps[cell] = calibrate_epsilon(model, proposal, curves[c].kernel, metrics[c], observed,
                                  levels[l], n_cal,
                                  RandomStream(opt.seed, kFig3Calibration + cell), eps_max[c]);
  });

  const ReplicatePlan plan = replicate_plan(opt.scale);
  const ReferenceDistribution truth = exponential_true_posterior();
  std::vector<double> ks(n_cells * kReplicates);
  std::vector<double> rate(n_cells * kReplicates);
  parallel_for(ks.size(), [&](std::size_t job) {
    const std::size_t cell = job / kReplicates;
    const std::size_t c = cell / levels.size();
    RandomStream rng(opt.seed, kFig3Replicates + job);
    const ChainTrace tr =
        lf_mcmc_run(model, proposal, WeightSpec(curves[c].kernel, metrics[c], eps[cell]),
                    EpsilonSchedule::self_scaling(eps[cell]), observed, ParamVector{0.25},
                    plan.n_iter, rng);
    const std::vector<double> kept = kept_component(tr, 0, plan.burn_in, plan.thin,
                                                    PhaseFilter::all);
    ks[job] = ks_statistic(kept, truth);
    rate[job] = sampling_rate(tr);
  });

  for (std::size_t cell = 0; cell < n_cells; ++cell) {
    const Curve& curve = curves[cell / levels.size()];
    const double target = levels[cell % levels.size()];
    std::vector<const std::string*> panels{&curve.panel};
    // The uniform / Mahalanobis curve belongs to both panels.
    static const std::string kPanelB = "fig3b";
    if (curve.kernel == Kernel::uniform && curve.metric == MetricKind::mahalanobis) {
      panels.push_back(&kPanelB);
    }
    const std::vector<double> cell_ks(ks.begin() + cell * kReplicates,
                                      ks.begin() + (cell + 1) * kReplicates);
    const std::vector<double> cell_rate(rate.begin() + cell * kReplicates,
                                        rate.begin() + (cell + 1) * kReplicates);
    const Stats ks_stats = stats_of(cell_ks);
    for (const std::string* panel : panels) {
      auto add = [&](const std::string& stat, double v) {
        res.rows.push_back({*panel, eps[cell], 1, kernel_name(curve.kernel),
                            metric_name(curve.metric), stat, v});
      };
      add("target_acceptance", target);
      for (std::size_t r = 0; r < kReplicates; ++r) {
        add("ks", cell_ks[r]);
        add("acceptance_rate", cell_rate[r]);
      }
      add("acceptance_rate_mean", mean(cell_rate));
      add("ks_mean", ks_stats.mean);
      add("ks_se", ks_stats.se);
    }
  }
  return res;
}

// fig4 -------------------------------------------------------------------------

FigureResult figure4(const FigureOptions& opt) {
  FigureResult res;
  struct Cell {
    StatisticSubset subset;
    MetricKind metric;
    double eps;
  };
  std::vector<Cell> cells;
  for (double e : {3.0, 2.0, 1.0, 0.5}) {
    cells.push_back({StatisticSubset::mean, MetricKind::euclidean, e});
  }
  // |s - 1| stays below 1 as lambda grows, so eps must stay below 1 for a
  // proper posterior under the flat prior.
  for (double e : {0.8, 0.4, 0.2, 0.1}) {
    cells.push_back({StatisticSubset::sd, MetricKind::euclidean, e});
  }
  for (double e : {4.5, 4.0, 3.5, 3.0}) {
    cells.push_back({StatisticSubset::both, MetricKind::mahalanobis, e});
  }
  const DistanceMetric both_metric = exponential_metric(
      StatisticSubset::both, MetricKind::mahalanobis, opt.seed, kPilotExponential);
  const GaussianRandomWalk proposal({kExponentialStep});
  const ReplicatePlan plan = replicate_plan(opt.scale);
  const ReferenceDistribution truth = exponential_true_posterior();
  const ReferenceDistribution alt = exponential_sd_only_reference();

  std::vector<double> ks(cells.size() * kReplicates);
  std::vector<double> ks_alt(ks.size());
  std::vector<double> rate(ks.size());
  parallel_for(ks.size(), [&](std::size_t job) {
    const Cell& cell = cells[job / kReplicates];
    const ExponentialModel model(cell.subset);
    const DistanceMetric metric = cell.subset == StatisticSubset::both
                                      ? both_metric
                                      : DistanceMetric::euclidean(1);
    RandomStream rng(opt.seed, kFig4Replicates + job);
    const ChainTrace tr =
        lf_mcmc_run(model, proposal, WeightSpec(Kernel::uniform, metric, cell.eps),
                    EpsilonSchedule::self_scaling(cell.eps), observed_summaries(cell.subset),
                    ParamVector{0.25}, plan.n_iter, rng);
    const std::vector<double> kept = kept_component(tr, 0, plan.burn_in, plan.thin,
                                                    PhaseFilter::all);
    ks[job] = ks_statistic(kept, truth);
    ks_alt[job] = ks_statistic(kept, alt);
    rate[job] = sampling_rate(tr);
  });

  for (std::size_t c = 0; c < cells.size(); ++c) {
    const Cell& cell = cells[c];
    const std::string experiment = "fig4_" + std::string(to_string(cell.subset));
    auto slice = [&](const std::vector<double>& v) {
      return std::vector<double>(v.begin() + c * kReplicates, v.begin() + (c + 1) * kReplicates);
    };
    auto add = [&](const std::string& stat, double v) {
      res.rows.push_back({experiment, cell.eps, 1, "uniform", metric_name(cell.metric), stat, v});
    };
    const std::vector<double> cell_ks = slice(ks);
    const Stats s = stats_of(cell_ks);
    for (double v : cell_ks) add("ks", v);
    add("ks_mean", s.mean);
    add("ks_min", s.min);
    add("ks_max", s.max);
    add("acceptance_rate_mean", mean(slice(rate)));
    if (cell.subset == StatisticSubset::sd) {
      const Stats a = stats_of(slice(ks_alt));
      add("ks_alt_mean", a.mean);
      add("ks_alt_min", a.min);
      add("ks_alt_max", a.max);
    }
  }
  return res;
}

// fig5 -------------------------------------------------------------------------

FigureResult figure5(const FigureOptions& opt) {
  FigureResult res;
  const GammaModel model;
  const SummaryVector observed = observed_summaries(StatisticSubset::both);
  RandomStream pilot(opt.seed, kPilotGamma);
  const DistanceMetric metric = DistanceMetric::mahalanobis(
      estimate_covariance(model, ParamVector{16.0, 0.25}, kPilotSims, pilot));
  const GaussianRandomWalk proposal({2.0, 0.03});
  const std::array<std::size_t, 4> replicate_counts{1, 10, 25, 50};
  const std::array<Kernel, 2> kernels{Kernel::uniform, Kernel::gaussian};
  const std::array<double, 2> kappas{45.0, 50.0};
  const std::size_t n = scaled_count(2000000, opt.scale);

  struct CellOut {
    double rate = kNaN;
    std::array<std::vector<std::size_t>, 2> sojourns;
    std::array<double, 2> kappa_used{};
  };
  std::vector<CellOut> out(replicate_counts.size() * kernels.size());
  parallel_for(out.size(), [&](std::size_t cell) {
    const std::size_t S = replicate_counts[cell / kernels.size()];
    const Kernel kernel = kernels[cell % kernels.size()];
    const double eps = kernel == Kernel::uniform ? 2.0 : matched_gaussian_epsilon(2.0);
    RandomStream rng(opt.seed, kFig5Cells + cell);
    const ChainTrace tr =
        replicate_mcmc_run(model, proposal, WeightSpec(kernel, metric, eps),
                           EpsilonSchedule::fixed(eps), observed, ParamVector{16.0, 0.25}, n,
                           S, rng);
    out[cell].rate = acceptance_rate(tr);
    for (std::size_t k = 0; k < kappas.size(); ++k) {
      double kappa = kappas[k];
      std::vector<std::size_t> lengths = sojourn_lengths(tr, 0, kappa);
      while (lengths.empty() && kappa > 20.0) {
        kappa -= 5.0;
        lengths = sojourn_lengths(tr, 0, kappa);
      }
      out[cell].sojourns[k] = std::move(lengths);
      out[cell].kappa_used[k] = kappa;
    }
  });

  res.extra_name = "fig5_sojourns";
  res.extra_header = "S,kernel,kappa,length";
  for (std::size_t cell = 0; cell < out.size(); ++cell) {
    const std::size_t S = replicate_counts[cell / kernels.size()];
    const Kernel kernel = kernels[cell % kernels.size()];
    const double eps = kernel == Kernel::uniform ? 2.0 : matched_gaussian_epsilon(2.0);
    auto add = [&](const std::string& stat, double v) {
      res.rows.push_back({"fig5", eps, S, kernel_name(kernel), "mahalanobis", stat, v});
    };
    add("acceptance_rate", out[cell].rate);
    for (std::size_t k = 0; k < kappas.size(); ++k) {
      const std::string tag = "_kappa" + eps_label(kappas[k]);
      const std::vector<std::size_t>& lengths = out[cell].sojourns[k];
      const std::vector<double> v(lengths.begin(), lengths.end());
      if (out[cell].kappa_used[k] != kappas[k]) {
        res.warnings.push_back("fig5 S=" + std::to_string(S) + " " + kernel_name(kernel) +
                               ": no sojourns above kappa=" + eps_label(kappas[k]) +
                               ", lowered to " + eps_label(out[cell].kappa_used[k]));
      }
      add("kappa_used" + tag, out[cell].kappa_used[k]);
      add("sojourn_count" + tag, static_cast<double>(v.size()));
      add("sojourn_median" + tag, v.empty() ? kNaN : median(v));
      add("sojourn_q25" + tag, v.empty() ? kNaN : quantile(v, 0.25));
      add("sojourn_q75" + tag, v.empty() ? kNaN : quantile(v, 0.75));
      add("sojourn_max" + tag, v.empty() ? kNaN : *std::max_element(v.begin(), v.end()));
      for (std::size_t len : lengths) {
        res.extra_lines.push_back(std::to_string(S) + "," + kernel_name(kernel) + "," +
                                  format_double(out[cell].kappa_used[k]) + "," +
                                  std::to_string(len));
      }
    }
  }
  return res;
}

// fig6 -------------------------------------------------------------------------

FigureResult figure6(const FigureOptions& opt) {
  FigureResult res;
  const SummaryVector observed = observed_summaries(StatisticSubset::both);
  const std::size_t n = scaled_count(50000, opt.scale);
  ErrorAugmentation aug;
  aug.replicates = 50;
  aug.tau_prior_scales = {0.75};
  aug.tau_proposal_scales = {0.3};

  const GammaModel gamma;
  const ExponentialModel exponential;
  const GaussianRandomWalk gamma_step({1.0, 0.02});
  const GaussianRandomWalk exponential_step({0.05});
  std::vector<ChainTrace> traces(2);
  parallel_for(2, [&](std::size_t job) {
    RandomStream rng(opt.seed, kFig6Chains + job);
    traces[job] = job == 0 ? error_augmented_run(gamma, gamma_step, aug, observed,
                                                 ParamVector{16.0, 0.25}, n, rng)
                           : error_augmented_run(exponential, exponential_step, aug, observed,
                                                 ParamVector{0.25}, n, rng);
  });

  for (std::size_t job = 0; job < traces.size(); ++job) {
    const ChainTrace& tr = traces[job];
    const std::string experiment = job == 0 ? "fig6_gamma" : "fig6_exponential";
    auto add = [&](const std::string& stat, double v) {
      res.rows.push_back({experiment, kNaN, aug.replicates, "biweight", "euclidean", stat, v});
    };
    add("acceptance_rate", tr.empty() ? kNaN : acceptance_rate(tr));
    const std::size_t burn = tr.size() / 10;
    for (std::size_t r = 0; r < tr.tau_dim(); ++r) {
      const std::vector<double> all = tr.tau_component(r);
      const std::vector<double> tau(all.begin() + static_cast<std::ptrdiff_t>(burn), all.end());
      const SampleSummary s = summarize_sample(tau);
      const std::string t = "tau_" + std::to_string(r + 1);
      add("mean_" + t, s.mean);
      add("hpd50_lo_" + t, s.hpd50.lo);
      add("hpd50_hi_" + t, s.hpd50.hi);
    }
    for (const std::string& w : tr.metadata().warnings) res.warnings.push_back(experiment + ": " + w);
    if (opt.keep_traces) res.traces.emplace_back(experiment, tr);
  }
  return res;
}

}  // namespace

std::size_t scaled_count(std::size_t base, double scale) {
  const double v = std::round(static_cast<double>(base) * scale);
  return v < 1.0 ? 1 : static_cast<std::size_t>(v);
}

const std::vector<std::string>& figure_ids() {
  static const std::vector<std::string> ids{"fig2", "fig3", "fig4", "fig5", "fig6"};
  return ids;
}

FigureResult run_figure(std::string_view id, const FigureOptions& options) {
  if (!(options.scale > 0.0) || !std::isfinite(options.scale)) {
    throw ConfigError("figure scale must be positive and finite");
  }
  FigureResult res;
  if (id == "fig2") {
    res = figure2(options);
  } else if (id == "fig3") {
    res = figure3(options);
  } else if (id == "fig4") {
    res = figure4(options);
  } else if (id == "fig5") {
    res = figure5(options);
  } else if (id == "fig6") {
    res = figure6(options);
  } else {
    throw ConfigError("unknown figure id '" + std::string(id) + "' (expected fig2..fig6)");
  }
  res.id = std::string(id);
  return res;
}

void write_figure(const FigureResult& result, const FigureOptions& options,
                  const std::filesystem::path& dir) {
  KeyValues meta{{"figure", result.id},
                 {"seed", std::to_string(options.seed)},
                 {"scale", format_double(options.scale)}};
  for (std::size_t i = 0; i < result.warnings.size(); ++i) {
    meta.emplace_back("warning_" + std::to_string(i), result.warnings[i]);
  }
  write_rows_file(dir, result.id, result.rows, meta);
  for (const auto& [name, trace] : result.traces) {
    ChainTrace copy = trace;
    write_trace_files(dir, name, copy);
  }
  if (!result.extra_name.empty()) {
    std::ofstream out(dir / (result.extra_name + ".csv"), std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + result.extra_name + ".csv");
    out << result.extra_header << '\n';
    for (const std::string& line : result.extra_lines) out << line << '\n';
  }
}

}  // namespace lfmcmc
