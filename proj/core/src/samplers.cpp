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

#include "lfmcmc/samplers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "lfmcmc/diagnostics.hpp"
#include "lfmcmc/errors.hpp"

namespace lfmcmc {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr double kPosInf = std::numeric_limits<double>::infinity();

void check_inputs(const GenerativeModel& model, const DistanceMetric& metric,
                  const SummaryVector& observed, const ParamVector& theta0) {
  if (theta0.size() != model.param_dim()) {
    throw ContractViolation("theta0 has length " + std::to_string(theta0.size()) +
                            ", model '" + std::string(model.name()) + "' expects " +
                            std::to_string(model.param_dim()));
  }
  if (observed.size() != model.summary_dim()) {
    throw ContractViolation("observed summaries have length " +
                            std::to_string(observed.size()) + ", model expects " +
                            std::to_string(model.summary_dim()));
  }
  if (metric.dim() != model.summary_dim()) {
    throw ConfigError("distance metric has dimension " + std::to_string(metric.dim()) +
                      ", model summaries have " + std::to_string(model.summary_dim()));
  }
}

void check_schedule(const WeightSpec& spec, const EpsilonSchedule& schedule) {
  const double target = schedule.target();
  if (std::abs(spec.epsilon() - target) > 1e-12 * std::max(1.0, target)) {
    throw ConfigError("weight epsilon " + std::to_string(spec.epsilon()) +
                      " differs from the schedule target " + std::to_string(target));
  }
}

void check_prior_support(const GenerativeModel& model, const ParamVector& theta) {
  if (!std::isfinite(model.prior_log_density(theta))) {
    throw ConfigError("theta0 lies outside the support of the '" +
                      std::string(model.name()) + "' prior");
  }
}

TraceMetadata base_metadata(std::string sampler, const GenerativeModel& model,
                            const RandomStream& rng) {
  TraceMetadata meta;
  meta.sampler = std::move(sampler);
  meta.seed = rng.seed();
  meta.stream_id = rng.stream_id();
  meta.param_names = model.param_names();
  return meta;
}

void simulate_distances(const GenerativeModel& model, const DistanceMetric& metric,
                        const SummaryVector& observed, const ParamVector& theta,
                        RandomStream& rng, std::vector<double>& rhos) {
  for (double& rho : rhos) rho = metric(model.simulate_summary(theta, rng), observed);
}

double min_of(const std::vector<double>& v) { return *std::min_element(v.begin(), v.end()); }

double replicate_log_weight(Kernel kernel, double epsilon, const std::vector<double>& rhos,
                            std::vector<double>& scratch) {
  for (std::size_t s = 0; s < rhos.size(); ++s) scratch[s] = log_weight(kernel, epsilon, rhos[s]);
  return log_mean_weight(scratch);
}

struct ChainState {
  ParamVector theta;
  std::vector<double> rhos;
  double epsilon = 0.0;
  double log_prior = 0.0;
};

// Finds a starting state with non-zero weight at eps_0.
ChainState initialize(const GenerativeModel& model, const WeightSpec& spec,
                      const EpsilonSchedule& schedule, const SummaryVector& observed,
                      const ParamVector& theta0, std::size_t replicates, RandomStream& rng,
                      const InitOptions& init) {
  ChainState state{theta0, std::vector<double>(replicates), 0.0, 0.0};
  std::vector<double> scratch(replicates);
  const DistanceMetric& metric = spec.metric();

  if (init.strategy == InitStrategy::prior_draws) {
    if (!model.has_prior_sampler()) {
      throw ConfigError("init strategy prior_draws needs a proper prior; model '" +
                        std::string(model.name()) + "' has none");
    }
  } else {
    check_prior_support(model, theta0);
  }

  if (schedule.kind() == ScheduleKind::self_scaling) {
    if (init.strategy == InitStrategy::prior_draws) state.theta = model.sample_prior(rng);
    simulate_distances(model, metric, observed, state.theta, rng, state.rhos);
    state.epsilon = schedule.initial_epsilon(min_of(state.rhos));
    state.log_prior = model.prior_log_density(state.theta);
    return state;
  }

  state.epsilon = schedule.initial_epsilon(0.0);
  for (std::size_t attempt = 0; attempt < init.budget; ++attempt) {
    if (init.strategy == InitStrategy::prior_draws) state.theta = model.sample_prior(rng);
    simulate_distances(model, metric, observed, state.theta, rng, state.rhos);
    if (std::isfinite(replicate_log_weight(spec.kernel(), state.epsilon, state.rhos, scratch))) {
      state.log_prior = model.prior_log_density(state.theta);
      return state;
    }
  }
  throw InitializationError("no starting state with non-zero kernel weight at epsilon " +
                            std::to_string(state.epsilon) + " after " +
                            std::to_string(init.budget) + " attempts (strategy " +
                            std::string(to_string(init.strategy)) + ")");
}

Phase phase_of(double epsilon, double target) {
  return epsilon > target ? Phase::burn_in : Phase::sampling;
}

}  // namespace

std::string_view to_string(InitStrategy strategy) {
  switch (strategy) {
    case InitStrategy::automatic:
      return "automatic";
    case InitStrategy::repeat_simulation:
      return "repeat_simulation";
    case InitStrategy::prior_draws:
      return "prior_draws";
  }
  return "unknown";
}

InitStrategy parse_init_strategy(std::string_view name) {
  if (name == "automatic") return InitStrategy::automatic;
  if (name == "repeat_simulation") return InitStrategy::repeat_simulation;
  if (name == "prior_draws") return InitStrategy::prior_draws;
  throw ConfigError("unknown init strategy '" + std::string(name) + "'");
}

// Rejection ------------------------------------------------------------------

RejectionResult rejection_sample(const GenerativeModel& model, const WeightSpec& spec,
                                 const SummaryVector& observed, std::size_t n_accept,
                                 std::size_t max_draws, RandomStream& rng) {
  if (!model.has_prior_sampler()) {
    throw ConfigError("rejection sampling needs a proper prior; model '" +
                      std::string(model.name()) + "' has none");
  }
  if (n_accept == 0) throw ConfigError("rejection n_accept must be positive");
  check_inputs(model, spec.metric(), observed, ParamVector(model.param_dim()));

  RejectionResult result;
  while (result.accepted.size() < n_accept && result.draws < max_draws) {
    ++result.draws;
    ParamVector theta = model.sample_prior(rng);
    const double rho = spec.metric()(model.simulate_summary(theta, rng), observed);
    const double lw = log_weight(spec, rho);
    if (!std::isfinite(lw)) continue;
    if (spec.kernel() != Kernel::uniform && !(std::log(rng.uniform()) < lw)) continue;
    result.accepted.push_back(std::move(theta));
  }
  if (result.accepted.size() < n_accept) {
    result.warning = "rejection sampler accepted " + std::to_string(result.accepted.size()) +
                     " of " + std::to_string(n_accept) + " requested after " +
                     std::to_string(result.draws) + " draws";
  }
  return result;
}

// MH building blocks ---------------------------------------------------------

double log_acceptance_ratio(const MhTerms& terms) {
  const double numerator = terms.log_weight_proposed + terms.log_prior_proposed;
  if (std::isnan(numerator) || numerator == kNegInf) return kNegInf;
  if (terms.log_prior_current == kNegInf) {
    throw ContractViolation("current state has zero prior density");
  }
  if (terms.log_weight_current == kNegInf) return kPosInf;
  return (numerator + terms.log_q_reverse) -
         (terms.log_weight_current + terms.log_prior_current + terms.log_q_forward);
}

bool mh_accept(double log_ratio, RandomStream& rng) {
  if (log_ratio >= 0.0) return true;
  if (log_ratio == kNegInf || std::isnan(log_ratio)) return false;
  return std::log(rng.uniform()) < log_ratio;
}

double log_mean_weight(std::span<const double> log_weights) {
  if (log_weights.empty()) throw ContractViolation("log_mean_weight needs weights");
  const double m = *std::max_element(log_weights.begin(), log_weights.end());
  if (m == kNegInf) return kNegInf;
  double sum = 0.0;
  for (double w : log_weights) sum += std::exp(w - m);
  return m + std::log(sum) - std::log(static_cast<double>(log_weights.size()));
}

// LF-MCMC -----------------------------------------------------------------------

ChainTrace lf_mcmc_run(const GenerativeModel& model, const ProposalDistribution& proposal,
                       const WeightSpec& spec, const EpsilonSchedule& schedule,
                       const SummaryVector& observed, const ParamVector& theta0,
                       std::size_t n_iter, RandomStream& rng, const InitOptions& init) {
  check_inputs(model, spec.metric(), observed, theta0);
  check_schedule(spec, schedule);

  ChainTrace trace(model.param_dim());
  trace.metadata() = base_metadata("lf_mcmc", model, rng);
  trace.reserve(n_iter);

  ChainState state = initialize(model, spec, schedule, observed, theta0, 1, rng, init);
  ParamVector theta = state.theta;
  double rho = state.rhos[0];
  double epsilon = state.epsilon;
  double log_prior = state.log_prior;
  const double target = schedule.target();

  for (std::size_t t = 1; t <= n_iter; ++t) {
    ParamVector candidate = proposal.sample(theta, rng);
    const double lp_new = model.prior_log_density(candidate);
    bool accepted = false;
    double rho_new = epsilon;
    if (lp_new != kNegInf) {
      rho_new = spec.metric()(model.simulate_summary(candidate, rng), observed);
      const double eps_step = schedule.step_epsilon(t, epsilon, rho_new);
      const MhTerms terms{log_weight(spec.kernel(), eps_step, rho_new), lp_new,
                          proposal.log_density(candidate, theta),
                          log_weight(spec.kernel(), eps_step, rho), log_prior,
                          proposal.log_density(theta, candidate)};
      accepted = mh_accept(log_acceptance_ratio(terms), rng);
    }
    epsilon = schedule.next_epsilon({t, epsilon, rho_new, accepted});
    if (accepted) {
      theta = std::move(candidate);
      rho = rho_new;
      log_prior = lp_new;
    }
    trace.append(phase_of(epsilon, target), accepted, epsilon, rho, theta.values());
  }
  return trace;
}

ChainTrace replicate_mcmc_run(const GenerativeModel& model,
                              const ProposalDistribution& proposal, const WeightSpec& spec,
                              const EpsilonSchedule& schedule, const SummaryVector& observed,
                              const ParamVector& theta0, std::size_t n_iter,
                              std::size_t replicates, RandomStream& rng,
                              const InitOptions& init) {
  if (replicates == 0) throw ConfigError("replicate count S must be at least 1");
  check_inputs(model, spec.metric(), observed, theta0);
  check_schedule(spec, schedule);

  ChainTrace trace(model.param_dim());
  trace.metadata() = base_metadata("replicate_mcmc", model, rng);
  trace.reserve(n_iter);

  ChainState state = initialize(model, spec, schedule, observed, theta0, replicates, rng, init);
  std::vector<double> rhos_new(replicates);
  std::vector<double> scratch(replicates);
  const double target = schedule.target();

  for (std::size_t t = 1; t <= n_iter; ++t) {
    ParamVector candidate = proposal.sample(state.theta, rng);
    const double lp_new = model.prior_log_density(candidate);
    bool accepted = false;
    double rho_new = state.epsilon;
    if (lp_new != kNegInf) {
      simulate_distances(model, spec.metric(), observed, candidate, rng, rhos_new);
      rho_new = min_of(rhos_new);
      const double eps_step = schedule.step_epsilon(t, state.epsilon, rho_new);
      const double lw_new = replicate_log_weight(spec.kernel(), eps_step, rhos_new, scratch);
      const double lw_cur = replicate_log_weight(spec.kernel(), eps_step, state.rhos, scratch);
      const MhTerms terms{lw_new, lp_new, proposal.log_density(candidate, state.theta),
                          lw_cur, state.log_prior,
                          proposal.log_density(state.theta, candidate)};
      accepted = mh_accept(log_acceptance_ratio(terms), rng);
    }
    state.epsilon = schedule.next_epsilon({t, state.epsilon, rho_new, accepted});
    if (accepted) {
      state.theta = std::move(candidate);
      std::swap(state.rhos, rhos_new);
      state.log_prior = lp_new;
    }
    trace.append(phase_of(state.epsilon, target), accepted, state.epsilon, state.rhos[0],
                 state.theta.values());
  }
  return trace;
}

// Tolerance-augmented ----------------------------------------------------------

double tempered_log_weight(Kernel kernel, std::size_t summary_dim,
                           double pseudo_prior_rate, double epsilon, double rho) {
  if (!(epsilon > 0.0)) return kNegInf;
  const double lw = log_weight(kernel, epsilon, rho);
  if (lw == kNegInf) return kNegInf;
  return lw + log_epsilon_normalizer(kernel, epsilon, summary_dim) +
         std::log(pseudo_prior_rate) - pseudo_prior_rate * epsilon;
}

ChainTrace epsilon_augmented_run(const GenerativeModel& model,
                                 const ProposalDistribution& proposal, Kernel kernel,
                                 const DistanceMetric& metric,
                                 const EpsilonAugmentation& augmentation,
                                 const SummaryVector& observed, const ParamVector& theta0,
                                 std::size_t n_iter, RandomStream& rng) {
  check_inputs(model, metric, observed, theta0);
  check_prior_support(model, theta0);
  if (!(augmentation.pseudo_prior_rate > 0.0)) {
    throw ConfigError("epsilon pseudo-prior rate must be positive");
  }
  if (!(augmentation.proposal_scale > 0.0)) {
    throw ConfigError("epsilon proposal scale must be positive");
  }
  if (!(augmentation.epsilon0 > 0.0)) throw ConfigError("epsilon0 must be positive");
  const std::size_t dim = model.summary_dim();
  const double rate = augmentation.pseudo_prior_rate;
  // Rejects kernels without a closed-form normalization up front.
  log_epsilon_normalizer(kernel, 1.0, dim);

  ChainTrace trace(model.param_dim());
  trace.metadata() = base_metadata("epsilon_augmented", model, rng);
  trace.reserve(n_iter);

  ParamVector theta = theta0;
  double rho = metric(model.simulate_summary(theta, rng), observed);
  double epsilon = kernel == Kernel::uniform ? std::max(augmentation.epsilon0, rho)
                                             : augmentation.epsilon0;
  double log_prior = model.prior_log_density(theta);
  double log_target = tempered_log_weight(kernel, dim, rate, epsilon, rho);

  for (std::size_t t = 1; t <= n_iter; ++t) {
    ParamVector candidate = proposal.sample(theta, rng);
    const double eps_new = epsilon * std::exp(augmentation.proposal_scale * rng.normal());
    const double lp_new = model.prior_log_density(candidate);
    bool accepted = false;
    double rho_new = 0.0;
    double log_target_new = kNegInf;
    if (lp_new != kNegInf) {
      rho_new = metric(model.simulate_summary(candidate, rng), observed);
      log_target_new = tempered_log_weight(kernel, dim, rate, eps_new, rho_new);
      const MhTerms terms{log_target_new, lp_new, proposal.log_density(candidate, theta),
                          log_target, log_prior, proposal.log_density(theta, candidate)};
      double log_ratio = log_acceptance_ratio(terms);
      if (std::isfinite(log_ratio)) log_ratio += std::log(eps_new) - std::log(epsilon);
      accepted = mh_accept(log_ratio, rng);
    }
    if (accepted) {
      theta = std::move(candidate);
      rho = rho_new;
      epsilon = eps_new;
      log_prior = lp_new;
      log_target = log_target_new;
    }
    trace.append(Phase::sampling, accepted, epsilon, rho, theta.values());
  }
  return trace;
}

std::vector<double> filter_by_epsilon(const ChainTrace& trace, std::size_t component,
                                      double eps_star) {
  if (component >= trace.param_dim()) {
    throw ContractViolation("filter_by_epsilon: component index out of range");
  }
  std::vector<double> out;
  for (std::size_t i = 0; i < trace.size(); ++i) {
    if (trace.epsilon(i) <= eps_star) out.push_back(trace.theta(i)[component]);
  }
  return out;
}

// Error-augmented -----------------------------------------------------------------

double laplace_log_density(double tau, double delta) {
  if (!(delta > 0.0)) throw ContractViolation("Laplace scale must be positive");
  return -std::abs(tau) / delta - std::log(2.0 * delta);
}

double interquartile_range(std::span<const double> values) {
  return quantile(values, 0.75) - quantile(values, 0.25);
}

double error_kde_log_density(std::span<const double> errors, double bandwidth, double tau,
                             bool normalize) {
  if (errors.empty()) throw ContractViolation("error density needs at least one error");
  if (!(bandwidth > 0.0)) throw ContractViolation("error density bandwidth must be positive");
  double sum = 0.0;
  for (double e : errors) sum += biweight_density((tau - e) / bandwidth);
  if (!(sum > 0.0)) return kNegInf;
  const double scale = static_cast<double>(errors.size()) * (normalize ? bandwidth : 1.0);
  return std::log(sum) - std::log(scale);
}

namespace {

struct ErrorState {
  std::vector<std::vector<double>> errors;  // [r][s]
  std::vector<double> bandwidths;
  double first_rho = 0.0;
};

std::vector<double> broadcast(const std::vector<double>& values, std::size_t dim,
                              const char* what) {
  if (values.size() != 1 && values.size() != dim) {
    throw ConfigError(std::string(what) + " needs 1 or " + std::to_string(dim) +
                      " values, got " + std::to_string(values.size()));
  }
  for (double v : values) {
    if (!(v > 0.0)) throw ConfigError(std::string(what) + " must be positive");
  }
  if (values.size() == 1) return std::vector<double>(dim, values[0]);
  return values;
}

void simulate_errors(const GenerativeModel& model, const DistanceMetric& metric,
                     const SummaryVector& observed, const ParamVector& theta,
                     double min_bandwidth, RandomStream& rng, ErrorState& out,
                     std::size_t& floored) {
  const std::size_t replicates = out.errors.empty() ? 0 : out.errors[0].size();
  for (std::size_t s = 0; s < replicates; ++s) {
    const SummaryVector x = model.simulate_summary(theta, rng);
    if (s == 0) out.first_rho = metric(x, observed);
    for (std::size_t r = 0; r < out.errors.size(); ++r) out.errors[r][s] = x[r] - observed[r];
  }
  for (std::size_t r = 0; r < out.errors.size(); ++r) {
    const double h = 2.0 * interquartile_range(out.errors[r]);
    if (h < min_bandwidth) {
      ++floored;
      out.bandwidths[r] = min_bandwidth;
    } else {
      out.bandwidths[r] = h;
    }
  }
}

double error_log_target(const ErrorState& state, std::span<const double> tau,
                        std::span<const double> prior_scales, bool normalize) {
  double min_log_xi = kPosInf;
  double log_tau_prior = 0.0;
  for (std::size_t r = 0; r < tau.size(); ++r) {
    min_log_xi =
        std::min(min_log_xi, error_kde_log_density(state.errors[r], state.bandwidths[r], tau[r], normalize));
    log_tau_prior += laplace_log_density(tau[r], prior_scales[r]);
  }
  if (min_log_xi == kNegInf) return kNegInf;
  return min_log_xi + log_tau_prior;
}

}  // namespace

ChainTrace error_augmented_run(const GenerativeModel& model,
                               const ProposalDistribution& proposal,
                               const ErrorAugmentation& augmentation,
                               const SummaryVector& observed, const ParamVector& theta0,
                               std::size_t n_iter, RandomStream& rng) {
  const std::size_t dim = model.summary_dim();
  const DistanceMetric metric = augmentation.metric.value_or(DistanceMetric::euclidean(dim));
  check_inputs(model, metric, observed, theta0);
  check_prior_support(model, theta0);
  const std::size_t replicates = augmentation.replicates;
  if (replicates < 2) throw ConfigError("error-augmented sampler needs S >= 2");
  if (!(augmentation.min_bandwidth > 0.0)) throw ConfigError("min_bandwidth must be positive");
  const std::vector<double> prior_scales =
      broadcast(augmentation.tau_prior_scales, dim, "tau prior scales");
  const std::vector<double> step_scales =
      broadcast(augmentation.tau_proposal_scales, dim, "tau proposal scales");

  ChainTrace trace(model.param_dim(), dim);
  trace.metadata() = base_metadata("error_augmented", model, rng);
  trace.reserve(n_iter);

  std::size_t floored = 0;
  ErrorState current{std::vector<std::vector<double>>(dim, std::vector<double>(replicates)),
                     std::vector<double>(dim), 0.0};
  ErrorState next = current;
  ParamVector theta = theta0;
  simulate_errors(model, metric, observed, theta, augmentation.min_bandwidth, rng, current,
                  floored);
  std::vector<double> tau(dim);
  for (std::size_t r = 0; r < dim; ++r) tau[r] = median(current.errors[r]);
  double log_prior = model.prior_log_density(theta);
  double log_target = error_log_target(current, tau, prior_scales, augmentation.normalize_bandwidth);
  if (log_target == kNegInf) {
    throw InitializationError("error density is zero at the initial tau");
  }

  std::vector<double> tau_new(dim);
  for (std::size_t t = 1; t <= n_iter; ++t) {
    ParamVector candidate = proposal.sample(theta, rng);
    for (std::size_t r = 0; r < dim; ++r) tau_new[r] = tau[r] + step_scales[r] * rng.normal();
    const double lp_new = model.prior_log_density(candidate);
    bool accepted = false;
    double log_target_new = kNegInf;
    if (lp_new != kNegInf) {
      simulate_errors(model, metric, observed, candidate, augmentation.min_bandwidth, rng,
                      next, floored);
      log_target_new = error_log_target(next, tau_new, prior_scales, augmentation.normalize_bandwidth);
      const MhTerms terms{log_target_new, lp_new, proposal.log_density(candidate, theta),
                          log_target, log_prior, proposal.log_density(theta, candidate)};
      accepted = mh_accept(log_acceptance_ratio(terms), rng);
    }
    if (accepted) {
      theta = std::move(candidate);
      std::swap(current, next);
      std::swap(tau, tau_new);
      log_prior = lp_new;
      log_target = log_target_new;
    }
    trace.append(Phase::sampling, accepted, current.bandwidths[0], current.first_rho,
                 theta.values(), tau);
  }
  if (floored > 0) {
    trace.metadata().warnings.push_back("bandwidth floored at min_bandwidth " +
                                        std::to_string(floored) + " times");
  }
  return trace;
}

}  // namespace lfmcmc
