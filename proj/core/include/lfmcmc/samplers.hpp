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

// Likelihood-free samplers.
//
// All MCMC samplers target an augmented posterior over (theta, x) in which the
// intractable likelihood pi(x | theta) appears in both the target and the
// proposal and cancels from the Metropolis-Hastings ratio. Only the kernel
// weight pi_eps(y | x, theta), the prior and the parameter proposal remain:
//
//   log alpha = [log w(rho') + log pi(theta') + log q(theta', theta)]
//             - [log w(rho)  + log pi(theta)  + log q(theta, theta')]
//
// Every sampler consumes its RandomStream in a fixed order (proposal, any
// auxiliary proposals, simulations, accept uniform), so a run is a pure
// function of its inputs and stream state.

#ifndef LFMCMC_SAMPLERS_HPP_
#define LFMCMC_SAMPLERS_HPP_

#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lfmcmc/distance.hpp"
#include "lfmcmc/kernel.hpp"
#include "lfmcmc/model.hpp"
#include "lfmcmc/random.hpp"
#include "lfmcmc/schedule.hpp"
#include "lfmcmc/trace.hpp"

namespace lfmcmc {

// How to find (theta_0, x_0) with non-zero kernel weight.
//   automatic          self_scaling schedules start at eps_0 = rho(T(x_0), T(y))
//                      and always succeed; other schedules fall back to
//                      repeat_simulation
//   repeat_simulation  redraw x_0 ~ pi(x | theta_0) until the weight is non-zero
//   prior_draws        redraw (theta_0, x_0) from the prior (proper priors only)
enum class InitStrategy { automatic, repeat_simulation, prior_draws };

std::string_view to_string(InitStrategy strategy);
InitStrategy parse_init_strategy(std::string_view name);

struct InitOptions {
  InitStrategy strategy = InitStrategy::automatic;
  std::size_t budget = 100000;
};

// Rejection ABC ----------------------------------------------------------

struct RejectionResult {
  std::vector<ParamVector> accepted;
  std::size_t draws = 0;
  std::optional<std::string> warning;  // set when fewer than n_accept were found
};

// Draws theta' from the prior and T(x') from the simulator. The uniform kernel
// accepts iff rho <= eps; other kernels accept with probability
// exp(log_weight(rho) - log_weight(0)).
RejectionResult rejection_sample(const GenerativeModel& model, const WeightSpec& spec,
                                 const SummaryVector& observed, std::size_t n_accept,
                                 std::size_t max_draws, RandomStream& rng);

// Metropolis-Hastings building blocks -------------------------------------

struct MhTerms {
  double log_weight_proposed = 0.0;
  double log_prior_proposed = 0.0;
  double log_q_reverse = 0.0;  // log q(theta', theta)
  double log_weight_current = 0.0;
  double log_prior_current = 0.0;
  double log_q_forward = 0.0;  // log q(theta, theta')
};

// log alpha. -inf when the proposal has zero weight or prior. When the current
// weight is zero (only possible while the tolerance is still shrinking during
// burn-in) a feasible proposal gets +inf, i.e. is always accepted.
double log_acceptance_ratio(const MhTerms& terms);

inline double acceptance_probability(double log_ratio) {
  return log_ratio >= 0.0 ? 1.0 : std::exp(log_ratio);
}

// Accepts without touching the stream when log_ratio >= 0 or == -inf;
// otherwise draws one uniform.
bool mh_accept(double log_ratio, RandomStream& rng);

// log((1/S) sum_s exp(log_weights[s])), computed stably. Exactly
// log_weights[0] when S == 1.
double log_mean_weight(std::span<const double> log_weights);

// LF-MCMC ------------------------------------------------------------------

// One simulated dataset per step. The weight epsilon must equal the
// schedule's target.
ChainTrace lf_mcmc_run(const GenerativeModel& model, const ProposalDistribution& proposal,
                       const WeightSpec& spec, const EpsilonSchedule& schedule,
                       const SummaryVector& observed, const ParamVector& theta0,
                       std::size_t n_iter, RandomStream& rng,
                       const InitOptions& init = {});

// S simulated datasets per step; the kernel term is the average weight over
// the S replicates, in numerator and denominator alike. With S == 1 this is
// bit-identical to lf_mcmc_run on the same stream.
ChainTrace replicate_mcmc_run(const GenerativeModel& model,
                              const ProposalDistribution& proposal, const WeightSpec& spec,
                              const EpsilonSchedule& schedule, const SummaryVector& observed,
                              const ParamVector& theta0, std::size_t n_iter,
                              std::size_t replicates, RandomStream& rng,
                              const InitOptions& init = {});

// Tolerance-augmented sampler ------------------------------------------------

struct EpsilonAugmentation {
  double pseudo_prior_rate = 1.0;  // pi(eps) = rate * exp(-rate * eps)
  double proposal_scale = 0.5;     // log-normal random walk sd on log(eps)
  double epsilon0 = 1.0;           // raised to rho_0 if needed
};

// log pi_eps(y | x) + log pi(eps), including the eps^-R kernel normalization.
double tempered_log_weight(Kernel kernel, std::size_t summary_dim,
                           double pseudo_prior_rate, double epsilon, double rho);

// Joint MH over (theta, x, eps). The trace's epsilon column holds eps_t.
ChainTrace epsilon_augmented_run(const GenerativeModel& model,
                                 const ProposalDistribution& proposal, Kernel kernel,
                                 const DistanceMetric& metric,
                                 const EpsilonAugmentation& augmentation,
                                 const SummaryVector& observed, const ParamVector& theta0,
                                 std::size_t n_iter, RandomStream& rng);

// {theta_t[component] : eps_t <= eps_star}.
std::vector<double> filter_by_epsilon(const ChainTrace& trace, std::size_t component,
                                      double eps_star);

// Error-distribution augmented sampler ---------------------------------------

struct ErrorAugmentation {
  std::size_t replicates = 50;
  std::vector<double> tau_prior_scales;     // delta_r, one per summary
  std::vector<double> tau_proposal_scales;  // one per summary, or a single value
  double min_bandwidth = 1e-6;
  // Divide each density estimate by its bandwidth h_r. Without it the target
  // uses the raw kernel average (1 / S) sum_s K(.), which stays bounded as the
  // replicate spread collapses.
  bool normalize_bandwidth = true;
  // Used only for the trace's rho column; Euclidean when absent.
  std::optional<DistanceMetric> metric;
};

// log of the Laplace density exp(-|tau| / delta) / (2 delta).
double laplace_log_density(double tau, double delta);

// Interquartile range with type-7 quantiles.
double interquartile_range(std::span<const double> values);

// log xi_r(tau) = log[(1 / (S h)) sum_s K((tau - e_s) / h)] with the biweight
// kernel K. -inf when no error lies within one bandwidth of tau.
double error_kde_log_density(std::span<const double> errors, double bandwidth, double tau,
                             bool normalize = true);

// Joint MH over (theta, x_{1:S}, tau) targeting
//   min_r xi_r(tau_r | y, x_{1:S}) pi(theta) prod_r pi(tau_r)
// with bandwidths h_r = 2 IQR{T_r(x^s) - T_r(y)} recomputed from each
// proposal's replicates. Proposals are a single block: theta' from the
// parameter proposal, fresh x'_{1:S}, tau' by Gaussian random walk. The trace
// records tau_t; its epsilon column holds h_1 of the current state.
ChainTrace error_augmented_run(const GenerativeModel& model,
                               const ProposalDistribution& proposal,
                               const ErrorAugmentation& augmentation,
                               const SummaryVector& observed, const ParamVector& theta0,
                               std::size_t n_iter, RandomStream& rng);

}  // namespace lfmcmc

#endif  // LFMCMC_SAMPLERS_HPP_
