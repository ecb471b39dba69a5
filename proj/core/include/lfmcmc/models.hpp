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

// Built-in models: a Normal toy with a closed-form likelihood-free posterior,
// and the Exponential / Gamma pair fitted to T(y) = (mean, sd) = (4, 1) from
// n = 20 observations.

#ifndef LFMCMC_MODELS_HPP_
#define LFMCMC_MODELS_HPP_

#include <cstddef>
#include <optional>
#include <string_view>

#include "lfmcmc/diagnostics.hpp"
#include "lfmcmc/kernel.hpp"
#include "lfmcmc/model.hpp"

namespace lfmcmc {

// theta with flat prior on [prior_lo, prior_hi]; T(x) = xbar ~ N(theta, 1/e).
// Observed y = 0.
class NormalToy final : public GenerativeModel {
 public:
  explicit NormalToy(double prior_lo = -50.0, double prior_hi = 50.0,
                     double efficiency = 1.0);

  std::string_view name() const override { return "normal_toy"; }
  std::size_t param_dim() const override { return 1; }
  std::size_t summary_dim() const override { return 1; }
  std::vector<std::string> param_names() const override { return {"theta"}; }
  double prior_log_density(const ParamVector& theta) const override;
  bool has_prior_sampler() const override { return true; }
  ParamVector sample_prior(RandomStream& rng) const override;
  SummaryVector simulate_summary(const ParamVector& theta,
                                 RandomStream& rng) const override;

  double efficiency() const { return efficiency_; }
  static SummaryVector observed() { return SummaryVector{0.0}; }

 private:
  double lo_, hi_, efficiency_, sd_;
};

enum class StatisticSubset { mean, sd, both };

std::string_view to_string(StatisticSubset subset);
StatisticSubset parse_statistic_subset(std::string_view name);

// Observed (ybar, s_y) = (4, 1) restricted to the subset.
SummaryVector observed_summaries(StatisticSubset subset);

// y_i ~ Exponential(lambda), i = 1..n. Flat prior on (0, inf), or on
// (0, prior_upper] when an upper bound is given (which makes it proper).
class ExponentialModel final : public GenerativeModel {
 public:
  explicit ExponentialModel(StatisticSubset subset = StatisticSubset::both,
                            std::size_t n = 20,
                            std::optional<double> prior_upper = std::nullopt);

  std::string_view name() const override { return "exponential"; }
  std::size_t param_dim() const override { return 1; }
  std::size_t summary_dim() const override {
    return subset_ == StatisticSubset::both ? 2 : 1;
  }
  std::vector<std::string> param_names() const override { return {"lambda"}; }
  double prior_log_density(const ParamVector& theta) const override;
  bool has_prior_sampler() const override { return prior_upper_.has_value(); }
  ParamVector sample_prior(RandomStream& rng) const override;
  SummaryVector simulate_summary(const ParamVector& theta,
                                 RandomStream& rng) const override;

  StatisticSubset subset() const { return subset_; }
  std::size_t n() const { return n_; }

 private:
  StatisticSubset subset_;
  std::size_t n_;
  std::optional<double> prior_upper_;
};

// y_i ~ Gamma(shape k, scale psi), mean k psi, variance k psi^2. Flat prior on
// (0, inf)^2, or on (0, prior_upper]^2.
class GammaModel final : public GenerativeModel {
 public:
  explicit GammaModel(std::size_t n = 20,
                      std::optional<double> prior_upper = std::nullopt);

  std::string_view name() const override { return "gamma"; }
  std::size_t param_dim() const override { return 2; }
  std::size_t summary_dim() const override { return 2; }
  std::vector<std::string> param_names() const override { return {"k", "psi"}; }
  double prior_log_density(const ParamVector& theta) const override;
  bool has_prior_sampler() const override { return prior_upper_.has_value(); }
  ParamVector sample_prior(RandomStream& rng) const override;
  SummaryVector simulate_summary(const ParamVector& theta,
                                 RandomStream& rng) const override;

  std::size_t n() const { return n_; }

 private:
  std::size_t n_;
  std::optional<double> prior_upper_;
};

// (mean, sample sd with denominator n - 1).
SummaryVector mean_and_sd(std::span<const double> data);

// Closed-form likelihood-free posterior of the Normal toy, y = 0, flat prior.
// epsilon is the uniform half-width; the matched gaussian kernel has sd
// epsilon / sqrt(3).
//   uniform:  [Phi(eps - theta) - Phi(-eps - theta)] / (2 eps)
//   gaussian: N(0, 1/e + eps^2 / 3)
// The efficiency e only enters the gaussian form.
double toy_lf_posterior_density(double theta, double epsilon, Kernel kernel,
                                double efficiency = 1.0);

// CDF of the same posterior. The uniform form is N(0,1) convolved with
// U(-eps, eps), whose CDF is [G(t + eps) - G(t - eps)] / (2 eps) with
// G(z) = z Phi(z) + phi(z).
ReferenceDistribution toy_lf_reference(double epsilon, Kernel kernel,
                                       double efficiency = 1.0);

// lambda | y ~ Gamma(21, 80) under the flat prior with n = 20, ybar = 4.
ReferenceDistribution exponential_true_posterior();
inline constexpr double kExponentialPosteriorShape = 21.0;
inline constexpr double kExponentialPosteriorRate = 80.0;
// Approximate limit of the sd-only posterior (lambda = 1 / s_y = 1).
ReferenceDistribution exponential_sd_only_reference();

}  // namespace lfmcmc

#endif  // LFMCMC_MODELS_HPP_
