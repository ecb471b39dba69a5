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

#include "lfmcmc/models.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <sstream>
#include <string>

#include "lfmcmc/errors.hpp"
#include "lfmcmc/special_functions.hpp"

namespace lfmcmc {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

void require_dim(const ParamVector& theta, std::size_t dim, std::string_view model) {
  if (theta.size() != dim) {
    throw ContractViolation(std::string(model) + ": parameter vector has length " +
                            std::to_string(theta.size()) + ", expected " +
                            std::to_string(dim));
  }
}

void validate_prior_upper(const std::optional<double>& upper) {
  if (upper && !(*upper > 0.0 && std::isfinite(*upper))) {
    throw ConfigError("prior_upper must be positive and finite");
  }
}

}  // namespace

// NormalToy --------------------------------------------------------------

NormalToy::NormalToy(double prior_lo, double prior_hi, double efficiency)
    : lo_(prior_lo), hi_(prior_hi), efficiency_(efficiency),
      sd_(1.0 / std::sqrt(efficiency)) {
  if (!(prior_lo < prior_hi) || !std::isfinite(prior_lo) || !std::isfinite(prior_hi)) {
    throw ConfigError("normal_toy prior interval must be finite with lo < hi");
  }
  if (!(efficiency > 0.0 && efficiency <= 1.0)) {
    throw ConfigError("normal_toy efficiency must be in (0, 1]");
  }
}

double NormalToy::prior_log_density(const ParamVector& theta) const {
  require_dim(theta, 1, name());
  return (theta[0] >= lo_ && theta[0] <= hi_) ? 0.0 : kNegInf;
}

ParamVector NormalToy::sample_prior(RandomStream& rng) const {
  return ParamVector{lo_ + (hi_ - lo_) * rng.uniform()};
}

SummaryVector NormalToy::simulate_summary(const ParamVector& theta,
                                          RandomStream& rng) const {
  require_dim(theta, 1, name());
  return SummaryVector{rng.normal(theta[0], sd_)};
}

// Exponential / Gamma -------------------------------------------------------

std::string_view to_string(StatisticSubset subset) {
  switch (subset) {
    case StatisticSubset::mean:
      return "mean";
    case StatisticSubset::sd:
      return "sd";
    case StatisticSubset::both:
      return "both";
  }
  return "unknown";
}

StatisticSubset parse_statistic_subset(std::string_view name) {
  if (name == "mean") return StatisticSubset::mean;
  if (name == "sd") return StatisticSubset::sd;
  if (name == "both") return StatisticSubset::both;
  throw ConfigError("unknown statistic subset '" + std::string(name) + "'");
}

SummaryVector observed_summaries(StatisticSubset subset) {
  switch (subset) {
    case StatisticSubset::mean:
      return SummaryVector{4.0};
    case StatisticSubset::sd:
      return SummaryVector{1.0};
    case StatisticSubset::both:
      return SummaryVector{4.0, 1.0};
  }
  return SummaryVector{4.0, 1.0};
}

SummaryVector mean_and_sd(std::span<const double> data) {
  const double n = static_cast<double>(data.size());
  double sum = 0.0;
  for (double v : data) sum += v;
  const double m = sum / n;
  double ss = 0.0;
  for (double v : data) ss += (v - m) * (v - m);
  return SummaryVector{m, std::sqrt(ss / (n - 1.0))};
}

ExponentialModel::ExponentialModel(StatisticSubset subset, std::size_t n,
                                   std::optional<double> prior_upper)
    : subset_(subset), n_(n), prior_upper_(prior_upper) {
  if (n_ < 2) throw ConfigError("exponential model needs n >= 2");
  validate_prior_upper(prior_upper_);
}

double ExponentialModel::prior_log_density(const ParamVector& theta) const {
  require_dim(theta, 1, name());
  if (!(theta[0] > 0.0)) return kNegInf;
  if (prior_upper_ && theta[0] > *prior_upper_) return kNegInf;
  return 0.0;
}

ParamVector ExponentialModel::sample_prior(RandomStream& rng) const {
  if (!prior_upper_) return GenerativeModel::sample_prior(rng);
  return ParamVector{*prior_upper_ * rng.uniform()};
}

SummaryVector ExponentialModel::simulate_summary(const ParamVector& theta,
                                                 RandomStream& rng) const {
  require_dim(theta, 1, name());
  const double rate = theta[0];
  if (!(rate > 0.0)) throw ContractViolation("exponential rate must be positive");
  std::vector<double> data(n_);
  for (double& v : data) v = rng.exponential(rate);
  const SummaryVector both = mean_and_sd(data);
  switch (subset_) {
    case StatisticSubset::mean:
      return SummaryVector{both[0]};
    case StatisticSubset::sd:
      return SummaryVector{both[1]};
    case StatisticSubset::both:
      break;
  }
  return both;
}

GammaModel::GammaModel(std::size_t n, std::optional<double> prior_upper)
    : n_(n), prior_upper_(prior_upper) {
  if (n_ < 2) throw ConfigError("gamma model needs n >= 2");
  validate_prior_upper(prior_upper_);
}

double GammaModel::prior_log_density(const ParamVector& theta) const {
  require_dim(theta, 2, name());
  if (!(theta[0] > 0.0) || !(theta[1] > 0.0)) return kNegInf;
  if (prior_upper_ && (theta[0] > *prior_upper_ || theta[1] > *prior_upper_)) {
    return kNegInf;
  }
  return 0.0;
}

ParamVector GammaModel::sample_prior(RandomStream& rng) const {
  if (!prior_upper_) return GenerativeModel::sample_prior(rng);
  const double k = *prior_upper_ * rng.uniform();
  const double psi = *prior_upper_ * rng.uniform();
  return ParamVector{k, psi};
}

SummaryVector GammaModel::simulate_summary(const ParamVector& theta,
                                           RandomStream& rng) const {
  require_dim(theta, 2, name());
  if (!(theta[0] > 0.0) || !(theta[1] > 0.0)) {
    throw ContractViolation("gamma shape and scale must be positive");
  }
  std::gamma_distribution<double> dist(theta[0], theta[1]);
  std::vector<double> data(n_);
  for (double& v : data) v = dist(rng);
  return mean_and_sd(data);
}

// Analytic references -----------------------------------------------------

double toy_lf_posterior_density(double theta, double epsilon, Kernel kernel,
                                double efficiency) {
  if (!(epsilon > 0.0)) throw ContractViolation("toy posterior needs epsilon > 0");
  if (!(efficiency > 0.0 && efficiency <= 1.0)) {
    throw ContractViolation("toy posterior needs efficiency in (0, 1]");
  }
  switch (kernel) {
    case Kernel::uniform:
      return (normal_cdf(epsilon - theta) - normal_cdf(-epsilon - theta)) /
             (2.0 * epsilon);
    case Kernel::gaussian:
      return normal_pdf(theta, 0.0,
                        std::sqrt(1.0 / efficiency + epsilon * epsilon / 3.0));
    default:
      throw ConfigError("toy posterior is only available for uniform and gaussian");
  }
}

ReferenceDistribution toy_lf_reference(double epsilon, Kernel kernel, double efficiency) {
  if (!(epsilon > 0.0)) throw ContractViolation("toy posterior needs epsilon > 0");
  std::ostringstream label;
  switch (kernel) {
    case Kernel::uniform: {
      label << "toy_uniform(eps=" << epsilon << ")";
      auto g = [](double z) { return z * normal_cdf(z) + normal_pdf(z); };
      return {[epsilon, g](double t) {
                return (g(t + epsilon) - g(t - epsilon)) / (2.0 * epsilon);
              },
              label.str()};
    }
    case Kernel::gaussian: {
      const double sd = std::sqrt(1.0 / efficiency + epsilon * epsilon / 3.0);
      return normal_reference(0.0, sd);
    }
    default:
      throw ConfigError("toy posterior is only available for uniform and gaussian");
  }
}

ReferenceDistribution exponential_true_posterior() {
  return gamma_reference(kExponentialPosteriorShape, kExponentialPosteriorRate);
}

ReferenceDistribution exponential_sd_only_reference() { return gamma_reference(21.0, 20.0); }

}  // namespace lfmcmc
