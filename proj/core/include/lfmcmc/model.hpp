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

// Domain types and the generative-model contract shared by every sampler.

#ifndef LFMCMC_MODEL_HPP_
#define LFMCMC_MODEL_HPP_

#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lfmcmc/random.hpp"

namespace lfmcmc {

// Fixed-length real vector distinguished by a tag so that parameters and
// summaries cannot be swapped by accident.
template <class Tag>
class RealVector {
 public:
  RealVector() = default;
  explicit RealVector(std::vector<double> values) : values_(std::move(values)) {}
  RealVector(std::initializer_list<double> values) : values_(values) {}
  explicit RealVector(std::size_t size, double fill = 0.0) : values_(size, fill) {}

  std::size_t size() const { return values_.size(); }
  bool empty() const { return values_.empty(); }
  double& operator[](std::size_t i) { return values_[i]; }
  double operator[](std::size_t i) const { return values_[i]; }
  std::span<const double> values() const { return values_; }
  std::span<double> values() { return values_; }
  auto begin() const { return values_.begin(); }
  auto end() const { return values_.end(); }

  bool all_finite() const {
    for (double v : values_) {
      if (!std::isfinite(v)) return false;
    }
    return true;
  }

  friend bool operator==(const RealVector&, const RealVector&) = default;

 private:
  std::vector<double> values_;
};

// A point theta in parameter space. Labels live on the model
// (GenerativeModel::param_names) rather than on every point.
using ParamVector = RealVector<struct ParamTag>;
// T(x): the summary statistics of one simulated or observed dataset.
using SummaryVector = RealVector<struct SummaryTag>;

// Prior, simulator and summary map for one model. Implementations are
// immutable after construction and may be shared by concurrently running
// chains; all randomness comes from the caller's stream.
class GenerativeModel {
 public:
  virtual ~GenerativeModel() = default;

  virtual std::string_view name() const = 0;
  virtual std::size_t param_dim() const = 0;
  virtual std::size_t summary_dim() const = 0;
  virtual std::vector<std::string> param_names() const = 0;

  // Log prior density up to a constant; -inf off the support. Improper flat
  // priors return 0 everywhere on the support.
  virtual double prior_log_density(const ParamVector& theta) const = 0;

  // False for improper priors. sample_prior throws ConfigError in that case.
  virtual bool has_prior_sampler() const { return false; }
  virtual ParamVector sample_prior(RandomStream& rng) const;

  // Draws one dataset x ~ pi(x | theta) and returns T(x). Deterministic given
  // theta and the stream state.
  virtual SummaryVector simulate_summary(const ParamVector& theta,
                                         RandomStream& rng) const = 0;
};

// q(theta, theta'). Implementations are immutable after construction.
class ProposalDistribution {
 public:
  virtual ~ProposalDistribution() = default;

  virtual ParamVector sample(const ParamVector& from, RandomStream& rng) const = 0;
  virtual double log_density(const ParamVector& from, const ParamVector& to) const = 0;
  // When true, log_density(a, b) == log_density(b, a).
  virtual bool is_symmetric() const { return false; }
};

// Independent zero-mean Gaussian increments with per-dimension standard
// deviations.
class GaussianRandomWalk final : public ProposalDistribution {
 public:
  explicit GaussianRandomWalk(std::vector<double> scale);

  ParamVector sample(const ParamVector& from, RandomStream& rng) const override;
  double log_density(const ParamVector& from, const ParamVector& to) const override;
  bool is_symmetric() const override { return true; }

  std::span<const double> scale() const { return scale_; }

 private:
  std::vector<double> scale_;
  double log_norm_ = 0.0;
};

GaussianRandomWalk gaussian_random_walk(std::vector<double> scale);

}  // namespace lfmcmc

#endif  // LFMCMC_MODEL_HPP_
