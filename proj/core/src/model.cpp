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

#include "lfmcmc/model.hpp"

#include <numbers>

#include "lfmcmc/errors.hpp"

namespace lfmcmc {

ParamVector GenerativeModel::sample_prior(RandomStream&) const {
  throw ConfigError("model '" + std::string(name()) +
                    "' has an improper prior and cannot be sampled from");
}

GaussianRandomWalk::GaussianRandomWalk(std::vector<double> scale)
    : scale_(std::move(scale)) {
  if (scale_.empty()) throw ConfigError("random-walk scale must be non-empty");
  for (double s : scale_) {
    if (!(s > 0.0) || !std::isfinite(s)) {
      throw ConfigError("random-walk scale must be positive and finite, got " +
                        std::to_string(s));
    }
    log_norm_ -= std::log(s) + 0.5 * std::log(2.0 * std::numbers::pi);
  }
}

ParamVector GaussianRandomWalk::sample(const ParamVector& from, RandomStream& rng) const {
  if (from.size() != scale_.size()) {
    throw ContractViolation("random-walk dimension mismatch");
  }
  ParamVector to = from;
  for (std::size_t i = 0; i < scale_.size(); ++i) to[i] += scale_[i] * rng.normal();
  return to;
}

double GaussianRandomWalk::log_density(const ParamVector& from,
                                       const ParamVector& to) const {
  if (from.size() != scale_.size() || to.size() != scale_.size()) {
    throw ContractViolation("random-walk dimension mismatch");
  }
  double quad = 0.0;
  for (std::size_t i = 0; i < scale_.size(); ++i) {
    const double z = (to[i] - from[i]) / scale_[i];
    quad += z * z;
  }
  return log_norm_ - 0.5 * quad;
}

GaussianRandomWalk gaussian_random_walk(std::vector<double> scale) {
  return GaussianRandomWalk(std::move(scale));
}

}  // namespace lfmcmc
