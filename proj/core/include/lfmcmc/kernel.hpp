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

// Kernel weighting functions pi_eps(y | x, theta) evaluated on a scalar
// distance rho. Everything is in log space; compact kernels return -inf
// outside their support.

#ifndef LFMCMC_KERNEL_HPP_
#define LFMCMC_KERNEL_HPP_

#include <cmath>
#include <cstddef>
#include <string_view>

#include "lfmcmc/distance.hpp"

namespace lfmcmc {

enum class Kernel { uniform, gaussian, epanechnikov, triangle, biweight };

std::string_view to_string(Kernel kernel);
Kernel parse_kernel(std::string_view name);

// Log kernel shape at scaled distance u = rho / eps, with log K(0) = 0 for
// every kernel. Normalizing constants are dropped: they cancel whenever eps
// is the same in numerator and denominator.
double log_kernel(Kernel kernel, double u);

// log_kernel(kernel, rho / epsilon). rho < 0 is a contract violation.
double log_weight(Kernel kernel, double epsilon, double rho);

// Kernel + metric + tolerance.
class WeightSpec {
 public:
  WeightSpec(Kernel kernel, DistanceMetric metric, double epsilon);

  Kernel kernel() const { return kernel_; }
  const DistanceMetric& metric() const { return metric_; }
  double epsilon() const { return epsilon_; }

  WeightSpec with_epsilon(double epsilon) const {
    return WeightSpec(kernel_, metric_, epsilon);
  }

 private:
  Kernel kernel_;
  DistanceMetric metric_;
  double epsilon_;
};

inline double log_weight(const WeightSpec& spec, double rho) {
  return log_weight(spec.kernel(), spec.epsilon(), rho);
}

// Log of the eps-dependent normalization of a radial kernel on R^dim, i.e.
// -dim * log(eps). Only uniform and gaussian are supported; anything else
// throws ConfigError.
double log_epsilon_normalizer(Kernel kernel, double epsilon, std::size_t dim);

// Gaussian tolerance whose kernel has the same standard deviation as the
// uniform kernel of half-width uniform_epsilon (sd = eps / sqrt(3)).
inline double matched_gaussian_epsilon(double uniform_epsilon) {
  return uniform_epsilon / std::sqrt(3.0);
}

// Normalized univariate biweight (quartic) density (15/16)(1 - u^2)^2 on
// |u| < 1.
inline double biweight_density(double u) {
  if (!(std::abs(u) < 1.0)) return 0.0;
  const double a = 1.0 - u * u;
  return 0.9375 * a * a;
}

}  // namespace lfmcmc

#endif  // LFMCMC_KERNEL_HPP_
