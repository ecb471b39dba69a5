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

#include "lfmcmc/kernel.hpp"

#include <limits>
#include <string>

#include "lfmcmc/errors.hpp"

namespace lfmcmc {

namespace {
constexpr double kNegInf = -std::numeric_limits<double>::infinity();
}

std::string_view to_string(Kernel kernel) {
  switch (kernel) {
    case Kernel::uniform:
      return "uniform";
    case Kernel::gaussian:
      return "gaussian";
    case Kernel::epanechnikov:
      return "epanechnikov";
    case Kernel::triangle:
      return "triangle";
    case Kernel::biweight:
      return "biweight";
  }
  return "unknown";
}

Kernel parse_kernel(std::string_view name) {
  if (name == "uniform") return Kernel::uniform;
  if (name == "gaussian") return Kernel::gaussian;
  if (name == "epanechnikov") return Kernel::epanechnikov;
  if (name == "triangle") return Kernel::triangle;
  if (name == "biweight") return Kernel::biweight;
  throw ConfigError("unknown kernel '" + std::string(name) + "'");
}

double log_kernel(Kernel kernel, double u) {
  switch (kernel) {
    case Kernel::uniform:
      return u <= 1.0 ? 0.0 : kNegInf;
    case Kernel::gaussian:
      return -0.5 * u * u;
    case Kernel::epanechnikov:
      return u < 1.0 ? std::log1p(-u * u) : kNegInf;
    case Kernel::triangle:
      return u < 1.0 ? std::log1p(-u) : kNegInf;
    case Kernel::biweight:
      return u < 1.0 ? 2.0 * std::log1p(-u * u) : kNegInf;
  }
  return kNegInf;
}

double log_weight(Kernel kernel, double epsilon, double rho) {
  if (!(rho >= 0.0)) {
    throw ContractViolation("kernel distance must be non-negative, got " +
                            std::to_string(rho));
  }
  return log_kernel(kernel, rho / epsilon);
}

WeightSpec::WeightSpec(Kernel kernel, DistanceMetric metric, double epsilon)
    : kernel_(kernel), metric_(std::move(metric)), epsilon_(epsilon) {
  if (!(epsilon_ > 0.0)) {
    throw ConfigError("tolerance epsilon must be positive, got " +
                      std::to_string(epsilon_));
  }
}

double log_epsilon_normalizer(Kernel kernel, double epsilon, std::size_t dim) {
  if (kernel != Kernel::uniform && kernel != Kernel::gaussian) {
    throw ConfigError("epsilon-dependent normalization is only available for the "
                      "uniform and gaussian kernels, not '" +
                      std::string(to_string(kernel)) + "'");
  }
  return -static_cast<double>(dim) * std::log(epsilon);
}

}  // namespace lfmcmc
