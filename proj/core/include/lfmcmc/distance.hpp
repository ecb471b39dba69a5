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

#ifndef LFMCMC_DISTANCE_HPP_
#define LFMCMC_DISTANCE_HPP_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "lfmcmc/errors.hpp"
#include "lfmcmc/model.hpp"

namespace lfmcmc {

enum class MetricKind { euclidean, scaled_euclidean, mahalanobis };

std::string_view to_string(MetricKind kind);
// Accepts the config strings "euclidean", "scaled_euclidean", "mahalanobis".
MetricKind parse_metric_kind(std::string_view name);

// rho(T(x), T(y)) on summary space.
//
// Mahalanobis and scaled Euclidean whiten the difference with a lower
// triangular factor W = L^{-1}, where Sigma = L L^T, computed once here;
// evaluation is a triangular mat-vec and never inverts anything.
class DistanceMetric {
 public:
  static DistanceMetric euclidean(std::size_t dim);
  // Uses only diag(covariance).
  static DistanceMetric scaled_euclidean(const Eigen::MatrixXd& covariance);
  static DistanceMetric mahalanobis(const Eigen::MatrixXd& covariance);
  // Covariance is required for the two non-Euclidean kinds.
  static DistanceMetric make(MetricKind kind, std::size_t dim,
                             const std::optional<Eigen::MatrixXd>& covariance);

  MetricKind kind() const { return kind_; }
  std::size_t dim() const { return dim_; }
  // The matrix the metric was built from; empty for euclidean.
  const Eigen::MatrixXd& covariance() const { return covariance_; }

  double operator()(std::span<const double> a, std::span<const double> b) const;
  double operator()(const SummaryVector& a, const SummaryVector& b) const {
    return (*this)(a.values(), b.values());
  }

 private:
  DistanceMetric(MetricKind kind, std::size_t dim) : kind_(kind), dim_(dim) {}

  MetricKind kind_;
  std::size_t dim_;
  Eigen::MatrixXd covariance_;
  Eigen::MatrixXd whitening_;  // lower triangular; empty for euclidean
};

inline double distance(const DistanceMetric& metric, const SummaryVector& a,
                       const SummaryVector& b) {
  return metric(a, b);
}

// Thrown by estimate_covariance when the sample covariance is numerically
// singular. Carries the offending matrix.
class SingularCovarianceError : public NumericalError {
 public:
  SingularCovarianceError(const std::string& what, Eigen::MatrixXd matrix)
      : NumericalError(what), matrix_(std::move(matrix)) {}
  const Eigen::MatrixXd& matrix() const { return matrix_; }

 private:
  Eigen::MatrixXd matrix_;
};

inline constexpr double kMaxCovarianceCondition = 1e12;

// Sample covariance (denominator n_sims - 1) of n_sims summaries simulated at
// pilot_theta. Requires n_sims >= summary_dim + 1.
Eigen::MatrixXd estimate_covariance(const GenerativeModel& model,
                                    const ParamVector& pilot_theta, std::size_t n_sims,
                                    RandomStream& rng);

// Plain sample covariance of a set of equal-length rows.
Eigen::MatrixXd sample_covariance(std::span<const SummaryVector> rows);

// Ratio of extreme eigenvalues; +inf when the smallest is <= 0.
double condition_number(const Eigen::MatrixXd& symmetric);

// Row-major (de)serialization used by the config files.
std::vector<double> to_row_major(const Eigen::MatrixXd& m);
Eigen::MatrixXd from_row_major(std::span<const double> values, std::size_t dim);

}  // namespace lfmcmc

#endif  // LFMCMC_DISTANCE_HPP_
