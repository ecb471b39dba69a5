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

#include "lfmcmc/distance.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include <Eigen/Eigenvalues>

namespace lfmcmc {

namespace {

constexpr double kSymmetryTolerance = 1e-10;

void validate_covariance(const Eigen::MatrixXd& c) {
  if (c.rows() == 0 || c.rows() != c.cols()) {
    throw ConfigError("covariance must be a non-empty square matrix");
  }
  if (!c.allFinite()) throw ConfigError("covariance has non-finite entries");
  for (Eigen::Index i = 0; i < c.rows(); ++i) {
    for (Eigen::Index j = 0; j < i; ++j) {
      if (std::abs(c(i, j) - c(j, i)) > kSymmetryTolerance) {
        throw ConfigError("covariance is not symmetric");
      }
    }
  }
  if (condition_number(c) > kMaxCovarianceCondition) {
    throw ConfigError(
        "covariance is singular or not positive definite; use scaled_euclidean or "
        "euclidean instead");
  }
}

Eigen::MatrixXd whitening_factor(const Eigen::MatrixXd& c) {
  const Eigen::MatrixXd sym = 0.5 * (c + c.transpose());
  Eigen::LLT<Eigen::MatrixXd> llt(sym);
  if (llt.info() != Eigen::Success) {
    throw ConfigError("covariance Cholesky factorization failed");
  }
  const Eigen::MatrixXd identity = Eigen::MatrixXd::Identity(c.rows(), c.cols());
  return llt.matrixL().solve(identity);
}

}  // namespace

std::string_view to_string(MetricKind kind) {
  switch (kind) {
    case MetricKind::euclidean:
      return "euclidean";
    case MetricKind::scaled_euclidean:
      return "scaled_euclidean";
    case MetricKind::mahalanobis:
      return "mahalanobis";
  }
  return "unknown";
}

MetricKind parse_metric_kind(std::string_view name) {
  if (name == "euclidean") return MetricKind::euclidean;
  if (name == "scaled_euclidean") return MetricKind::scaled_euclidean;
  if (name == "mahalanobis") return MetricKind::mahalanobis;
  throw ConfigError("unknown distance metric '" + std::string(name) + "'");
}

DistanceMetric DistanceMetric::euclidean(std::size_t dim) {
  if (dim == 0) throw ConfigError("metric dimension must be positive");
  return DistanceMetric(MetricKind::euclidean, dim);
}

DistanceMetric DistanceMetric::scaled_euclidean(const Eigen::MatrixXd& covariance) {
  if (covariance.rows() == 0 || covariance.rows() != covariance.cols()) {
    throw ConfigError("covariance must be a non-empty square matrix");
  }
  const Eigen::VectorXd diag = covariance.diagonal();
  if (!diag.allFinite() || (diag.array() <= 0.0).any()) {
    throw ConfigError("scaled_euclidean needs strictly positive variances");
  }
  DistanceMetric m(MetricKind::scaled_euclidean, static_cast<std::size_t>(diag.size()));
  m.covariance_ = covariance;
  m.whitening_ = diag.cwiseSqrt().cwiseInverse().asDiagonal();
  return m;
}

DistanceMetric DistanceMetric::mahalanobis(const Eigen::MatrixXd& covariance) {
  validate_covariance(covariance);
  DistanceMetric m(MetricKind::mahalanobis, static_cast<std::size_t>(covariance.rows()));
  m.covariance_ = covariance;
  m.whitening_ = whitening_factor(covariance);
  return m;
}

DistanceMetric DistanceMetric::make(MetricKind kind, std::size_t dim,
                                    const std::optional<Eigen::MatrixXd>& covariance) {
  if (kind == MetricKind::euclidean) return euclidean(dim);
  if (!covariance) {
    throw ConfigError(std::string(to_string(kind)) + " distance requires a covariance");
  }
  if (static_cast<std::size_t>(covariance->rows()) != dim) {
    throw ConfigError("covariance dimension does not match summary dimension");
  }
  return kind == MetricKind::mahalanobis ? mahalanobis(*covariance)
                                         : scaled_euclidean(*covariance);
}

double DistanceMetric::operator()(std::span<const double> a,
                                  std::span<const double> b) const {
  if (a.size() != dim_ || b.size() != dim_) {
    throw ContractViolation("summary dimension does not match metric dimension");
  }
  double sum = 0.0;
  if (kind_ == MetricKind::euclidean) {
    for (std::size_t i = 0; i < dim_; ++i) {
      const double d = a[i] - b[i];
      sum += d * d;
    }
    return std::sqrt(sum);
  }
  // z = W (a - b), W lower triangular.
  for (std::size_t i = 0; i < dim_; ++i) {
    double z = 0.0;
    for (std::size_t j = 0; j <= i; ++j) {
      z += whitening_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) *
           (a[j] - b[j]);
    }
    sum += z * z;
  }
  return std::sqrt(sum);
}

double condition_number(const Eigen::MatrixXd& symmetric) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(symmetric,
                                                        Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) return std::numeric_limits<double>::infinity();
  const double lo = solver.eigenvalues().minCoeff();
  const double hi = solver.eigenvalues().maxCoeff();
  if (!(lo > 0.0)) return std::numeric_limits<double>::infinity();
  return hi / lo;
}

Eigen::MatrixXd sample_covariance(std::span<const SummaryVector> rows) {
  if (rows.size() < 2) throw ContractViolation("sample covariance needs >= 2 rows");
  const auto dim = static_cast<Eigen::Index>(rows.front().size());
  Eigen::MatrixXd data(static_cast<Eigen::Index>(rows.size()), dim);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (static_cast<Eigen::Index>(rows[i].size()) != dim) {
      throw ContractViolation("summary rows have unequal length");
    }
    for (Eigen::Index j = 0; j < dim; ++j) {
      data(static_cast<Eigen::Index>(i), j) = rows[i][static_cast<std::size_t>(j)];
    }
  }
  const Eigen::RowVectorXd mean = data.colwise().mean();
  const Eigen::MatrixXd centered = data.rowwise() - mean;
  Eigen::MatrixXd cov =
      (centered.transpose() * centered) / static_cast<double>(rows.size() - 1);
  return 0.5 * (cov + cov.transpose());
}

Eigen::MatrixXd estimate_covariance(const GenerativeModel& model,
                                    const ParamVector& pilot_theta, std::size_t n_sims,
                                    RandomStream& rng) {
  const std::size_t dim = model.summary_dim();
  if (n_sims < dim + 1) {
    throw ContractViolation("estimate_covariance needs n_sims >= summary_dim + 1, got " +
                            std::to_string(n_sims));
  }
  std::vector<SummaryVector> rows;
  rows.reserve(n_sims);
  for (std::size_t i = 0; i < n_sims; ++i) {
    rows.push_back(model.simulate_summary(pilot_theta, rng));
  }
  Eigen::MatrixXd cov = sample_covariance(rows);
  if (condition_number(cov) > kMaxCovarianceCondition) {
    std::ostringstream msg;
    msg << "pilot covariance is numerically singular (condition number > "
        << kMaxCovarianceCondition << "); fall back to scaled_euclidean";
    throw SingularCovarianceError(msg.str(), std::move(cov));
  }
  return cov;
}

std::vector<double> to_row_major(const Eigen::MatrixXd& m) {
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(m.size()));
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) out.push_back(m(i, j));
  }
  return out;
}

Eigen::MatrixXd from_row_major(std::span<const double> values, std::size_t dim) {
  if (values.size() != dim * dim) {
    throw ConfigError("covariance needs " + std::to_string(dim * dim) +
                      " row-major entries, got " + std::to_string(values.size()));
  }
  const auto n = static_cast<Eigen::Index>(dim);
  Eigen::MatrixXd m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) m(i, j) = values[static_cast<std::size_t>(i * n + j)];
  }
  return m;
}

}  // namespace lfmcmc
