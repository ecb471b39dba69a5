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

// Exact stationarity checks on the discrete toy.

#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <array>
#include <cmath>
#include <vector>

#include "lfmcmc/diagnostics.hpp"
#include "discrete_toy.hpp"
#include "lfmcmc/samplers.hpp"

namespace lfmcmc {
namespace {

using namespace discrete_toy;

TEST(DetailedBalance, LfMcmcKernelPreservesAugmentedTarget) {
  for (const KernelCase& c : kCases) {
    const Eigen::MatrixXd P = transition_matrix(c, 1);
    const Eigen::VectorXd pi = augmented_target(c, 1);
    EXPECT_LT((pi.transpose() * P - pi.transpose()).cwiseAbs().maxCoeff(), 1e-12);
    for (int a = 0; a < P.rows(); ++a) {
      EXPECT_NEAR(P.row(a).sum(), 1.0, 1e-14);
      for (int b = 0; b < P.cols(); ++b) {
        ASSERT_NEAR(pi[a] * P(a, b), pi[b] * P(b, a), 1e-14);
      }
    }
  }
}

TEST(DetailedBalance, ReplicateMarginalIsIndependentOfS) {
  for (const KernelCase& c : kCases) {
    Eigen::Vector3d exact;
    for (int th = 0; th < kK; ++th) {
      double s = 0.0;
      for (int x = 0; x < kK; ++x) s += kLik[th][x] * std::exp(lw(c, x));
      exact[th] = kPrior[th] * s;
    }
    exact /= exact.sum();
    for (int S : {1, 2, 5}) {
      const Eigen::MatrixXd P = transition_matrix(c, S);
      const Eigen::VectorXd pi = stationary(P);
      EXPECT_LT((pi - augmented_target(c, S)).cwiseAbs().maxCoeff(), 1e-12);
      EXPECT_LT((theta_marginal(pi, S) - exact).cwiseAbs().maxCoeff(), 1e-10) << "S=" << S;
    }
  }
}

TEST(DetailedBalance, SampledChainsMatchEnumeratedMarginal) {
  const DiscreteModel model;
  const DiscreteProposal proposal;
  const KernelCase c = kCases[0];
  const WeightSpec spec(c.kernel, DistanceMetric::euclidean(1), c.epsilon);
  const Eigen::Vector3d exact = theta_marginal(augmented_target(c, 1), 1);
  for (std::size_t S : {1u, 3u}) {
    RandomStream rng(31, S);
    const ChainTrace tr = replicate_mcmc_run(model, proposal, spec, EpsilonSchedule::fixed(c.epsilon),
                                             SummaryVector{kY}, ParamVector{0.0}, 300000, S, rng);
    std::array<double, kK> freq{};
    for (std::size_t i = 0; i < tr.size(); ++i) freq[static_cast<int>(tr.theta(i)[0])] += 1.0;
    for (int k = 0; k < kK; ++k) {
      EXPECT_NEAR(freq[k] / static_cast<double>(tr.size()), exact[k], 0.01) << "S=" << S;
    }
  }
}

}  // namespace
}  // namespace lfmcmc
