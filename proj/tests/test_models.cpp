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

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "lfmcmc/diagnostics.hpp"
#include "lfmcmc/errors.hpp"
#include "lfmcmc/special_functions.hpp"

namespace lfmcmc {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double normal_density(double x, double var) {
  return std::exp(-0.5 * x * x / var) / std::sqrt(2.0 * std::numbers::pi * var);
}

TEST(ToyPosterior, GaussianAtSqrtThreeIsNormalTwo) {
  EXPECT_NEAR(toy_lf_posterior_density(0.0, std::sqrt(3.0), Kernel::gaussian),
              1.0 / std::sqrt(4.0 * std::numbers::pi), 1e-12);
  EXPECT_NEAR(1.0 / std::sqrt(4.0 * std::numbers::pi), 0.28209, 1e-5);
}

TEST(ToyPosterior, UniformSmallEpsilonIsStandardNormal) {
  EXPECT_NEAR(toy_lf_posterior_density(1.0, 1e-4, Kernel::uniform), 0.24197, 1e-5);
  EXPECT_NEAR(toy_lf_posterior_density(1.0, 1e-4, Kernel::uniform), normal_density(1.0, 1.0),
              1e-6);
}

TEST(ToyPosterior, GaussianWithEfficiency) {
  EXPECT_NEAR(toy_lf_posterior_density(0.0, 1.0, Kernel::gaussian, 0.5),
              1.0 / std::sqrt(2.0 * std::numbers::pi * 7.0 / 3.0), 1e-12);
}

TEST(ToyPosterior, UniformAtOne) {
  const double expected = (normal_cdf(1.0) - normal_cdf(-1.0)) / 2.0;
  EXPECT_NEAR(toy_lf_posterior_density(0.0, 1.0, Kernel::uniform), expected, 1e-12);
  EXPECT_NEAR(expected, 0.34135, 1e-5);
}

TEST(ToyPosterior, UniformCdfMatchesNumericalNormalization) {
  // Trapezoid integration of the density on a fine grid as the oracle.
  constexpr double h = 1e-4;
  constexpr long kCheckEvery = 5000;
  for (double eps : {std::sqrt(3.0), std::sqrt(3.0) / 2.0, std::sqrt(3.0) / 10.0, 4.0}) {
    const auto ref = toy_lf_reference(eps, Kernel::uniform);
    const double lo = -eps - 12.0;
    const long steps = static_cast<long>((2.0 * eps + 24.0) / h);
    double acc = 0.0, prev = toy_lf_posterior_density(lo, eps, Kernel::uniform);
    for (long i = 1; i <= steps; ++i) {
      const double x = lo + h * static_cast<double>(i);
      const double cur = toy_lf_posterior_density(x, eps, Kernel::uniform);
      acc += 0.5 * h * (prev + cur);
      prev = cur;
      if (i % kCheckEvery == 0) {
        ASSERT_NEAR(ref.cdf(x), acc, 1e-7) << "eps=" << eps << " x=" << x;
      }
    }
    EXPECT_NEAR(acc, 1.0, 1e-7);
  }
}

TEST(ToyPosterior, GaussianCdfIsNormal) {
  const auto ref = toy_lf_reference(std::sqrt(3.0), Kernel::gaussian);
  EXPECT_NEAR(ref.cdf(1.0), normal_cdf(1.0, 0.0, std::sqrt(2.0)), 1e-14);
  EXPECT_THROW(toy_lf_reference(1.0, Kernel::triangle), ConfigError);
}

TEST(ExponentialPosterior, MeanAndMode) {
  EXPECT_DOUBLE_EQ(kExponentialPosteriorShape / kExponentialPosteriorRate, 0.2625);
  EXPECT_DOUBLE_EQ((kExponentialPosteriorShape - 1.0) / kExponentialPosteriorRate, 0.25);
  const auto ref = exponential_true_posterior();
  EXPECT_NEAR(ref.cdf(0.3), gamma_cdf(0.3, 21.0, 80.0), 1e-15);
  const auto alt = exponential_sd_only_reference();
  EXPECT_NEAR(alt.cdf(1.0), gamma_cdf(1.0, 21.0, 20.0), 1e-15);
}

TEST(ExponentialModel, MeanSummary) {
  const ExponentialModel model;
  RandomStream rng(1, 0);
  double s = 0.0;
  for (int i = 0; i < 10000; ++i) s += model.simulate_summary(ParamVector{0.25}, rng)[0];
  EXPECT_NEAR(s / 10000, 4.0, 0.06);
}

TEST(ExponentialModel, SummariesFiniteAndPositiveSd) {
  const ExponentialModel model;
  RandomStream rng(2, 0);
  for (int i = 0; i < 1000; ++i) {
    const SummaryVector t = model.simulate_summary(ParamVector{1.0}, rng);
    ASSERT_EQ(t.size(), 2u);
    ASSERT_TRUE(t.all_finite());
    ASSERT_GT(t[1], 0.0);
  }
}

TEST(ExponentialModel, SubsetsAndPrior) {
  EXPECT_EQ(ExponentialModel(StatisticSubset::mean).summary_dim(), 1u);
  EXPECT_EQ(ExponentialModel(StatisticSubset::sd).summary_dim(), 1u);
  EXPECT_EQ(observed_summaries(StatisticSubset::sd), SummaryVector{1.0});
  EXPECT_EQ(observed_summaries(StatisticSubset::both), (SummaryVector{4.0, 1.0}));
  const ExponentialModel model;
  EXPECT_EQ(model.prior_log_density(ParamVector{0.0}), -kInf);
  EXPECT_EQ(model.prior_log_density(ParamVector{-1.0}), -kInf);
  EXPECT_EQ(model.prior_log_density(ParamVector{3.0}), 0.0);
  EXPECT_FALSE(model.has_prior_sampler());
  RandomStream rng(3, 0);
  EXPECT_THROW(model.sample_prior(rng), ConfigError);
  EXPECT_THROW(model.simulate_summary(ParamVector{-1.0}, rng), ContractViolation);
  const ExponentialModel bounded(StatisticSubset::both, 20, 20.0);
  EXPECT_TRUE(bounded.has_prior_sampler());
  EXPECT_EQ(bounded.prior_log_density(ParamVector{21.0}), -kInf);
}

TEST(ExponentialModel, SdSubsetMatchesBothSecondComponent) {
  RandomStream a(4, 0);
  RandomStream b = a;
  const SummaryVector both = ExponentialModel().simulate_summary(ParamVector{0.5}, a);
  const SummaryVector sd =
      ExponentialModel(StatisticSubset::sd).simulate_summary(ParamVector{0.5}, b);
  EXPECT_EQ(sd[0], both[1]);
}

TEST(GammaModel, MomentSummaries) {
  const GammaModel model;
  RandomStream rng(5, 0);
  double sm = 0.0, ss = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const SummaryVector t = model.simulate_summary(ParamVector{16.0, 0.25}, rng);
    sm += t[0];
    ss += t[1];
  }
  EXPECT_NEAR(sm / 10000, 4.0, 0.05);
  EXPECT_NEAR(ss / 10000, 1.0, 0.05);
  EXPECT_EQ(model.prior_log_density(ParamVector{0.0, 1.0}), -kInf);
  EXPECT_EQ(model.prior_log_density(ParamVector{1.0, 1.0}), 0.0);
}

TEST(GammaModel, NestsExponentialInLaw) {
  int below = 0;
  for (std::uint64_t trial = 0; trial < 100; ++trial) {
    RandomStream ra(10, trial), rb(11, trial);
    const double lambda = 0.25;
    std::vector<double> a(10000), b(10000);
    for (double& v : a) v = ExponentialModel().simulate_summary(ParamVector{lambda}, ra)[0];
    for (double& v : b) v = GammaModel().simulate_summary(ParamVector{1.0, 1.0 / lambda}, rb)[0];
    below += ks_two_sample(a, b) < 1.358 * std::sqrt(2.0 / 10000.0);
  }
  EXPECT_GE(below, 90);
}

TEST(Models, ClonedStreamsReproduce) {
  const GammaModel gamma;
  const ExponentialModel expo;
  const NormalToy toy;
  RandomStream a(6, 2);
  RandomStream b = a;
  EXPECT_EQ(gamma.simulate_summary(ParamVector{2.0, 3.0}, a),
            gamma.simulate_summary(ParamVector{2.0, 3.0}, b));
  EXPECT_EQ(expo.simulate_summary(ParamVector{2.0}, a), expo.simulate_summary(ParamVector{2.0}, b));
  EXPECT_EQ(toy.simulate_summary(ParamVector{2.0}, a), toy.simulate_summary(ParamVector{2.0}, b));
}

TEST(NormalToy, PriorAndSimulator) {
  const NormalToy toy(-10.0, 10.0);
  EXPECT_EQ(toy.prior_log_density(ParamVector{10.5}), -kInf);
  EXPECT_TRUE(std::isfinite(toy.prior_log_density(ParamVector{0.0})));
  RandomStream rng(7, 0);
  double s = 0.0, s2 = 0.0;
  for (int i = 0; i < 20000; ++i) {
    const double x = toy.simulate_summary(ParamVector{1.0}, rng)[0];
    s += x;
    s2 += x * x;
  }
  EXPECT_NEAR(s / 20000, 1.0, 0.03);
  EXPECT_NEAR(s2 / 20000 - 1.0, 1.0, 0.05);
  for (int i = 0; i < 1000; ++i) {
    const double th = toy.sample_prior(rng)[0];
    ASSERT_GE(th, -10.0);
    ASSERT_LE(th, 10.0);
  }
  EXPECT_THROW(NormalToy(1.0, 0.0), ConfigError);
  EXPECT_THROW(NormalToy(-1.0, 1.0, 1.5), ConfigError);
}

TEST(Models, MeanAndSdUsesUnbiasedDenominator) {
  const std::vector<double> xs{1.0, 2.0, 3.0, 4.0};
  const SummaryVector t = mean_and_sd(xs);
  EXPECT_EQ(t[0], 2.5);
  EXPECT_DOUBLE_EQ(t[1], std::sqrt(5.0 / 3.0));
}

}  // namespace
}  // namespace lfmcmc
