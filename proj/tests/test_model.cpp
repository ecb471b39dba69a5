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

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <numbers>

#include "lfmcmc/errors.hpp"

namespace lfmcmc {
namespace {

TEST(GaussianRandomWalk, LogDensityIsSymmetric) {
  const GaussianRandomWalk q = gaussian_random_walk({1.0});
  EXPECT_TRUE(q.is_symmetric());
  EXPECT_EQ(q.log_density(ParamVector{0.25}, ParamVector{1.25}) -
                q.log_density(ParamVector{1.25}, ParamVector{0.25}),
            0.0);
}

TEST(GaussianRandomWalk, SymmetryOnRandomPairs) {
  const GaussianRandomWalk q({0.3, 2.0, 5.0});
  RandomStream rng(1, 0);
  for (int i = 0; i < 1000; ++i) {
    const ParamVector a{rng.normal(), rng.normal(0, 10), rng.normal(0, 3)};
    const ParamVector b = q.sample(a, rng);
    EXPECT_NEAR(q.log_density(a, b), q.log_density(b, a), 1e-12);
  }
}

TEST(GaussianRandomWalk, LogDensityMatchesNormalFormula) {
  const GaussianRandomWalk q({2.0});
  const double d = 1.5;
  const double expected =
      -0.5 * (d / 2.0) * (d / 2.0) - std::log(2.0) - 0.5 * std::log(2.0 * std::numbers::pi);
  EXPECT_NEAR(q.log_density(ParamVector{1.0}, ParamVector{2.5}), expected, 1e-14);
}

TEST(GaussianRandomWalk, UnitScaleDrawsAreCentered) {
  constexpr int kN = 100000;
  const GaussianRandomWalk q({1.0});
  RandomStream rng(2, 0);
  double s = 0.0;
  for (int i = 0; i < kN; ++i) s += q.sample(ParamVector{0.0}, rng)[0];
  EXPECT_NEAR(s / kN, 0.0, 0.02);
}

TEST(GaussianRandomWalk, ScaleTwoDrawsHaveSdTwo) {
  constexpr int kN = 100000;
  const GaussianRandomWalk q({2.0});
  RandomStream rng(3, 0);
  double s = 0.0, s2 = 0.0;
  for (int i = 0; i < kN; ++i) {
    const double x = q.sample(ParamVector{0.0}, rng)[0];
    s += x;
    s2 += x * x;
  }
  const double m = s / kN;
  EXPECT_NEAR(std::sqrt((s2 - kN * m * m) / (kN - 1)), 2.0, 0.05);
}

TEST(GaussianRandomWalk, NonPositiveScaleIsConfigError) {
  EXPECT_THROW(gaussian_random_walk({0.0}), ConfigError);
  EXPECT_THROW(gaussian_random_walk({1.0, -1.0}), ConfigError);
  EXPECT_THROW(gaussian_random_walk({std::numeric_limits<double>::quiet_NaN()}), ConfigError);
  EXPECT_THROW(gaussian_random_walk({}), ConfigError);
}

TEST(GaussianRandomWalk, SampleIsReproducibleFromStreamState) {
  const GaussianRandomWalk q({1.0, 0.5});
  RandomStream a(9, 4);
  RandomStream b = a;
  EXPECT_EQ(q.sample(ParamVector{1.0, 2.0}, a), q.sample(ParamVector{1.0, 2.0}, b));
}

TEST(RealVector, FiniteCheck) {
  EXPECT_TRUE((ParamVector{1.0, 2.0}).all_finite());
  EXPECT_FALSE((ParamVector{1.0, std::numeric_limits<double>::infinity()}).all_finite());
  EXPECT_FALSE((SummaryVector{std::numeric_limits<double>::quiet_NaN()}).all_finite());
}

}  // namespace
}  // namespace lfmcmc
