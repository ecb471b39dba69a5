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

#include "lfmcmc/schedule.hpp"

#include <gtest/gtest.h>

#include "lfmcmc/errors.hpp"
#include "lfmcmc/random.hpp"

namespace lfmcmc {
namespace {

TEST(Schedule, SelfScalingExamples) {
  const auto s = EpsilonSchedule::self_scaling(1.0);
  EXPECT_EQ(s.next_epsilon({1, 5.0, 3.0, true}), 3.0);
  EXPECT_EQ(s.next_epsilon({1, 5.0, 0.5, true}), 1.0);
  EXPECT_EQ(s.next_epsilon({1, 5.0, 3.0, false}), 5.0);
}

TEST(Schedule, LinearExample) {
  const auto s = EpsilonSchedule::linear(10.0, 0.01, 3.0);
  EXPECT_EQ(s.next_epsilon({1000, 3.0, 0.0, false}), 3.0);
  EXPECT_DOUBLE_EQ(s.next_epsilon({100, 10.0, 0.0, false}), 9.0);
  EXPECT_EQ(s.initial_epsilon(0.0), 10.0);
}

TEST(Schedule, FixedAlwaysTarget) {
  const auto s = EpsilonSchedule::fixed(2.0);
  EXPECT_EQ(s.initial_epsilon(123.0), 2.0);
  EXPECT_EQ(s.step_epsilon(5, 2.0, 9.0), 2.0);
  EXPECT_EQ(s.next_epsilon({5, 2.0, 9.0, true}), 2.0);
}

TEST(Schedule, SelfScalingInitialAndCandidate) {
  const auto s = EpsilonSchedule::self_scaling(3.0);
  EXPECT_EQ(s.initial_epsilon(7.5), 7.5);
  EXPECT_EQ(s.initial_epsilon(1.0), 3.0);
  EXPECT_EQ(s.step_epsilon(1, 7.5, 5.0), 5.0);
  EXPECT_EQ(s.step_epsilon(1, 7.5, 9.0), 7.5);
  EXPECT_EQ(s.step_epsilon(1, 7.5, 2.0), 3.0);
}

TEST(Schedule, AcceptedRhoInsideWindowIsReturnedExactly) {
  const auto s = EpsilonSchedule::self_scaling(1.0);
  RandomStream rng(1, 0);
  for (int i = 0; i < 1000; ++i) {
    const double prev = 1.0 + 10.0 * rng.uniform();
    const double rho = 1.0 + (prev - 1.0) * rng.uniform();
    EXPECT_EQ(s.next_epsilon({1, prev, rho, true}), rho);
  }
}

TEST(Schedule, RandomTrajectoriesAreMonotoneAndFloored) {
  RandomStream rng(2, 0);
  for (const auto& s : {EpsilonSchedule::self_scaling(0.5),
                        EpsilonSchedule::linear(8.0, 0.003, 0.5),
                        EpsilonSchedule::fixed(0.5)}) {
    double eps = s.initial_epsilon(10.0 * rng.uniform());
    for (std::size_t t = 1; t <= 5000; ++t) {
      const double rho = 12.0 * rng.uniform();
      const bool accepted = rng.uniform() < 0.3;
      const double next = s.next_epsilon({t, eps, rho, accepted});
      ASSERT_LE(next, eps);
      ASSERT_GE(next, 0.5);
      eps = next;
    }
  }
}

TEST(Schedule, Errors) {
  EXPECT_THROW(EpsilonSchedule::fixed(0.0), ConfigError);
  EXPECT_THROW(EpsilonSchedule::self_scaling(-1.0), ConfigError);
  EXPECT_THROW(EpsilonSchedule::linear(1.0, 0.1, 2.0), ConfigError);
  EXPECT_THROW(EpsilonSchedule::linear(3.0, 0.0, 2.0), ConfigError);
  const auto s = EpsilonSchedule::self_scaling(1.0);
  EXPECT_THROW(s.next_epsilon({1, 0.5, 0.2, true}), ContractViolation);
  EXPECT_THROW(parse_schedule_kind("geometric"), ConfigError);
  for (ScheduleKind k : {ScheduleKind::fixed, ScheduleKind::linear, ScheduleKind::self_scaling}) {
    EXPECT_EQ(parse_schedule_kind(to_string(k)), k);
  }
}

}  // namespace
}  // namespace lfmcmc
