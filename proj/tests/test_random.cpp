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

#include "lfmcmc/random.hpp"

#include <gtest/gtest.h>

#include <array>
#include <cmath>
#include <cstdint>
#include <vector>

namespace lfmcmc {
namespace {

using Block = std::array<std::uint32_t, 4>;
using Key = std::array<std::uint32_t, 2>;

// Known-answer vectors published with the Random123 reference implementation.
TEST(Philox, MatchesReferenceVectors) {
  EXPECT_EQ(RandomStream::philox4x32_10(Block{0, 0, 0, 0}, Key{0, 0}),
            (Block{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8}));
  EXPECT_EQ(RandomStream::philox4x32_10(
                Block{0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff},
                Key{0xffffffff, 0xffffffff}),
            (Block{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd}));
  EXPECT_EQ(RandomStream::philox4x32_10(
                Block{0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344},
                Key{0xa4093822, 0x299f31d0}),
            (Block{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1}));
}

TEST(RandomStream, SameSeedAndStreamReplays) {
  RandomStream a(7, 3), b(7, 3);
  for (int i = 0; i < 1000; ++i) {
    ASSERT_EQ(a(), b());
    ASSERT_EQ(a.normal(), b.normal());
  }
}

TEST(RandomStream, CopyReplaysFromCurrentPosition) {
  RandomStream a(11, 0);
  for (int i = 0; i < 5; ++i) a.normal();
  RandomStream b = a;
  for (int i = 0; i < 100; ++i) ASSERT_EQ(a.uniform(), b.uniform());
  EXPECT_TRUE(a == b);
}

TEST(RandomStream, DistinctStreamsDiffer) {
  RandomStream a(5, 0), b(5, 1), c(6, 0);
  int same_ab = 0, same_ac = 0;
  for (int i = 0; i < 1000; ++i) {
    const auto x = a(), y = b(), z = c();
    same_ab += x == y;
    same_ac += x == z;
  }
  EXPECT_EQ(same_ab, 0);
  EXPECT_EQ(same_ac, 0);
}

TEST(RandomStream, DistinctStreamsAreUncorrelated) {
  constexpr int kN = 100000;
  RandomStream a(42, 0), b(42, 1);
  double sab = 0.0;
  for (int i = 0; i < kN; ++i) sab += a.normal() * b.normal();
  // Correlation of independent normals has sd 1 / sqrt(n).
  EXPECT_LT(std::abs(sab / kN), 5.0 / std::sqrt(kN));
}

TEST(RandomStream, UniformIsOpenUnitIntervalWithCorrectMoments) {
  constexpr int kN = 200000;
  RandomStream rng(1, 0);
  double s = 0.0, s2 = 0.0;
  for (int i = 0; i < kN; ++i) {
    const double u = rng.uniform();
    ASSERT_GT(u, 0.0);
    ASSERT_LT(u, 1.0);
    s += u;
    s2 += u * u;
  }
  const double m = s / kN;
  EXPECT_NEAR(m, 0.5, 6.0 * std::sqrt(1.0 / 12.0 / kN));
  EXPECT_NEAR(s2 / kN - m * m, 1.0 / 12.0, 0.002);
}

TEST(RandomStream, NormalAndExponentialMoments) {
  constexpr int kN = 200000;
  RandomStream rng(2, 0);
  double sn = 0.0, sn2 = 0.0, se = 0.0;
  for (int i = 0; i < kN; ++i) {
    const double z = rng.normal();
    sn += z;
    sn2 += z * z;
    se += rng.exponential(4.0);
  }
  EXPECT_NEAR(sn / kN, 0.0, 6.0 / std::sqrt(kN));
  EXPECT_NEAR(sn2 / kN, 1.0, 0.02);
  EXPECT_NEAR(se / kN, 0.25, 6.0 * 0.25 / std::sqrt(kN));
}

TEST(RandomStream, BlockCounterAdvancesOncePerFourWords) {
  RandomStream rng(3, 9);
  EXPECT_EQ(rng.block(), 0u);
  rng();
  rng();
  EXPECT_EQ(rng.block(), 1u);
  EXPECT_EQ(rng.seed(), 3u);
  EXPECT_EQ(rng.stream_id(), 9u);
}

}  // namespace
}  // namespace lfmcmc
