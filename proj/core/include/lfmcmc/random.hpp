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

#ifndef LFMCMC_RANDOM_HPP_
#define LFMCMC_RANDOM_HPP_

#include <array>
#include <cstdint>
#include <limits>
#include <random>

namespace lfmcmc {

// Philox4x32-10 counter-based generator (Salmon et al., SC'11).
//
// The 64-bit seed is the key. The 128-bit counter is split into a 64-bit
// block index (low half) and the 64-bit stream id (high half), so streams that
// share a seed but differ in stream id never overlap. Copying a stream copies
// its position: the copy replays exactly what the original would produce.
class RandomStream {
 public:
  using result_type = std::uint64_t;

  explicit RandomStream(std::uint64_t seed = 0, std::uint64_t stream_id = 0);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()();

  // Uniform on the open interval (0, 1) with 53 bits of resolution.
  double uniform();
  double normal();
  double normal(double mean, double sd) { return mean + sd * normal(); }
  // Inverse-CDF exponential variate with the given rate.
  double exponential(double rate);

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_id_; }
  // Number of 128-bit blocks consumed so far.
  std::uint64_t block() const { return block_; }

  // Raw block function, exposed for known-answer tests.
  static std::array<std::uint32_t, 4> philox4x32_10(
      std::array<std::uint32_t, 4> counter, std::array<std::uint32_t, 2> key);

  friend bool operator==(const RandomStream&, const RandomStream&);

 private:
  void refill();

  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::uint64_t block_ = 0;
  std::array<std::uint32_t, 4> buffer_{};
  int next_word_ = 4;
  std::normal_distribution<double> normal_;
};

}  // namespace lfmcmc

#endif  // LFMCMC_RANDOM_HPP_
