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

#ifndef LFMCMC_SCHEDULE_HPP_
#define LFMCMC_SCHEDULE_HPP_

#include <cstddef>
#include <string_view>

namespace lfmcmc {

enum class ScheduleKind { fixed, linear, self_scaling };

std::string_view to_string(ScheduleKind kind);
ScheduleKind parse_schedule_kind(std::string_view name);

struct ScheduleState {
  std::size_t t = 0;
  double eps_prev = 0.0;
  double rho_proposed = 0.0;
  bool accepted = false;
};

// Tolerance sequence {eps_t}: non-increasing and floored at target.
//
//   fixed         eps_t = target
//   linear        eps_t = max(eps0 - rate * t, target)
//   self_scaling  eps_0 = rho(T(x_0), T(y)); each step proposes
//                 eps'' = max(target, min(rho', eps_{t-1})) and keeps it only
//                 if the move is accepted.
class EpsilonSchedule {
 public:
  static EpsilonSchedule fixed(double target);
  static EpsilonSchedule linear(double epsilon0, double rate, double target);
  static EpsilonSchedule self_scaling(double target);

  ScheduleKind kind() const { return kind_; }
  double target() const { return target_; }
  double epsilon0() const { return epsilon0_; }
  double rate() const { return rate_; }

  // eps_0. For self_scaling this is max(target, rho0); the other kinds ignore
  // rho0.
  double initial_epsilon(double rho0) const;

  // The tolerance in force while step t evaluates its acceptance ratio, before
  // the accept/reject decision. For self_scaling this is the candidate eps''.
  double step_epsilon(std::size_t t, double eps_prev, double rho_proposed) const;

  // eps_t after step t has been decided.
  double next_epsilon(const ScheduleState& state) const;

 private:
  EpsilonSchedule(ScheduleKind kind, double target, double epsilon0, double rate);

  ScheduleKind kind_;
  double target_;
  double epsilon0_;
  double rate_;
};

}  // namespace lfmcmc

#endif  // LFMCMC_SCHEDULE_HPP_
