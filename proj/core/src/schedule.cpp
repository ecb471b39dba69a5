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

#include <algorithm>
#include <cmath>
#include <string>

#include "lfmcmc/errors.hpp"

namespace lfmcmc {

std::string_view to_string(ScheduleKind kind) {
  switch (kind) {
    case ScheduleKind::fixed:
      return "fixed";
    case ScheduleKind::linear:
      return "linear";
    case ScheduleKind::self_scaling:
      return "self_scaling";
  }
  return "unknown";
}

ScheduleKind parse_schedule_kind(std::string_view name) {
  if (name == "fixed") return ScheduleKind::fixed;
  if (name == "linear") return ScheduleKind::linear;
  if (name == "self_scaling") return ScheduleKind::self_scaling;
  throw ConfigError("unknown schedule '" + std::string(name) + "'");
}

EpsilonSchedule::EpsilonSchedule(ScheduleKind kind, double target, double epsilon0,
                                 double rate)
    : kind_(kind), target_(target), epsilon0_(epsilon0), rate_(rate) {
  if (!(target_ > 0.0) || !std::isfinite(target_)) {
    throw ConfigError("target_epsilon must be positive and finite");
  }
}

EpsilonSchedule EpsilonSchedule::fixed(double target) {
  return EpsilonSchedule(ScheduleKind::fixed, target, target, 0.0);
}

EpsilonSchedule EpsilonSchedule::linear(double epsilon0, double rate, double target) {
  if (!(epsilon0 >= target)) throw ConfigError("linear schedule needs epsilon0 >= target");
  if (!(rate > 0.0)) throw ConfigError("linear schedule needs rate > 0");
  return EpsilonSchedule(ScheduleKind::linear, target, epsilon0, rate);
}

EpsilonSchedule EpsilonSchedule::self_scaling(double target) {
  return EpsilonSchedule(ScheduleKind::self_scaling, target, target, 0.0);
}

double EpsilonSchedule::initial_epsilon(double rho0) const {
  switch (kind_) {
    case ScheduleKind::fixed:
      return target_;
    case ScheduleKind::linear:
      return epsilon0_;
    case ScheduleKind::self_scaling:
      return std::max(target_, rho0);
  }
  return target_;
}

double EpsilonSchedule::step_epsilon(std::size_t t, double eps_prev,
                                     double rho_proposed) const {
  if (eps_prev < target_) {
    throw ContractViolation("eps_prev is below the target tolerance");
  }
  switch (kind_) {
    case ScheduleKind::fixed:
      return target_;
    case ScheduleKind::linear:
      return std::max(epsilon0_ - rate_ * static_cast<double>(t), target_);
    case ScheduleKind::self_scaling:
      return std::max(target_, std::min(rho_proposed, eps_prev));
  }
  return target_;
}

double EpsilonSchedule::next_epsilon(const ScheduleState& s) const {
  const double candidate = step_epsilon(s.t, s.eps_prev, s.rho_proposed);
  if (kind_ == ScheduleKind::self_scaling && !s.accepted) return s.eps_prev;
  return candidate;
}

}  // namespace lfmcmc
