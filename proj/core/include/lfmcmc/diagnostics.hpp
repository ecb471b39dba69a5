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

// Sampler and approximation diagnostics: KS accuracy against a reference
// posterior, acceptance rates, tail sojourns and HPD intervals.

#ifndef LFMCMC_DIAGNOSTICS_HPP_
#define LFMCMC_DIAGNOSTICS_HPP_

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "lfmcmc/trace.hpp"

namespace lfmcmc {

struct ReferenceDistribution {
  std::function<double(double)> cdf;
  std::string label;
};

ReferenceDistribution gamma_reference(double shape, double rate);
ReferenceDistribution normal_reference(double mean, double sd);

// One-sample Kolmogorov-Smirnov distance
//   D = max_i max(|i/n - F(x_(i))|, |(i-1)/n - F(x_(i))|).
double ks_statistic(std::span<const double> sample, const ReferenceDistribution& ref);

// Two-sample KS distance sup |F_a - F_b|.
double ks_two_sample(std::span<const double> a, std::span<const double> b);

double acceptance_rate(const ChainTrace& trace, PhaseFilter filter = PhaseFilter::all);

// Lengths of maximal runs with value > kappa; runs cut by either end of the
// series are included.
std::vector<std::size_t> sojourn_lengths(std::span<const double> series, double kappa);
std::vector<std::size_t> sojourn_lengths(const ChainTrace& trace, std::size_t component,
                                         double kappa);

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  double width() const { return hi - lo; }
  double midpoint() const { return 0.5 * (lo + hi); }
  bool contains(double v) const { return lo <= v && v <= hi; }
};

// Shortest [x_(i), x_(i+m)] over the sorted sample, m = ceil(mass * n).
// Needs at least 20 points.
Interval hpd_interval(std::span<const double> sample, double mass);

double mean(std::span<const double> xs);
// Sample variance, denominator n - 1.
double variance(std::span<const double> xs);
// Linear-interpolation quantile (type 7), p in [0, 1].
double quantile(std::span<const double> xs, double p);
double median(std::span<const double> xs);

// One row of the tidy diagnostics CSV:
// experiment,epsilon,S,kernel,metric,statistic,value
struct DiagnosticRow {
  std::string experiment;
  double epsilon = 0.0;
  std::size_t replicates = 1;
  std::string kernel;
  std::string metric;
  std::string statistic;
  double value = 0.0;
};

inline constexpr const char* kDiagnosticsHeader =
    "experiment,epsilon,S,kernel,metric,statistic,value";

void write_diagnostics_csv(std::ostream& out, std::span<const DiagnosticRow> rows);
std::vector<DiagnosticRow> read_diagnostics_csv(std::istream& in);

}  // namespace lfmcmc

#endif  // LFMCMC_DIAGNOSTICS_HPP_
