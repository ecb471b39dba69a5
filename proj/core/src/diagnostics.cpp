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

#include "lfmcmc/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <numeric>
#include <ostream>
#include <sstream>

#include "lfmcmc/errors.hpp"
#include "lfmcmc/special_functions.hpp"

namespace lfmcmc {

ReferenceDistribution gamma_reference(double shape, double rate) {
  std::ostringstream label;
  label << "Gamma(" << shape << "," << rate << ")";
  return {[shape, rate](double x) { return gamma_cdf(x, shape, rate); }, label.str()};
}

ReferenceDistribution normal_reference(double mean, double sd) {
  std::ostringstream label;
  label << "N(" << mean << "," << sd * sd << ")";
  return {[mean, sd](double x) { return normal_cdf(x, mean, sd); }, label.str()};
}

double ks_statistic(std::span<const double> sample, const ReferenceDistribution& ref) {
  if (sample.empty()) throw ContractViolation("ks_statistic needs a non-empty sample");
  std::vector<double> sorted(sample.begin(), sample.end());
  for (double v : sorted) {
    if (!std::isfinite(v)) throw ContractViolation("ks_statistic sample is not finite");
  }
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double f = ref.cdf(sorted[i]);
    const double upper = static_cast<double>(i + 1) / n - f;
    const double lower = f - static_cast<double>(i) / n;
    d = std::max({d, std::abs(upper), std::abs(lower)});
  }
  return d;
}

double ks_two_sample(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) throw ContractViolation("ks_two_sample needs samples");
  std::vector<double> x(a.begin(), a.end()), y(b.begin(), b.end());
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  const double nx = static_cast<double>(x.size());
  const double ny = static_cast<double>(y.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < x.size() && j < y.size()) {
    const double v = std::min(x[i], y[j]);
    while (i < x.size() && x[i] <= v) ++i;
    while (j < y.size() && y[j] <= v) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / nx - static_cast<double>(j) / ny));
  }
  return d;
}

double acceptance_rate(const ChainTrace& trace, PhaseFilter filter) {
  std::size_t total = 0;
  std::size_t accepted = 0;
  for (std::size_t i = 0; i < trace.size(); ++i) {
    if (filter == PhaseFilter::sampling && trace.phase(i) != Phase::sampling) continue;
    if (filter == PhaseFilter::burn_in && trace.phase(i) != Phase::burn_in) continue;
    ++total;
    if (trace.accepted(i)) ++accepted;
  }
  if (total == 0) throw ContractViolation("acceptance_rate: no records match the filter");
  return static_cast<double>(accepted) / static_cast<double>(total);
}

std::vector<std::size_t> sojourn_lengths(std::span<const double> series, double kappa) {
  std::vector<std::size_t> out;
  std::size_t run = 0;
  for (double v : series) {
    if (v > kappa) {
      ++run;
    } else if (run > 0) {
      out.push_back(run);
      run = 0;
    }
  }
  if (run > 0) out.push_back(run);
  return out;
}

std::vector<std::size_t> sojourn_lengths(const ChainTrace& trace, std::size_t component,
                                         double kappa) {
  if (component >= trace.param_dim()) {
    throw ContractViolation("sojourn_lengths: component index out of range");
  }
  const std::vector<double> series = trace.theta_component(component);
  return sojourn_lengths(series, kappa);
}

Interval hpd_interval(std::span<const double> sample, double mass) {
  if (!(mass > 0.0 && mass < 1.0)) throw ContractViolation("hpd mass must be in (0, 1)");
  if (sample.size() < 20) throw ContractViolation("hpd_interval needs >= 20 points");
  std::vector<double> sorted(sample.begin(), sample.end());
  std::sort(sorted.begin(), sorted.end());
  const std::size_t n = sorted.size();
  const auto m = static_cast<std::size_t>(std::ceil(mass * static_cast<double>(n)));
  const std::size_t span = std::min(m, n - 1);
  Interval best{sorted[0], sorted[span]};
  for (std::size_t i = 1; i + span < n; ++i) {
    const double width = sorted[i + span] - sorted[i];
    if (width < best.width()) best = {sorted[i], sorted[i + span]};
  }
  return best;
}

double mean(std::span<const double> xs) {
  if (xs.empty()) throw ContractViolation("mean of an empty sample");
  return std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
}

double variance(std::span<const double> xs) {
  if (xs.size() < 2) throw ContractViolation("variance needs >= 2 points");
  const double m = mean(xs);
  double ss = 0.0;
  for (double v : xs) ss += (v - m) * (v - m);
  return ss / static_cast<double>(xs.size() - 1);
}

double quantile(std::span<const double> xs, double p) {
  if (xs.empty()) throw ContractViolation("quantile of an empty sample");
  std::vector<double> sorted(xs.begin(), xs.end());
  std::sort(sorted.begin(), sorted.end());
  const double h = p * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

double median(std::span<const double> xs) { return quantile(xs, 0.5); }

void write_diagnostics_csv(std::ostream& out, std::span<const DiagnosticRow> rows) {
  out << kDiagnosticsHeader << '\n';
  for (const DiagnosticRow& r : rows) {
    out << r.experiment << ',' << format_double(r.epsilon) << ',' << r.replicates << ','
        << r.kernel << ',' << r.metric << ',' << r.statistic << ','
        << format_double(r.value) << '\n';
  }
}

std::vector<DiagnosticRow> read_diagnostics_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kDiagnosticsHeader) {
    throw ConfigError("diagnostics CSV has an unexpected header");
  }
  std::vector<DiagnosticRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) f.push_back(field);
    if (f.size() != 7) throw ConfigError("diagnostics CSV row needs 7 fields: " + line);
    DiagnosticRow r;
    r.experiment = f[0];
    r.epsilon = parse_double(f[1]);
    r.replicates = static_cast<std::size_t>(std::stoull(f[2]));
    r.kernel = f[3];
    r.metric = f[4];
    r.statistic = f[5];
    r.value = parse_double(f[6]);
    rows.push_back(std::move(r));
  }
  return rows;
}

}  // namespace lfmcmc
