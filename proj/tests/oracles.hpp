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

// Independent reference implementations used by the tests and the
// acceptance suite.

#ifndef LFMCMC_TESTS_ORACLES_HPP_
#define LFMCMC_TESTS_ORACLES_HPP_

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <vector>

#include "lfmcmc/diagnostics.hpp"

namespace lfmcmc::oracles {

// Slow reference: adaptive Simpson quadrature of the density, independent of
// the series and continued-fraction code under test.
inline double simpson_panel(double a, double b, double fa, double fm, double fb) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

inline double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double fa,
                        double fm, double fb, double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = simpson_panel(a, m, fa, flm, fm);
  const double right = simpson_panel(m, b, fm, frm, fb);
  if (depth <= 0 || std::abs(left + right - whole) <= 15.0 * tol) {
    return left + right + (left + right - whole) / 15.0;
  }
  return adaptive_simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         adaptive_simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

inline double integrate(const std::function<double(double)>& f, double a, double b) {
  if (a == b) return 0.0;
  const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  return adaptive_simpson(f, a, b, fa, fm, fb, simpson_panel(a, b, fa, fm, fb), 1e-13, 50);
}

inline double oracle_normal_cdf(double x) {
  auto pdf = [](double t) { return std::exp(-0.5 * t * t) / std::sqrt(2.0 * std::numbers::pi); };
  return x >= 0.0 ? 0.5 + integrate(pdf, 0.0, x) : 0.5 - integrate(pdf, x, 0.0);
}

inline double oracle_gamma_cdf(double x, double shape, double rate) {
  if (x <= 0.0) return 0.0;
  const double log_norm = shape * std::log(rate) - std::lgamma(shape);
  auto pdf = [&](double t) {
    return t <= 0.0 ? (shape == 1.0 ? rate : 0.0)
                    : std::exp(log_norm + (shape - 1.0) * std::log(t) - rate * t);
  };
  // Integrate the shorter side, splitting at the mode where the density peaks.
  const double mode = (shape - 1.0) / rate;
  if (x <= mode) return integrate(pdf, 0.0, x);
  const double upper = mode + 60.0 * std::sqrt(shape) / rate + 60.0 / rate;
  return 1.0 - integrate(pdf, x, std::max(x, upper));
}

// Double-loop definition of sup |F_n - F| over the sample points.
inline double brute_force_ks(const std::vector<double>& xs, const ReferenceDistribution& ref) {
  const double n = static_cast<double>(xs.size());
  double d = 0.0;
  for (double x : xs) {
    std::size_t le = 0, lt = 0;
    for (double y : xs) {
      le += y <= x;
      lt += y < x;
    }
    const double f = ref.cdf(x);
    d = std::max({d, std::abs(static_cast<double>(le) / n - f),
                  std::abs(f - static_cast<double>(lt) / n)});
  }
  return d;
}

}  // namespace lfmcmc::oracles

#endif  // LFMCMC_TESTS_ORACLES_HPP_
