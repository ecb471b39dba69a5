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

#include "lfmcmc/special_functions.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "lfmcmc/errors.hpp"

namespace lfmcmc {

namespace {

constexpr int kMaxIterations = 1000;
constexpr double kRelEps = 1e-16;
constexpr double kTiny = 1e-300;

// log(x^a e^-x / Gamma(a)), shared prefactor of both expansions.
double log_prefactor(double a, double x) { return a * std::log(x) - x - std::lgamma(a); }

double gamma_p_series(double a, double x) {
  double term = 1.0 / a;
  double sum = term;
  double ap = a;
  for (int n = 0; n < kMaxIterations; ++n) {
    ap += 1.0;
    term *= x / ap;
    sum += term;
    if (std::abs(term) < std::abs(sum) * kRelEps) break;
  }
  return sum * std::exp(log_prefactor(a, x));
}

// Q(a, x) by the modified Lentz method.
double gamma_q_continued_fraction(double a, double x) {
  double b = x + 1.0 - a;
  double c = 1.0 / kTiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= kMaxIterations; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < kTiny) d = kTiny;
    c = b + an / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < kRelEps) break;
  }
  return std::exp(log_prefactor(a, x)) * h;
}

}  // namespace

double regularized_gamma_p(double a, double x) {
  if (!(a > 0.0)) throw ContractViolation("incomplete gamma needs a > 0");
  if (std::isnan(x)) return std::numeric_limits<double>::quiet_NaN();
  if (x <= 0.0) return 0.0;
  if (std::isinf(x)) return 1.0;
  if (x < a + 1.0) return gamma_p_series(a, x);
  return 1.0 - gamma_q_continued_fraction(a, x);
}

double gamma_cdf(double x, double shape, double rate) {
  if (!(shape > 0.0) || !(rate > 0.0)) {
    throw ContractViolation("gamma_cdf needs shape > 0 and rate > 0");
  }
  return regularized_gamma_p(shape, rate * x);
}

double gamma_pdf(double x, double shape, double rate) {
  if (!(shape > 0.0) || !(rate > 0.0)) {
    throw ContractViolation("gamma_pdf needs shape > 0 and rate > 0");
  }
  if (x < 0.0) return 0.0;
  if (x == 0.0) return shape == 1.0 ? rate : (shape < 1.0 ? INFINITY : 0.0);
  return std::exp(shape * std::log(rate) + (shape - 1.0) * std::log(x) - rate * x -
                  std::lgamma(shape));
}

double normal_cdf(double x, double mean, double sd) {
  if (!(sd > 0.0)) throw ContractViolation("normal_cdf needs sd > 0");
  return 0.5 * std::erfc(-(x - mean) / (sd * std::numbers::sqrt2));
}

double normal_pdf(double x, double mean, double sd) {
  if (!(sd > 0.0)) throw ContractViolation("normal_pdf needs sd > 0");
  const double z = (x - mean) / sd;
  return std::exp(-0.5 * z * z) / (sd * std::sqrt(2.0 * std::numbers::pi));
}

}  // namespace lfmcmc
