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

#ifndef LFMCMC_SPECIAL_FUNCTIONS_HPP_
#define LFMCMC_SPECIAL_FUNCTIONS_HPP_

namespace lfmcmc {

// Regularized lower incomplete gamma P(a, x) = gamma(a, x) / Gamma(a).
// Series for x < a + 1, Lentz continued fraction for Q otherwise.
double regularized_gamma_p(double a, double x);

// Gamma(shape, rate) CDF; 0 for x <= 0.
double gamma_cdf(double x, double shape, double rate);
double gamma_pdf(double x, double shape, double rate);

double normal_cdf(double x, double mean = 0.0, double sd = 1.0);
double normal_pdf(double x, double mean = 0.0, double sd = 1.0);

}  // namespace lfmcmc

#endif  // LFMCMC_SPECIAL_FUNCTIONS_HPP_
