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

#ifndef LFMCMC_ERRORS_HPP_
#define LFMCMC_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace lfmcmc {

// Invalid user-supplied configuration: bad scale, unknown name, improper prior
// where a proper one is needed. The CLI maps this to exit code 1.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A caller broke a documented precondition (negative distance, dimension
// mismatch, tolerance below its floor).
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// The sampler could not find a starting state with non-zero kernel weight
// inside its draw budget.
class InitializationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace lfmcmc

#endif  // LFMCMC_ERRORS_HPP_
