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

#ifndef LFMCMC_TRACE_HPP_
#define LFMCMC_TRACE_HPP_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace lfmcmc {

enum class Phase : std::uint8_t { burn_in, sampling };

std::string_view to_string(Phase phase);

enum class PhaseFilter { all, burn_in, sampling };

struct TraceMetadata {
  std::string sampler;
  std::uint64_t seed = 0;
  std::uint64_t stream_id = 0;
  std::string config_digest;
  std::vector<std::string> param_names;
  std::vector<std::string> warnings;
};

// Per-step record of one chain, stored column-wise. Record i describes the
// state after step t = i + 1.
class ChainTrace {
 public:
  explicit ChainTrace(std::size_t param_dim = 1, std::size_t tau_dim = 0);

  void reserve(std::size_t n);
  void append(Phase phase, bool accepted, double epsilon, double rho,
              std::span<const double> theta, std::span<const double> tau = {});

  std::size_t size() const { return epsilon_.size(); }
  bool empty() const { return epsilon_.empty(); }
  std::size_t param_dim() const { return param_dim_; }
  std::size_t tau_dim() const { return tau_dim_; }

  std::size_t t(std::size_t i) const { return i + 1; }
  Phase phase(std::size_t i) const { return phase_[i]; }
  bool accepted(std::size_t i) const { return accepted_[i] != 0; }
  double epsilon(std::size_t i) const { return epsilon_[i]; }
  double rho(std::size_t i) const { return rho_[i]; }
  std::span<const double> theta(std::size_t i) const {
    return {theta_.data() + i * param_dim_, param_dim_};
  }
  std::span<const double> tau(std::size_t i) const {
    return {tau_.data() + i * tau_dim_, tau_dim_};
  }

  std::span<const double> epsilons() const { return epsilon_; }
  std::vector<double> theta_component(std::size_t k) const;
  std::vector<double> tau_component(std::size_t r) const;

  std::size_t accepted_count() const { return accepted_count_; }

  TraceMetadata& metadata() { return metadata_; }
  const TraceMetadata& metadata() const { return metadata_; }

  friend bool operator==(const ChainTrace& a, const ChainTrace& b);

 private:
  std::size_t param_dim_;
  std::size_t tau_dim_;
  std::vector<Phase> phase_;
  std::vector<std::uint8_t> accepted_;
  std::vector<double> epsilon_;
  std::vector<double> rho_;
  std::vector<double> theta_;
  std::vector<double> tau_;
  std::size_t accepted_count_ = 0;
  TraceMetadata metadata_;
};

// Selects theta component k from records with index >= burn_in in the given
// phase, keeping every thin-th of them.
std::vector<double> kept_component(const ChainTrace& trace, std::size_t k,
                                   std::size_t burn_in = 0, std::size_t thin = 1,
                                   PhaseFilter filter = PhaseFilter::sampling);

// CSV with header t,phase,accepted,epsilon,rho,theta_1..theta_d[,tau_1..tau_R].
// Doubles use the shortest round-trip representation, so output is
// byte-identical for identical traces.
void write_trace_csv(std::ostream& out, const ChainTrace& trace);
ChainTrace read_trace_csv(std::istream& in);
std::string trace_csv_header(std::size_t param_dim, std::size_t tau_dim);

// Sidecar key=value file, one pair per line, keys in the given order.
using KeyValues = std::vector<std::pair<std::string, std::string>>;
void write_key_values(std::ostream& out, const KeyValues& values);
std::map<std::string, std::string> read_key_values(std::istream& in);
KeyValues trace_metadata_values(const ChainTrace& trace);

// Shortest round-trip decimal form; "nan", "inf", "-inf" for non-finite.
std::string format_double(double value);
double parse_double(std::string_view text);

}  // namespace lfmcmc

#endif  // LFMCMC_TRACE_HPP_
