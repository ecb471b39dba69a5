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

#include "lfmcmc/trace.hpp"

#include <bit>
#include <charconv>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include "lfmcmc/errors.hpp"

namespace lfmcmc {

std::string_view to_string(Phase phase) {
  return phase == Phase::burn_in ? "burn_in" : "sampling";
}

ChainTrace::ChainTrace(std::size_t param_dim, std::size_t tau_dim)
    : param_dim_(param_dim), tau_dim_(tau_dim) {}

void ChainTrace::reserve(std::size_t n) {
  phase_.reserve(n);
  accepted_.reserve(n);
  epsilon_.reserve(n);
  rho_.reserve(n);
  theta_.reserve(n * param_dim_);
  tau_.reserve(n * tau_dim_);
}

void ChainTrace::append(Phase phase, bool accepted, double epsilon, double rho,
                        std::span<const double> theta, std::span<const double> tau) {
  if (theta.size() != param_dim_ || tau.size() != tau_dim_) {
    throw ContractViolation("trace record has the wrong width");
  }
  phase_.push_back(phase);
  accepted_.push_back(accepted ? 1 : 0);
  epsilon_.push_back(epsilon);
  rho_.push_back(rho);
  theta_.insert(theta_.end(), theta.begin(), theta.end());
  tau_.insert(tau_.end(), tau.begin(), tau.end());
  if (accepted) ++accepted_count_;
}

std::vector<double> ChainTrace::theta_component(std::size_t k) const {
  std::vector<double> out(size());
  for (std::size_t i = 0; i < size(); ++i) out[i] = theta_[i * param_dim_ + k];
  return out;
}

std::vector<double> ChainTrace::tau_component(std::size_t r) const {
  std::vector<double> out(size());
  for (std::size_t i = 0; i < size(); ++i) out[i] = tau_[i * tau_dim_ + r];
  return out;
}

bool operator==(const ChainTrace& a, const ChainTrace& b) {
  // Bitwise comparison of doubles: NaN payloads and signed zeros matter.
  auto same_bits = [](const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size()) return false;
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (std::bit_cast<std::uint64_t>(x[i]) != std::bit_cast<std::uint64_t>(y[i])) {
        return false;
      }
    }
    return true;
  };
  return a.param_dim_ == b.param_dim_ && a.tau_dim_ == b.tau_dim_ &&
         a.phase_ == b.phase_ && a.accepted_ == b.accepted_ &&
         same_bits(a.epsilon_, b.epsilon_) && same_bits(a.rho_, b.rho_) &&
         same_bits(a.theta_, b.theta_) && same_bits(a.tau_, b.tau_);
}

std::vector<double> kept_component(const ChainTrace& trace, std::size_t k,
                                   std::size_t burn_in, std::size_t thin,
                                   PhaseFilter filter) {
  if (thin == 0) throw ConfigError("thin must be >= 1");
  std::vector<double> out;
  std::size_t seen = 0;
  for (std::size_t i = burn_in; i < trace.size(); ++i) {
    if (filter == PhaseFilter::sampling && trace.phase(i) != Phase::sampling) continue;
    if (filter == PhaseFilter::burn_in && trace.phase(i) != Phase::burn_in) continue;
    if (seen++ % thin == 0) out.push_back(trace.theta(i)[k]);
  }
  return out;
}

std::string format_double(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

double parse_double(std::string_view text) {
  if (text == "nan") return std::numeric_limits<double>::quiet_NaN();
  if (text == "inf") return std::numeric_limits<double>::infinity();
  if (text == "-inf") return -std::numeric_limits<double>::infinity();
  double value = 0.0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size()) {
    throw ConfigError("cannot parse '" + std::string(text) + "' as a number");
  }
  return value;
}

std::string trace_csv_header(std::size_t param_dim, std::size_t tau_dim) {
  std::string header = "t,phase,accepted,epsilon,rho";
  for (std::size_t k = 0; k < param_dim; ++k) header += ",theta_" + std::to_string(k + 1);
  for (std::size_t r = 0; r < tau_dim; ++r) header += ",tau_" + std::to_string(r + 1);
  return header;
}

void write_trace_csv(std::ostream& out, const ChainTrace& trace) {
  out << trace_csv_header(trace.param_dim(), trace.tau_dim()) << '\n';
  std::string line;
  for (std::size_t i = 0; i < trace.size(); ++i) {
    line.clear();
    line += std::to_string(trace.t(i));
    line += ',';
    line += to_string(trace.phase(i));
    line += trace.accepted(i) ? ",1," : ",0,";
    line += format_double(trace.epsilon(i));
    line += ',';
    line += format_double(trace.rho(i));
    for (double v : trace.theta(i)) {
      line += ',';
      line += format_double(v);
    }
    for (double v : trace.tau(i)) {
      line += ',';
      line += format_double(v);
    }
    line += '\n';
    out << line;
  }
}

namespace {

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(sep, start);
    if (pos == std::string_view::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
}

}  // namespace

ChainTrace read_trace_csv(std::istream& in) {
  std::string header;
  if (!std::getline(in, header)) throw ConfigError("trace CSV is empty");
  const auto columns = split(header, ',');
  if (columns.size() < 6 || !header.starts_with(trace_csv_header(0, 0) + ",")) {
    throw ConfigError("trace CSV has an unexpected header: " + header);
  }
  std::size_t param_dim = 0;
  std::size_t tau_dim = 0;
  for (std::size_t c = 5; c < columns.size(); ++c) {
    if (columns[c].starts_with("theta_")) {
      ++param_dim;
    } else if (columns[c].starts_with("tau_")) {
      ++tau_dim;
    } else {
      throw ConfigError("trace CSV has an unknown column: " + std::string(columns[c]));
    }
  }
  if (header != trace_csv_header(param_dim, tau_dim)) {
    throw ConfigError("trace CSV columns are out of order: " + header);
  }
  ChainTrace trace(param_dim, tau_dim);
  std::string line;
  std::vector<double> theta(param_dim), tau(tau_dim);
  std::size_t expected_t = 1;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto fields = split(line, ',');
    if (fields.size() != columns.size()) {
      throw ConfigError("trace CSV row has " + std::to_string(fields.size()) +
                        " fields, expected " + std::to_string(columns.size()));
    }
    if (fields[0] != std::to_string(expected_t)) {
      throw ConfigError("trace CSV rows are not consecutive at t=" +
                        std::string(fields[0]));
    }
    ++expected_t;
    Phase phase;
    if (fields[1] == "burn_in") {
      phase = Phase::burn_in;
    } else if (fields[1] == "sampling") {
      phase = Phase::sampling;
    } else {
      throw ConfigError("bad phase '" + std::string(fields[1]) + "'");
    }
    if (fields[2] != "0" && fields[2] != "1") throw ConfigError("bad accepted flag");
    for (std::size_t k = 0; k < param_dim; ++k) theta[k] = parse_double(fields[5 + k]);
    for (std::size_t r = 0; r < tau_dim; ++r) tau[r] = parse_double(fields[5 + param_dim + r]);
    trace.append(phase, fields[2] == "1", parse_double(fields[3]), parse_double(fields[4]),
                 theta, tau);
  }
  return trace;
}

void write_key_values(std::ostream& out, const KeyValues& values) {
  for (const auto& [key, value] : values) out << key << '=' << value << '\n';
}

std::map<std::string, std::string> read_key_values(std::istream& in) {
  std::map<std::string, std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("metadata line without '=': " + line);
    out[line.substr(0, eq)] = line.substr(eq + 1);
  }
  return out;
}

KeyValues trace_metadata_values(const ChainTrace& trace) {
  const TraceMetadata& m = trace.metadata();
  std::string names;
  for (std::size_t i = 0; i < m.param_names.size(); ++i) {
    if (i) names += ',';
    names += m.param_names[i];
  }
  KeyValues kv = {
      {"sampler", m.sampler},
      {"seed", std::to_string(m.seed)},
      {"stream_id", std::to_string(m.stream_id)},
      {"config_digest", m.config_digest},
      {"param_names", names},
      {"records", std::to_string(trace.size())},
      {"accepted", std::to_string(trace.accepted_count())},
  };
  for (std::size_t i = 0; i < m.warnings.size(); ++i) {
    kv.emplace_back("warning_" + std::to_string(i + 1), m.warnings[i]);
  }
  return kv;
}

}  // namespace lfmcmc
