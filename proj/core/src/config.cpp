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

#include "lfmcmc/config.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <array>
#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <charconv>
#include <cmath>
#include <concepts>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "lfmcmc/errors.hpp"
#include "lfmcmc/trace.hpp"

namespace lfmcmc {

namespace {

namespace pt = boost::property_tree;

const std::map<std::string, std::set<std::string>>& known_keys() {
  static const std::map<std::string, std::set<std::string>> keys = {
      {"experiment",
       {"name", "sampler", "seed", "n_iter", "burn_in", "thin", "n_chains", "output_dir"}},
      {"model",
       {"name", "statistics", "n", "prior_lo", "prior_hi", "efficiency", "prior_upper"}},
      {"weight", {"kernel", "metric", "epsilon", "covariance", "pilot_theta", "pilot_sims"}},
      {"schedule", {"type", "epsilon0", "rate"}},
      {"proposal", {"scale"}},
      {"init", {"theta0", "strategy", "budget"}},
      {"replicate", {"S"}},
      {"epsilon_augmented", {"rate", "proposal_scale", "epsilon0", "filter"}},
      {"error_augmented",
       {"S", "tau_prior_scale", "tau_proposal_scale", "min_bandwidth", "normalize_bandwidth"}},
      {"rejection", {"n_accept", "max_draws"}},
      {"prior_predictive", {"ranges", "n_draws"}},
  };
  return keys;
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

// Typed access to one parsed section, reporting errors as "section.key".
class Section {
 public:
  Section(const pt::ptree* tree, std::string name) : tree_(tree), name_(std::move(name)) {}

  std::optional<std::string> raw(const std::string& key) const {
    if (!tree_) return std::nullopt;
    auto v = tree_->get_optional<std::string>(pt::ptree::path_type(key, '\0'));
    if (!v) return std::nullopt;
    return trim(*v);
  }

  std::string qualified(const std::string& key) const { return name_ + "." + key; }

  [[noreturn]] void fail(const std::string& key, const std::string& why) const {
    throw ConfigError("config key '" + qualified(key) + "': " + why);
  }

  void get(const std::string& key, std::string& out) const {
    if (auto v = raw(key)) out = *v;
  }

  void get(const std::string& key, double& out) const {
    if (auto v = raw(key)) out = to_double(key, *v);
  }

  void get(const std::string& key, std::optional<double>& out) const {
    if (auto v = raw(key)) out = to_double(key, *v);
  }

  template <std::unsigned_integral U>
  void get(const std::string& key, U& out) const {
    if (auto v = raw(key)) out = static_cast<U>(to_unsigned(key, *v));
  }

  void get(const std::string& key, bool& out) const {
    if (auto v = raw(key)) {
      if (*v == "true" || *v == "1") {
        out = true;
      } else if (*v == "false" || *v == "0") {
        out = false;
      } else {
        fail(key, "expected true or false, got '" + *v + "'");
      }
    }
  }

  void get(const std::string& key, std::vector<double>& out) const {
    if (auto v = raw(key)) out = to_list(key, *v);
  }

  template <class Enum, class Parser>
  void get_enum(const std::string& key, Enum& out, Parser parse) const {
    if (auto v = raw(key)) {
      try {
        out = parse(*v);
      } catch (const ConfigError& e) {
        fail(key, e.what());
      }
    }
  }

  double to_double(const std::string& key, const std::string& text) const {
    double value = 0.0;
    const char* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc() || ptr != end || text.empty()) {
      fail(key, "expected a decimal number, got '" + text + "'");
    }
    return value;
  }

  std::uint64_t to_unsigned(const std::string& key, const std::string& text) const {
    std::uint64_t value = 0;
    const char* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc() || ptr != end || text.empty()) {
      fail(key, "expected a non-negative integer, got '" + text + "'");
    }
    return value;
  }

  std::vector<std::string> tokens(const std::string& text) const {
    std::string spaced = text;
    std::replace(spaced.begin(), spaced.end(), ',', ' ');
    std::istringstream in(spaced);
    std::vector<std::string> out;
    for (std::string tok; in >> tok;) out.push_back(tok);
    return out;
  }

  std::vector<double> to_list(const std::string& key, const std::string& text) const {
    std::vector<double> out;
    for (const std::string& tok : tokens(text)) out.push_back(to_double(key, tok));
    return out;
  }

  std::vector<std::pair<double, double>> to_ranges(const std::string& key) const {
    std::vector<std::pair<double, double>> out;
    auto v = raw(key);
    if (!v) return out;
    for (const std::string& tok : tokens(*v)) {
      const auto colon = tok.find(':');
      if (colon == std::string::npos) fail(key, "expected lo:hi, got '" + tok + "'");
      const double lo = to_double(key, tok.substr(0, colon));
      const double hi = to_double(key, tok.substr(colon + 1));
      if (!(lo <= hi)) fail(key, "range '" + tok + "' has lo > hi");
      out.emplace_back(lo, hi);
    }
    return out;
  }

 private:
  const pt::ptree* tree_;
  std::string name_;
};

void require(bool ok, const std::string& key, const std::string& why) {
  if (!ok) throw ConfigError("config key '" + key + "': " + why);
}

}  // namespace

std::string_view to_string(SamplerKind kind) {
  switch (kind) {
    case SamplerKind::rejection:
      return "rejection";
    case SamplerKind::lf_mcmc:
      return "lf_mcmc";
    case SamplerKind::replicate:
      return "replicate";
    case SamplerKind::epsilon_augmented:
      return "epsilon_augmented";
    case SamplerKind::error_augmented:
      return "error_augmented";
  }
  return "unknown";
}

SamplerKind parse_sampler_kind(std::string_view name) {
  for (SamplerKind k : {SamplerKind::rejection, SamplerKind::lf_mcmc, SamplerKind::replicate,
                        SamplerKind::epsilon_augmented, SamplerKind::error_augmented}) {
    if (to_string(k) == name) return k;
  }
  throw ConfigError("unknown sampler '" + std::string(name) + "'");
}

ExperimentConfig parse_config(std::istream& in) {
  pt::ptree tree;
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError(std::string("malformed config: ") + e.what());
  }

  std::vector<std::string> canonical;
  for (const auto& [section, body] : tree) {
    const auto it = known_keys().find(section);
    if (!body.data().empty()) {
      throw ConfigError("config key '" + section + "' must be inside a [section]");
    }
    if (it == known_keys().end()) {
      throw ConfigError("unknown config section '[" + section + "]'");
    }
    for (const auto& [key, value] : body) {
      if (!it->second.contains(key)) {
        throw ConfigError("unknown config key '" + section + "." + key + "'");
      }
      canonical.push_back(section + "." + key + "=" + trim(value.data()));
    }
  }
  std::sort(canonical.begin(), canonical.end());

  auto section = [&](const std::string& name) {
    auto child = tree.get_child_optional(pt::ptree::path_type(name, '\0'));
    return Section(child ? &*child : nullptr, name);
  };

  ExperimentConfig c;
  for (const std::string& line : canonical) c.canonical_text += line + "\n";

  const Section ex = section("experiment");
  ex.get("name", c.name);
  ex.get_enum("sampler", c.sampler, parse_sampler_kind);
  ex.get("seed", c.seed);
  ex.get("n_iter", c.n_iter);
  ex.get("burn_in", c.burn_in);
  ex.get("thin", c.thin);
  ex.get("n_chains", c.n_chains);
  ex.get("output_dir", c.output_dir);
  require(c.thin >= 1, "experiment.thin", "must be at least 1");
  require(c.n_chains >= 1, "experiment.n_chains", "must be at least 1");
  require(!c.name.empty() && c.name.find(',') == std::string::npos, "experiment.name",
          "must be non-empty and contain no commas");

  const Section mo = section("model");
  mo.get("name", c.model);
  mo.get_enum("statistics", c.statistics, parse_statistic_subset);
  mo.get("n", c.n);
  mo.get("prior_lo", c.prior_lo);
  mo.get("prior_hi", c.prior_hi);
  mo.get("efficiency", c.efficiency);
  mo.get("prior_upper", c.prior_upper);
  require(c.model == "normal_toy" || c.model == "exponential" || c.model == "gamma",
          "model.name", "unknown model '" + c.model + "'");

  const Section we = section("weight");
  we.get_enum("kernel", c.kernel, parse_kernel);
  we.get_enum("metric", c.metric, parse_metric_kind);
  we.get("epsilon", c.epsilon);
  we.get("covariance", c.covariance);
  we.get("pilot_theta", c.pilot_theta);
  we.get("pilot_sims", c.pilot_sims);
  require(c.epsilon > 0.0 && std::isfinite(c.epsilon), "weight.epsilon",
          "must be positive and finite");

  const Section sc = section("schedule");
  sc.get_enum("type", c.schedule, parse_schedule_kind);
  sc.get("epsilon0", c.schedule_epsilon0);
  sc.get("rate", c.schedule_rate);
  if (c.schedule == ScheduleKind::linear) {
    require(c.schedule_epsilon0.has_value(), "schedule.epsilon0",
            "required for a linear schedule");
  }

  const Section pr = section("proposal");
  pr.get("scale", c.proposal_scale);
  require(!c.proposal_scale.empty(), "proposal.scale", "needs at least one value");
  for (double s : c.proposal_scale) require(s > 0.0, "proposal.scale", "must be positive");

  const Section ini = section("init");
  ini.get("theta0", c.theta0);
  ini.get_enum("strategy", c.init.strategy, parse_init_strategy);
  ini.get("budget", c.init.budget);
  require(c.init.budget >= 1, "init.budget", "must be at least 1");

  const Section re = section("replicate");
  re.get("S", c.replicates);
  require(c.replicates >= 1, "replicate.S", "must be at least 1");

  const Section ea = section("epsilon_augmented");
  ea.get("rate", c.epsilon_augmentation.pseudo_prior_rate);
  ea.get("proposal_scale", c.epsilon_augmentation.proposal_scale);
  ea.get("epsilon0", c.epsilon_augmentation.epsilon0);
  ea.get("filter", c.epsilon_filter);
  require(c.epsilon_augmentation.pseudo_prior_rate > 0.0, "epsilon_augmented.rate",
          "must be positive");
  require(c.epsilon_augmentation.proposal_scale > 0.0, "epsilon_augmented.proposal_scale",
          "must be positive");
  require(c.epsilon_augmentation.epsilon0 > 0.0, "epsilon_augmented.epsilon0",
          "must be positive");

  const Section er = section("error_augmented");
  c.error_augmentation.tau_prior_scales = {0.75};
  c.error_augmentation.tau_proposal_scales = {0.3};
  er.get("S", c.error_augmentation.replicates);
  er.get("tau_prior_scale", c.error_augmentation.tau_prior_scales);
  er.get("tau_proposal_scale", c.error_augmentation.tau_proposal_scales);
  er.get("min_bandwidth", c.error_augmentation.min_bandwidth);
  er.get("normalize_bandwidth", c.error_augmentation.normalize_bandwidth);
  require(c.error_augmentation.replicates >= 2, "error_augmented.S", "must be at least 2");
  for (double d : c.error_augmentation.tau_prior_scales) {
    require(d > 0.0, "error_augmented.tau_prior_scale", "must be positive");
  }
  for (double d : c.error_augmentation.tau_proposal_scales) {
    require(d > 0.0, "error_augmented.tau_proposal_scale", "must be positive");
  }

  const Section rj = section("rejection");
  rj.get("n_accept", c.n_accept);
  rj.get("max_draws", c.max_draws);
  require(c.n_accept >= 1, "rejection.n_accept", "must be at least 1");
  require(c.max_draws >= 1, "rejection.max_draws", "must be at least 1");

  const Section pp = section("prior_predictive");
  c.ranges = pp.to_ranges("ranges");
  pp.get("n_draws", c.n_draws);

  return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path.string() + "'");
  return parse_config(in);
}

std::string sha256_hex(std::string_view data) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
  unsigned int length = 0;
  if (EVP_Digest(data.data(), data.size(), digest.data(), &length, EVP_sha256(), nullptr) != 1) {
    throw NumericalError("SHA-256 digest failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(2 * length);
  for (unsigned int i = 0; i < length; ++i) {
    out.push_back(kHex[digest[i] >> 4]);
    out.push_back(kHex[digest[i] & 0xF]);
  }
  return out;
}

std::string config_digest(const ExperimentConfig& config) {
  return sha256_hex(config.canonical_text);
}

std::unique_ptr<GenerativeModel> make_model(const ExperimentConfig& config) {
  if (config.model == "normal_toy") {
    return std::make_unique<NormalToy>(config.prior_lo, config.prior_hi, config.efficiency);
  }
  if (config.model == "exponential") {
    return std::make_unique<ExponentialModel>(config.statistics, config.n, config.prior_upper);
  }
  if (config.model == "gamma") {
    if (config.statistics != StatisticSubset::both) {
      throw ConfigError("config key 'model.statistics': the gamma model uses both statistics");
    }
    return std::make_unique<GammaModel>(config.n, config.prior_upper);
  }
  throw ConfigError("config key 'model.name': unknown model '" + config.model + "'");
}

SummaryVector make_observed(const ExperimentConfig& config) {
  if (config.model == "normal_toy") return NormalToy::observed();
  return observed_summaries(config.model == "gamma" ? StatisticSubset::both
                                                    : config.statistics);
}

EpsilonSchedule make_schedule(const ExperimentConfig& config) {
  switch (config.schedule) {
    case ScheduleKind::fixed:
      return EpsilonSchedule::fixed(config.epsilon);
    case ScheduleKind::linear:
      return EpsilonSchedule::linear(config.schedule_epsilon0.value_or(config.epsilon),
                                     config.schedule_rate, config.epsilon);
    case ScheduleKind::self_scaling:
      break;
  }
  return EpsilonSchedule::self_scaling(config.epsilon);
}

namespace {

std::vector<double> default_theta(const GenerativeModel& model) {
  if (model.name() == "exponential") return {0.25};
  if (model.name() == "gamma") return {16.0, 0.25};
  return std::vector<double>(model.param_dim(), 0.0);
}

ParamVector sized_theta(const std::vector<double>& values, const GenerativeModel& model,
                        const std::string& key) {
  if (values.empty()) return ParamVector(default_theta(model));
  require(values.size() == model.param_dim(), key,
          "needs " + std::to_string(model.param_dim()) + " values for model '" +
              std::string(model.name()) + "'");
  return ParamVector(values);
}

}  // namespace

DistanceMetric make_metric(const ExperimentConfig& config, const GenerativeModel& model,
                           RandomStream& pilot) {
  const std::size_t dim = model.summary_dim();
  if (config.metric == MetricKind::euclidean) return DistanceMetric::euclidean(dim);
  Eigen::MatrixXd cov;
  if (!config.covariance.empty()) {
    require(config.covariance.size() == dim * dim, "weight.covariance",
            "needs " + std::to_string(dim * dim) + " row-major values");
    cov = from_row_major(config.covariance, dim);
  } else {
    const ParamVector at = sized_theta(config.pilot_theta, model, "weight.pilot_theta");
    cov = estimate_covariance(model, at, config.pilot_sims, pilot);
  }
  try {
    return DistanceMetric::make(config.metric, dim, cov);
  } catch (const ConfigError& e) {
    throw ConfigError(std::string("config key 'weight.covariance': ") + e.what());
  }
}

ParamVector make_theta0(const ExperimentConfig& config, const GenerativeModel& model) {
  return sized_theta(config.theta0, model, "init.theta0");
}

}  // namespace lfmcmc
