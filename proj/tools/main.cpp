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

// lfmcmc command-line driver.
//
//   lfmcmc run <config>
//   lfmcmc prior-predictive <config>
//   lfmcmc figure <id> --seed N [--scale F] --out DIR
//
// Exit codes: 0 success, 1 configuration error, 2 runtime failure.

#include <filesystem>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "lfmcmc/config.hpp"
#include "lfmcmc/errors.hpp"
#include "lfmcmc/figures.hpp"
#include "lfmcmc/harness.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitRuntime = 2;

void report_warnings(const std::vector<std::string>& warnings) {
  for (const std::string& w : warnings) std::cerr << "warning: " << w << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Likelihood-free MCMC experiment runner"};
  app.require_subcommand(1);

  std::string out_dir;
  std::string config_path;

  CLI::App* run = app.add_subcommand("run", "Run the chains described by a config file");
  run->add_option("config", config_path, "Experiment config (INI)")->required();
  run->add_option("--out", out_dir, "Output directory (default $LFMCMC_OUTPUT_DIR)");

  CLI::App* prior = app.add_subcommand("prior-predictive",
                                       "Simulate summaries at parameters drawn over a box");
  prior->add_option("config", config_path, "Experiment config (INI)")->required();
  prior->add_option("--out", out_dir, "Output directory (default $LFMCMC_OUTPUT_DIR)");

  std::string figure_id;
  lfmcmc::FigureOptions figure_options;
  CLI::App* figure = app.add_subcommand("figure", "Run a figure's experiment grid");
  figure->add_option("id", figure_id, "fig2, fig3, fig4, fig5 or fig6")->required();
  figure->add_option("--seed", figure_options.seed, "Master seed")->required();
  figure->add_option("--scale", figure_options.scale, "Iteration-count multiplier");
  figure->add_option("--out", out_dir, "Output directory (default $LFMCMC_OUTPUT_DIR)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  const std::filesystem::path out =
      out_dir.empty() ? lfmcmc::default_output_dir() : std::filesystem::path(out_dir);
  try {
    if (*run) {
      const lfmcmc::ExperimentConfig config = lfmcmc::load_config(config_path);
      const lfmcmc::RunOutput result = lfmcmc::run_experiment(config, out);
      report_warnings(result.warnings);
      std::cout << "wrote " << result.directory.string() << '\n';
    } else if (*prior) {
      const lfmcmc::ExperimentConfig config = lfmcmc::load_config(config_path);
      const auto rows = lfmcmc::run_prior_predictive(config, out);
      std::cout << "wrote " << rows.size() << " rows to " << (out / config.name).string()
                << '\n';
    } else if (*figure) {
      const lfmcmc::FigureResult result = lfmcmc::run_figure(figure_id, figure_options);
      std::filesystem::create_directories(out);
      lfmcmc::write_figure(result, figure_options, out);
      report_warnings(result.warnings);
      std::cout << "wrote " << result.rows.size() << " rows to "
                << (out / (result.id + ".csv")).string() << '\n';
    }
  } catch (const lfmcmc::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitOk;
}
