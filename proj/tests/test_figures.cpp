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

#include "lfmcmc/figures.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <string>

#include "lfmcmc/errors.hpp"

namespace lfmcmc {
namespace {

namespace fs = std::filesystem;

std::size_t count_rows(const FigureResult& res, const std::string& experiment,
                       const std::string& stat) {
  std::size_t n = 0;
  for (const auto& r : res.rows) n += r.experiment == experiment && r.statistic == stat;
  return n;
}

TEST(Figures, ScaledCount) {
  EXPECT_EQ(scaled_count(10000, 1.0), 10000u);
  EXPECT_EQ(scaled_count(10000, 0.25), 2500u);
  EXPECT_EQ(scaled_count(1000, 1e-6), 1u);
  EXPECT_EQ(scaled_count(3, 0.5), 2u);
}

TEST(Figures, BadInputsAreConfigErrors) {
  EXPECT_THROW(run_figure("fig9", {}), ConfigError);
  EXPECT_THROW(run_figure("fig2", FigureOptions{1, 0.0}), ConfigError);
  EXPECT_THROW(run_figure("fig2", FigureOptions{1, -1.0}), ConfigError);
  EXPECT_THROW(run_figure("fig2", FigureOptions{1, std::nan("")}), ConfigError);
  EXPECT_EQ(figure_ids().size(), 5u);
}

TEST(Figures, Fig2IsDeterministicAndWritesFiles) {
  const FigureOptions opt{11, 0.05};
  const FigureResult a = run_figure("fig2", opt);
  const FigureResult b = run_figure("fig2", opt);
  ASSERT_EQ(a.rows.size(), b.rows.size());
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    EXPECT_EQ(a.rows[i].statistic, b.rows[i].statistic);
    EXPECT_TRUE(a.rows[i].value == b.rows[i].value ||
                (std::isnan(a.rows[i].value) && std::isnan(b.rows[i].value)));
  }
  EXPECT_EQ(count_rows(a, "fig2_chain0", "iterations_to_target"), 1u);
  EXPECT_EQ(count_rows(a, "fig2_chain3", "final_epsilon"), 1u);

  const fs::path dir = fs::temp_directory_path() / "lfmcmc_fig2_test";
  fs::remove_all(dir);
  fs::create_directories(dir);
  write_figure(a, opt, dir);
  EXPECT_TRUE(fs::exists(dir / "fig2.csv"));
  std::ifstream meta(dir / "fig2.csv.meta");
  const auto kv = read_key_values(meta);
  EXPECT_EQ(kv.at("seed"), "11");
  EXPECT_EQ(kv.at("figure"), "fig2");
  EXPECT_TRUE(fs::exists(dir / "fig2_chain0.csv"));
  std::ifstream rows(dir / "fig2.csv");
  EXPECT_EQ(read_diagnostics_csv(rows).size(), a.rows.size());
  fs::remove_all(dir);
}

TEST(Figures, Fig3HasReplicatesPerCell) {
  const FigureResult res = run_figure("fig3", FigureOptions{3, 0.01, false});
  // Key: experiment, kernel, metric, calibrated epsilon.
  std::map<std::string, std::size_t> ks_per_cell;
  for (const auto& r : res.rows) {
    if (r.statistic == "ks") {
      ks_per_cell[r.experiment + "/" + r.kernel + "/" + r.metric + "/" +
                  format_double(r.epsilon)]++;
    }
  }
  // Three kernels and three metrics (one shared curve) at three levels each.
  EXPECT_EQ(ks_per_cell.size(), 6u * 3u);
  for (const auto& [cell, n] : ks_per_cell) EXPECT_EQ(n, 25u) << cell;
  for (const auto& r : res.rows) {
    if (r.statistic == "ks") {
      EXPECT_GE(r.value, 0.0);
      EXPECT_LE(r.value, 1.0);
    }
  }
}

TEST(Figures, Fig4HasTwelveCells) {
  const FigureResult res = run_figure("fig4", FigureOptions{3, 0.01, false});
  std::size_t cells = 0;
  for (const auto& r : res.rows) cells += r.statistic == "ks_mean";
  EXPECT_EQ(cells, 12u);
  EXPECT_EQ(count_rows(res, "fig4_sd", "ks_alt_mean"), 4u);
  EXPECT_EQ(count_rows(res, "fig4_mean", "ks_alt_mean"), 0u);
  EXPECT_EQ(count_rows(res, "fig4_both", "ks"), 4u * 25u);
}

TEST(Figures, Fig6ReportsTauSummaries) {
  const FigureResult res = run_figure("fig6", FigureOptions{3, 0.01});
  EXPECT_GE(count_rows(res, "fig6_gamma", "mean_tau_1"), 1u);
  EXPECT_GE(count_rows(res, "fig6_exponential", "hpd50_lo_tau_1"), 1u);
  EXPECT_FALSE(res.traces.empty());
}

}  // namespace
}  // namespace lfmcmc
