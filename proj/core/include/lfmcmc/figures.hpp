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

// Experiment grids behind the published figures, emitted as tidy diagnostics
// rows (plus selected traces). `scale` multiplies iteration counts; for fig3
// and fig4 it multiplies the burn-in and the thinning interval, so every
// replicate still keeps 1000 states.
//
//   fig2  Exponential model, self-scaling to eps = 3 from lambda_0 = 10 on four
//         chains, plus fixed-target runs at eps in {4.5, 4, 3.5, 3}
//   fig3  kernel (uniform, Epanechnikov, triangle) and metric (Mahalanobis,
//         scaled Euclidean, Euclidean) comparisons at calibrated acceptance
//         rates, 25 replicates per cell
//   fig4  statistic subsets (mean, sd, both) over eps grids, 25 replicates
//   fig5  Gamma model sojourns above kappa in {45, 50} for S in {1, 10, 25, 50}
//         with uniform (eps = 2) and gaussian (eps = 2 / sqrt 3) kernels
//   fig6  error-augmented runs for both models, S = 50

#ifndef LFMCMC_FIGURES_HPP_
#define LFMCMC_FIGURES_HPP_

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lfmcmc/diagnostics.hpp"
#include "lfmcmc/trace.hpp"

namespace lfmcmc {

struct FigureOptions {
  std::uint64_t seed = 1;
  double scale = 1.0;
  // Keep per-chain traces in the result (fig2, fig6).
  bool keep_traces = true;
};

struct FigureResult {
  std::string id;
  std::vector<DiagnosticRow> rows;
  std::vector<std::pair<std::string, ChainTrace>> traces;
  // Extra long-format table (fig5 sojourn lengths): header plus lines.
  std::string extra_name;
  std::string extra_header;
  std::vector<std::string> extra_lines;
  std::vector<std::string> warnings;
};

const std::vector<std::string>& figure_ids();

// Throws ConfigError for an unknown id or a non-positive scale.
FigureResult run_figure(std::string_view id, const FigureOptions& options);

// Writes <dir>/<id>.csv (+ .meta), one CSV per kept trace and the extra table.
void write_figure(const FigureResult& result, const FigureOptions& options,
                  const std::filesystem::path& dir);

// Smallest n >= 1 closest to base * scale.
std::size_t scaled_count(std::size_t base, double scale);

}  // namespace lfmcmc

#endif  // LFMCMC_FIGURES_HPP_
