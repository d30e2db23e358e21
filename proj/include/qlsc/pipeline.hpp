// Copyright 2026 The qlsc authors
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

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qlsc/noise.hpp"
#include "qlsc/qubo.hpp"

namespace qlsc {

struct GenerateParams {
  int n = 6;
  int k = 3;
  Volatility volatility = Volatility::low;
  std::uint64_t seed = 1;
};

/// Fully resolved run description: re-executing a persisted RunConfig yields
/// a byte-identical output bundle. The instance is stored either as generator
/// parameters or inline (paths given on the command line are resolved before
/// persisting, so later file edits cannot change a re-run). Execution-only
/// settings such as the worker count deliberately live outside the config.
struct RunConfig {
  std::optional<GenerateParams> generate;
  std::optional<PortfolioInstance> instance;
  NoiseSpec noise;
  double half_width = 0.4;
  int points_per_axis = 13;
  std::optional<long long> shots;
  std::uint64_t seed = 0;
  std::string out_dir = "out";
  std::optional<std::string> external;
  bool zne_enabled = false;
  std::vector<double> zne_factors{1.0, 3.0, 5.0};
  std::optional<long long> zne_shots;
  int starts = 16;
};

std::string config_to_json(const RunConfig& config);
RunConfig config_from_json(const std::string& text);
RunConfig load_config(const std::string& path);

/// Raised by run_pipeline with the failing stage's name.
struct StageError : std::runtime_error {
  StageError(std::string stage_name, const std::string& message)
      : std::runtime_error(message), stage(std::move(stage_name)) {}
  std::string stage;
};

/// Representative depolarizing + relaxation + readout parameters used when a
/// run does not provide its own noise model.
NoiseSpec default_noise();

/// Runs optimize -> ideal scan -> noisy scan -> optional external ingest ->
/// metrics -> optional ZNE, writing the bundle (run_config.json,
/// instance.json, optimum.json, landscape CSVs, metrics.json, table.txt,
/// zne.json) into config.out_dir. `log` receives one summary line per stage.
void run_pipeline(const RunConfig& config, int threads, std::ostream& log);

}  // namespace qlsc
