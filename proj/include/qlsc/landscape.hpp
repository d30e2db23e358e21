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

#include <optional>
#include <string>

#include <Eigen/Dense>

#include "qlsc/noise.hpp"
#include "qlsc/qaoa.hpp"
#include "qlsc/qubo.hpp"

namespace qlsc {

/// Uniform square (gamma, beta) grid: N ascending values per axis spanning
/// center +- half_width with spacing 2*half_width/(N-1).
struct ParameterGrid {
  double gamma_center = 0.0;
  double beta_center = 0.0;
  double half_width = 0.4;
  int points_per_axis = 13;
  Eigen::VectorXd gamma_values;
  Eigen::VectorXd beta_values;
};

ParameterGrid make_grid(double gamma_center, double beta_center, double half_width,
                        int n_points);

/// Exact value equality of both axes; metrics refuse grids that differ.
bool same_grid(const ParameterGrid& a, const ParameterGrid& b);

/// Scanned energy/feasibility surfaces. Matrices are indexed
/// (gamma index, beta index); energies are QUBO-unit expectations.
struct LandscapeGrid {
  ParameterGrid grid;
  Eigen::MatrixXd energies;
  Eigen::MatrixXd ff;
  std::optional<long long> shots;
  Condition condition = Condition::ideal;
  std::string label;
  int n = 0;  // sidecar metadata
  int k = 0;
};

/// Evaluates every grid point: ideal statevector when `noise` is absent,
/// density-matrix evolution otherwise; with `shots`, outcomes are sampled
/// with the per-point seed derive_seed(seed, point index) so results are
/// independent of evaluation order. Points may be evaluated on `threads`
/// workers; output is bit-identical for any thread count.
LandscapeGrid scan_landscape(const ParameterGrid& grid, const IsingHamiltonian& ham,
                             int k, const std::optional<NoiseSpec>& noise,
                             std::optional<long long> shots, std::uint64_t seed,
                             int threads = 1, const std::string& label = "");

/// CSV with header gamma,beta,energy,ff,shots (beta-major, gamma ascending,
/// 17 significant digits) plus a .meta.json sidecar carrying label,
/// condition, n, k and the grid parameters.
void export_landscape(const LandscapeGrid& grid, const std::string& path);

/// Reads the CSV (and sidecar when present, restoring label/condition;
/// otherwise the landscape is tagged external). Rejects malformed rows,
/// duplicate or missing coordinates, and non-uniform axes.
LandscapeGrid ingest_landscape(const std::string& path);

/// Sidecar path: replaces a trailing ".csv" with ".meta.json".
std::string landscape_meta_path(const std::string& csv_path);

}  // namespace qlsc
