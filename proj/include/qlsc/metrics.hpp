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
#include <utility>

#include "qlsc/landscape.hpp"

namespace qlsc {

/// max - min of the scanned energies (QUBO units).
double landscape_span(const LandscapeGrid& grid);

/// Span compression 1 - LS(noisy) / LS(ideal). Grids must match exactly and
/// the ideal span must be positive. Negative values (noisy span exceeding
/// the ideal) are reported, not clamped.
double lsc(const LandscapeGrid& noisy, const LandscapeGrid& ideal);

struct LscDecomposition {
  double lsc_noisy = 0.0;
  double lsc_hw = 0.0;
  double lsc_hw_given_noisy = 0.0;
};

/// Three-way decomposition: (1 - lsc_hw) = (1 - lsc_noisy)(1 - lsc_hw_given_noisy)
/// holds by construction from the three spans.
LscDecomposition lsc_decompose(const LandscapeGrid& ideal, const LandscapeGrid& noisy,
                               const LandscapeGrid& hw);

/// e_scan_min / e_star; requires strictly negative e_star (the ratio breaks
/// across sign changes; callers should shift energies instead).
double approximation_ratio(double e_scan_min, double e_star);

/// Pearson correlation over the flattened energy matrices; both landscapes
/// must be non-constant.
double pearson_fidelity(const LandscapeGrid& a, const LandscapeGrid& b);

/// Euclidean distance in (gamma, beta) between the grid argmins of the two
/// energy surfaces. Argmin ties break to the lowest (gamma, beta) index.
double optimal_parameter_shift(const LandscapeGrid& a, const LandscapeGrid& b);

/// Everything the pipeline reports for one shared grid. Fields covering the
/// external condition are absent when no external landscape was provided.
struct MetricsReport {
  std::string label;
  double ls_ideal = 0.0;
  double ls_noisy = 0.0;
  std::optional<double> ls_external;
  double lsc_noisy = 0.0;
  std::optional<double> lsc_hw;
  std::optional<double> lsc_hw_given_noisy;
  double ar_ideal = 0.0;
  double ar_noisy = 0.0;
  std::optional<double> ar_external;
  double ff_at_optimum_ideal = 0.0;
  double ff_at_optimum_noisy = 0.0;
  std::optional<double> ff_at_optimum_external;
  double pearson_noisy_vs_ideal = 0.0;
  std::optional<double> pearson_external_vs_ideal;
  std::optional<double> pearson_external_vs_noisy;
  double ops_noisy = 0.0;
  std::optional<double> ops_external;
  std::optional<double> explained_fraction;  // lsc_noisy / lsc_hw
  bool negative_lsc = false;
};

/// Computes every report field; ff_at_optimum reads the grid cell nearest
/// `optimum_point` rather than re-simulating.
MetricsReport build_report(const LandscapeGrid& ideal, const LandscapeGrid& noisy,
                           const std::optional<LandscapeGrid>& external, double e_star,
                           std::pair<double, double> optimum_point);

std::string report_to_json(const MetricsReport& report);

/// Plain-text table in span order: LS_0, LS_n, LS_hw, LSC_n, LSC_hw.
std::string report_table(const MetricsReport& report);

}  // namespace qlsc
