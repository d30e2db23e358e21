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
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "qlsc/noise.hpp"
#include "qlsc/qaoa.hpp"

namespace qlsc {

/// Richardson extrapolation of one observable measured at amplified noise.
/// `improvement_pct` is 100 * (raw - extrapolated) / |raw| with raw = the
/// smallest-factor energy, so a degradation shows up as a negative value.
/// `inflation` is extrapolated_std / std(raw); in exact-probability runs
/// (all stds zero) it reports the equal-variance floor sqrt(sum c_i^2).
/// `monotone` is false when the energy sequence is not monotone in the
/// factor, the regime where the extrapolated value should not be trusted.
struct ZneResult {
  std::vector<double> factors;
  std::vector<double> energies;
  std::vector<double> stds;
  std::vector<double> coefficients;
  double extrapolated = 0.0;
  double extrapolated_std = 0.0;
  double improvement_pct = 0.0;
  double inflation = 0.0;
  bool monotone = true;
  bool clamped = false;
};

/// Lagrange interpolation through (scale, value) points evaluated at scale 0.
/// Returns the value and the per-point weights (which sum to 1).
std::pair<double, std::vector<double>> richardson_extrapolate(
    const std::vector<std::pair<double, double>>& points);

/// sqrt(sum c_i^2 s_i^2), assuming independent per-factor estimates.
double propagate_std(const std::vector<double>& coefficients,
                     const std::vector<double>& stds);

/// Assembles a ZneResult from measured (or injected) per-factor energies.
ZneResult build_zne_result(const std::vector<double>& factors,
                           const std::vector<double>& energies,
                           const std::vector<double>& stds);

/// Runs the schedule once per factor with scale = factor, sampling `shots`
/// outcomes per factor when given (seed derived per factor) or using exact
/// probabilities otherwise, then extrapolates to zero noise.
ZneResult run_zne(const GateSchedule& sched, const Eigen::VectorXd& diag,
                  const NoiseSpec& noise, const std::vector<double>& factors,
                  std::optional<long long> shots, std::uint64_t seed);

std::string zne_to_json(const ZneResult& result);

}  // namespace qlsc
