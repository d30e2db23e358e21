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

#include "qlsc/zne.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include <json.hpp>

#include "qlsc/rng.hpp"

namespace qlsc {

namespace {

void require(bool cond, const std::string& msg) {
  if (!cond) throw std::invalid_argument(msg);
}

std::vector<std::size_t> order_by_factor(const std::vector<double>& factors) {
  std::vector<std::size_t> idx(factors.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::sort(idx.begin(), idx.end(),
            [&](std::size_t a, std::size_t b) { return factors[a] < factors[b]; });
  return idx;
}

}  // namespace

std::pair<double, std::vector<double>> richardson_extrapolate(
    const std::vector<std::pair<double, double>>& points) {
  require(points.size() >= 2, "Richardson extrapolation needs at least 2 points");
  const std::size_t m = points.size();
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j)
      require(points[i].first != points[j].first,
              "Richardson extrapolation requires distinct scales");

  std::vector<double> coeffs(m);
  double value = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    double c = 1.0;
    for (std::size_t j = 0; j < m; ++j) {
      if (j == i) continue;
      c *= points[j].first / (points[j].first - points[i].first);
    }
    coeffs[i] = c;
    value += c * points[i].second;
  }
  return {value, coeffs};
}

double propagate_std(const std::vector<double>& coefficients,
                     const std::vector<double>& stds) {
  require(coefficients.size() == stds.size(), "coefficient/std length mismatch");
  double acc = 0.0;
  for (std::size_t i = 0; i < coefficients.size(); ++i)
    acc += coefficients[i] * coefficients[i] * stds[i] * stds[i];
  return std::sqrt(acc);
}

ZneResult build_zne_result(const std::vector<double>& factors,
                           const std::vector<double>& energies,
                           const std::vector<double>& stds) {
  require(factors.size() >= 2, "ZNE needs at least 2 factors");
  require(factors.size() == energies.size() && factors.size() == stds.size(),
          "factors/energies/stds length mismatch");

  ZneResult result;
  result.factors = factors;
  result.energies = energies;
  result.stds = stds;

  std::vector<std::pair<double, double>> points(factors.size());
  for (std::size_t i = 0; i < factors.size(); ++i) points[i] = {factors[i], energies[i]};
  std::tie(result.extrapolated, result.coefficients) = richardson_extrapolate(points);
  result.extrapolated_std = propagate_std(result.coefficients, result.stds);

  const auto order = order_by_factor(factors);
  const std::size_t raw_idx = order.front();
  const double raw = energies[raw_idx];
  result.improvement_pct =
      raw != 0.0 ? 100.0 * (raw - result.extrapolated) / std::abs(raw) : 0.0;

  const double raw_std = stds[raw_idx];
  if (raw_std > 0.0) {
    result.inflation = result.extrapolated_std / raw_std;
  } else {
    // exact-probability runs: report the equal-variance Richardson floor
    double c2 = 0.0;
    for (double c : result.coefficients) c2 += c * c;
    result.inflation = std::sqrt(c2);
  }

  bool nondecreasing = true, nonincreasing = true;
  for (std::size_t i = 0; i + 1 < order.size(); ++i) {
    const double a = energies[order[i]];
    const double b = energies[order[i + 1]];
    if (b < a) nondecreasing = false;
    if (b > a) nonincreasing = false;
  }
  result.monotone = nondecreasing || nonincreasing;
  return result;
}

ZneResult run_zne(const GateSchedule& sched, const Eigen::VectorXd& diag,
                  const NoiseSpec& noise, const std::vector<double>& factors,
                  std::optional<long long> shots, std::uint64_t seed) {
  require(factors.size() >= 2, "ZNE needs at least 2 factors");
  if (shots) require(*shots >= 1, "shots must be >= 1");

  std::vector<double> energies(factors.size());
  std::vector<double> stds(factors.size(), 0.0);
  bool clamped = false;

  for (std::size_t i = 0; i < factors.size(); ++i) {
    NoiseSpec amplified = noise;
    amplified.scale = factors[i];
    clamped = clamped || scaled_channels(amplified).clamped;
    OutcomeDistribution dist = noisy_distribution(sched, diag, amplified);
    if (shots) {
      dist = sample_counts(dist, *shots, derive_seed(seed, i));
      const double mean = energy_expectation(dist, diag, true);
      double ssd = 0.0;
      for (const auto& [bits, count] : dist.counts) {
        const double d = diag(static_cast<Eigen::Index>(bits)) - mean;
        ssd += static_cast<double>(count) * d * d;
      }
      const auto n = static_cast<double>(*shots);
      const double variance = n > 1.0 ? ssd / (n - 1.0) : 0.0;
      energies[i] = mean;
      stds[i] = std::sqrt(variance / n);
    } else {
      energies[i] = energy_expectation(dist, diag, false);
    }
  }

  ZneResult result = build_zne_result(factors, energies, stds);
  result.clamped = clamped;
  return result;
}

std::string zne_to_json(const ZneResult& result) {
  nlohmann::ordered_json j;
  j["factors"] = result.factors;
  j["energies"] = result.energies;
  j["stds"] = result.stds;
  j["extrapolated"] = result.extrapolated;
  j["extrapolated_std"] = result.extrapolated_std;
  j["coefficients"] = result.coefficients;
  j["improvement_pct"] = result.improvement_pct;
  j["inflation"] = result.inflation;
  j["monotone"] = result.monotone;
  j["clamped"] = result.clamped;
  return j.dump(2) + "\n";
}

}  // namespace qlsc
