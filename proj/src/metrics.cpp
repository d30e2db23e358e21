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

#include "qlsc/metrics.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include <json.hpp>

namespace qlsc {

namespace {

void require(bool cond, const std::string& msg) {
  if (!cond) throw std::invalid_argument(msg);
}

void require_same_grid(const LandscapeGrid& a, const LandscapeGrid& b) {
  require(same_grid(a.grid, b.grid),
          "landscapes must share an identical parameter grid");
}

struct GridPoint {
  int gi = 0;
  int bi = 0;
};

// Lexicographic scan keeps the first strict minimum: ties break to the
// lowest (gamma, beta) index pair.
GridPoint argmin_cell(const LandscapeGrid& grid) {
  GridPoint best;
  double value = grid.energies(0, 0);
  const int npts = grid.grid.points_per_axis;
  for (int gi = 0; gi < npts; ++gi)
    for (int bi = 0; bi < npts; ++bi)
      if (grid.energies(gi, bi) < value) {
        value = grid.energies(gi, bi);
        best = {gi, bi};
      }
  return best;
}

int nearest_index(const Eigen::VectorXd& values, double target) {
  int best = 0;
  double dist = std::abs(values(0) - target);
  for (int i = 1; i < values.size(); ++i) {
    const double d = std::abs(values(i) - target);
    if (d < dist) {
      dist = d;
      best = i;
    }
  }
  return best;
}

nlohmann::ordered_json opt_json(const std::optional<double>& v) {
  return v ? nlohmann::ordered_json(*v) : nlohmann::ordered_json();
}

std::string cell(double v, const char* fmt) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), fmt, v);
  return buf;
}

std::string cell(const std::optional<double>& v, const char* fmt) {
  return v ? cell(*v, fmt) : std::string("-");
}

}  // namespace

double landscape_span(const LandscapeGrid& grid) {
  require(grid.energies.size() > 0, "landscape has no grid points");
  return grid.energies.maxCoeff() - grid.energies.minCoeff();
}

double lsc(const LandscapeGrid& noisy, const LandscapeGrid& ideal) {
  require_same_grid(noisy, ideal);
  const double ls0 = landscape_span(ideal);
  require(ls0 > 0.0, "LSC is undefined for a zero ideal span");
  return 1.0 - landscape_span(noisy) / ls0;
}

LscDecomposition lsc_decompose(const LandscapeGrid& ideal, const LandscapeGrid& noisy,
                               const LandscapeGrid& hw) {
  require_same_grid(noisy, ideal);
  require_same_grid(hw, ideal);
  const double ls0 = landscape_span(ideal);
  const double lsn = landscape_span(noisy);
  const double lshw = landscape_span(hw);
  require(ls0 > 0.0 && lsn > 0.0, "decomposition requires positive ideal/noisy spans");
  LscDecomposition d;
  d.lsc_noisy = 1.0 - lsn / ls0;
  d.lsc_hw = 1.0 - lshw / ls0;
  d.lsc_hw_given_noisy = 1.0 - lshw / lsn;
  return d;
}

double approximation_ratio(double e_scan_min, double e_star) {
  if (!(e_star < 0.0))
    throw std::invalid_argument(
        "approximation ratio requires a strictly negative optimum energy; "
        "shift all energies by a constant so the optimum is negative");
  return e_scan_min / e_star;
}

double pearson_fidelity(const LandscapeGrid& a, const LandscapeGrid& b) {
  require_same_grid(a, b);
  const auto va = a.energies.reshaped();
  const auto vb = b.energies.reshaped();
  const double ma = va.mean();
  const double mb = vb.mean();
  const Eigen::VectorXd da = va.array() - ma;
  const Eigen::VectorXd db = vb.array() - mb;
  const double sa = da.norm();
  const double sb = db.norm();
  require(sa > 0.0 && sb > 0.0,
          "Pearson correlation is undefined for a constant landscape");
  return da.dot(db) / (sa * sb);
}

double optimal_parameter_shift(const LandscapeGrid& a, const LandscapeGrid& b) {
  require_same_grid(a, b);
  const auto pa = argmin_cell(a);
  const auto pb = argmin_cell(b);
  const double dg = a.grid.gamma_values(pa.gi) - b.grid.gamma_values(pb.gi);
  const double db = a.grid.beta_values(pa.bi) - b.grid.beta_values(pb.bi);
  return std::hypot(dg, db);
}

MetricsReport build_report(const LandscapeGrid& ideal, const LandscapeGrid& noisy,
                           const std::optional<LandscapeGrid>& external, double e_star,
                           std::pair<double, double> optimum_point) {
  require_same_grid(noisy, ideal);
  if (external) require_same_grid(*external, ideal);

  MetricsReport r;
  r.label = ideal.label;
  r.ls_ideal = landscape_span(ideal);
  r.ls_noisy = landscape_span(noisy);
  r.lsc_noisy = lsc(noisy, ideal);

  r.ar_ideal = approximation_ratio(ideal.energies.minCoeff(), e_star);
  r.ar_noisy = approximation_ratio(noisy.energies.minCoeff(), e_star);

  const int gi = nearest_index(ideal.grid.gamma_values, optimum_point.first);
  const int bi = nearest_index(ideal.grid.beta_values, optimum_point.second);
  r.ff_at_optimum_ideal = ideal.ff(gi, bi);
  r.ff_at_optimum_noisy = noisy.ff(gi, bi);

  r.pearson_noisy_vs_ideal = pearson_fidelity(noisy, ideal);
  r.ops_noisy = optimal_parameter_shift(noisy, ideal);

  if (external) {
    r.ls_external = landscape_span(*external);
    const auto d = lsc_decompose(ideal, noisy, *external);
    r.lsc_hw = d.lsc_hw;
    r.lsc_hw_given_noisy = d.lsc_hw_given_noisy;
    r.ar_external = approximation_ratio(external->energies.minCoeff(), e_star);
    r.ff_at_optimum_external = external->ff(gi, bi);
    r.pearson_external_vs_ideal = pearson_fidelity(*external, ideal);
    r.pearson_external_vs_noisy = pearson_fidelity(*external, noisy);
    r.ops_external = optimal_parameter_shift(*external, ideal);
    if (*r.lsc_hw != 0.0) r.explained_fraction = r.lsc_noisy / *r.lsc_hw;
  }

  r.negative_lsc = r.lsc_noisy < 0.0 || (r.lsc_hw && *r.lsc_hw < 0.0) ||
                   (r.lsc_hw_given_noisy && *r.lsc_hw_given_noisy < 0.0);
  return r;
}

std::string report_to_json(const MetricsReport& r) {
  nlohmann::ordered_json j;
  j["label"] = r.label;
  j["ls"] = {{"ideal", r.ls_ideal},
             {"noisy", r.ls_noisy},
             {"external", opt_json(r.ls_external)}};
  j["lsc_noisy"] = r.lsc_noisy;
  j["lsc_hw"] = opt_json(r.lsc_hw);
  j["lsc_hw_given_noisy"] = opt_json(r.lsc_hw_given_noisy);
  j["ar"] = {{"ideal", r.ar_ideal},
             {"noisy", r.ar_noisy},
             {"external", opt_json(r.ar_external)}};
  j["ff_at_optimum"] = {{"ideal", r.ff_at_optimum_ideal},
                        {"noisy", r.ff_at_optimum_noisy},
                        {"external", opt_json(r.ff_at_optimum_external)}};
  j["pearson"] = {{"noisy_vs_ideal", r.pearson_noisy_vs_ideal},
                  {"external_vs_ideal", opt_json(r.pearson_external_vs_ideal)},
                  {"external_vs_noisy", opt_json(r.pearson_external_vs_noisy)}};
  j["ops_noisy"] = r.ops_noisy;
  j["ops_external"] = opt_json(r.ops_external);
  j["explained_fraction"] = opt_json(r.explained_fraction);
  j["negative_lsc"] = r.negative_lsc;
  return j.dump(2) + "\n";
}

std::string report_table(const MetricsReport& r) {
  std::string out;
  char header[160];
  std::snprintf(header, sizeof(header), "%-28s %8s %8s %8s %8s %8s\n", "instance",
                "LS_0", "LS_n", "LS_hw", "LSC_n", "LSC_hw");
  out += header;
  char row[160];
  std::snprintf(row, sizeof(row), "%-28s %8s %8s %8s %8s %8s\n",
                r.label.empty() ? "(unlabeled)" : r.label.c_str(),
                cell(r.ls_ideal, "%.2f").c_str(), cell(r.ls_noisy, "%.2f").c_str(),
                cell(r.ls_external, "%.2f").c_str(), cell(r.lsc_noisy, "%.3f").c_str(),
                cell(r.lsc_hw, "%.3f").c_str());
  out += row;
  return out;
}

}  // namespace qlsc
