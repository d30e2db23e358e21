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

#include "qlsc/landscape.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <vector>

#include <json.hpp>

#include "qlsc/rng.hpp"

namespace qlsc {

namespace {

void require(bool cond, const std::string& msg) {
  if (!cond) throw std::invalid_argument(msg);
}

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(',', start);
    if (pos == std::string::npos) {
      out.push_back(line.substr(start));
      break;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
  return out;
}

double parse_double(const std::string& s, const std::string& what) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument("malformed " + what + " value '" + s + "'");
  }
}

// Collapses parsed coordinates into a sorted unique axis and checks that the
// spacing is uniform.
Eigen::VectorXd build_axis(const std::set<double>& values, const char* name) {
  require(values.size() >= 2, std::string(name) + " axis needs at least 2 values");
  Eigen::VectorXd axis(static_cast<Eigen::Index>(values.size()));
  Eigen::Index i = 0;
  for (double v : values) axis(i++) = v;
  const double span = axis(axis.size() - 1) - axis(0);
  const double spacing = span / static_cast<double>(axis.size() - 1);
  const double tol = 1e-9 * std::max(1.0, std::abs(span));
  for (Eigen::Index j = 0; j + 1 < axis.size(); ++j)
    require(std::abs(axis(j + 1) - axis(j) - spacing) <= tol,
            std::string(name) + " axis is not uniform");
  return axis;
}

}  // namespace

ParameterGrid make_grid(double gamma_center, double beta_center, double half_width,
                        int n_points) {
  require(n_points >= 2, "grid needs at least 2 points per axis");
  require(half_width > 0.0 && std::isfinite(half_width), "half_width must be positive");
  require(std::isfinite(gamma_center) && std::isfinite(beta_center),
          "grid center must be finite");

  ParameterGrid grid;
  grid.gamma_center = gamma_center;
  grid.beta_center = beta_center;
  grid.half_width = half_width;
  grid.points_per_axis = n_points;
  grid.gamma_values.resize(n_points);
  grid.beta_values.resize(n_points);
  const double spacing = 2.0 * half_width / static_cast<double>(n_points - 1);
  const double mid = 0.5 * static_cast<double>(n_points - 1);
  for (int i = 0; i < n_points; ++i) {
    const double offset = (static_cast<double>(i) - mid) * spacing;
    grid.gamma_values(i) = gamma_center + offset;
    grid.beta_values(i) = beta_center + offset;
  }
  return grid;
}

bool same_grid(const ParameterGrid& a, const ParameterGrid& b) {
  return a.points_per_axis == b.points_per_axis &&
         a.gamma_values == b.gamma_values && a.beta_values == b.beta_values;
}

LandscapeGrid scan_landscape(const ParameterGrid& grid, const IsingHamiltonian& ham,
                             int k, const std::optional<NoiseSpec>& noise,
                             std::optional<long long> shots, std::uint64_t seed,
                             int threads, const std::string& label) {
  require(k >= 0 && k <= ham.n, "invalid cardinality for this Hamiltonian");
  if (noise) validate_noise(*noise);
  const auto diag = cost_diagonal(ham);
  const int npts = grid.points_per_axis;
  const int total = npts * npts;

  LandscapeGrid out;
  out.grid = grid;
  out.energies.resize(npts, npts);
  out.ff.resize(npts, npts);
  out.shots = shots;
  out.condition = noise ? Condition::noisy : Condition::ideal;
  out.label = label;
  out.n = ham.n;
  out.k = k;

  auto eval_point = [&](int t) {
    const int gi = t % npts;
    const int bi = t / npts;
    const double gamma = grid.gamma_values(gi);
    const double beta = grid.beta_values(bi);
    OutcomeDistribution dist =
        noise ? noisy_distribution(qaoa_schedule(ham, gamma, beta, *noise), diag, *noise)
              : ideal_distribution(gamma, beta, diag);
    const bool use_counts = shots.has_value();
    if (use_counts)
      dist = sample_counts(dist, *shots, derive_seed(seed, static_cast<std::uint64_t>(t)));
    out.energies(gi, bi) = energy_expectation(dist, diag, use_counts);
    out.ff(gi, bi) = feasibility_fraction(dist, k, use_counts);
  };

  const int workers = std::max(1, std::min(threads, total));
  if (workers == 1) {
    for (int t = 0; t < total; ++t) eval_point(t);
  } else {
    std::vector<std::thread> pool;
    std::exception_ptr failure;
    std::mutex failure_mutex;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w)
      pool.emplace_back([&, w] {
        try {
          for (int t = w; t < total; t += workers) eval_point(t);
        } catch (...) {
          const std::lock_guard<std::mutex> lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      });
    for (auto& th : pool) th.join();
    if (failure) std::rethrow_exception(failure);
  }
  return out;
}

std::string landscape_meta_path(const std::string& csv_path) {
  if (csv_path.size() >= 4 && csv_path.substr(csv_path.size() - 4) == ".csv")
    return csv_path.substr(0, csv_path.size() - 4) + ".meta.json";
  return csv_path + ".meta.json";
}

void export_landscape(const LandscapeGrid& grid, const std::string& path) {
  const int npts = grid.grid.points_per_axis;
  require(grid.energies.rows() == npts && grid.energies.cols() == npts &&
              grid.ff.rows() == npts && grid.ff.cols() == npts,
          "landscape matrices must be N x N");

  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << "gamma,beta,energy,ff,shots\n";
  for (int bi = 0; bi < npts; ++bi)
    for (int gi = 0; gi < npts; ++gi) {
      out << fmt17(grid.grid.gamma_values(gi)) << ',' << fmt17(grid.grid.beta_values(bi))
          << ',' << fmt17(grid.energies(gi, bi)) << ',' << fmt17(grid.ff(gi, bi)) << ',';
      if (grid.shots) out << *grid.shots;
      out << '\n';
    }

  nlohmann::ordered_json meta;
  meta["label"] = grid.label;
  meta["condition"] = to_string(grid.condition);
  meta["n"] = grid.n;
  meta["k"] = grid.k;
  meta["grid"] = {{"gamma_center", grid.grid.gamma_center},
                  {"beta_center", grid.grid.beta_center},
                  {"half_width", grid.grid.half_width},
                  {"points_per_axis", grid.grid.points_per_axis}};
  std::ofstream meta_out(landscape_meta_path(path), std::ios::binary);
  if (!meta_out)
    throw std::runtime_error("cannot open for writing: " + landscape_meta_path(path));
  meta_out << meta.dump(2) << "\n";
}

LandscapeGrid ingest_landscape(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open landscape file: " + path);

  std::string line;
  require(static_cast<bool>(std::getline(in, line)), "empty landscape file");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  require(line == "gamma,beta,energy,ff,shots",
          "landscape header must be 'gamma,beta,energy,ff,shots'");

  struct Row {
    double gamma, beta, energy, ff;
  };
  std::vector<Row> rows;
  std::set<double> gammas, betas;
  std::optional<long long> shots;
  bool first_row = true;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto fields = split_csv_line(line);
    require(fields.size() == 5,
            "line " + std::to_string(lineno) + ": expected 5 comma-separated fields");
    Row row{};
    row.gamma = parse_double(fields[0], "gamma");
    row.beta = parse_double(fields[1], "beta");
    row.energy = parse_double(fields[2], "energy");
    row.ff = parse_double(fields[3], "ff");
    require(std::isfinite(row.gamma) && std::isfinite(row.beta),
            "line " + std::to_string(lineno) + ": coordinates must be finite");
    require(std::isfinite(row.energy), "line " + std::to_string(lineno) +
                                           ": energy must be finite");
    require(row.ff >= 0.0 && row.ff <= 1.0,
            "line " + std::to_string(lineno) + ": ff must be in [0,1]");
    std::optional<long long> row_shots;
    if (!fields[4].empty())
      row_shots = static_cast<long long>(parse_double(fields[4], "shots"));
    if (first_row) {
      shots = row_shots;
      first_row = false;
    } else {
      require(row_shots == shots, "inconsistent shots column");
    }
    rows.push_back(row);
    gammas.insert(row.gamma);
    betas.insert(row.beta);
  }
  require(!rows.empty(), "landscape file has no data rows");

  LandscapeGrid out;
  out.grid.gamma_values = build_axis(gammas, "gamma");
  out.grid.beta_values = build_axis(betas, "beta");
  require(out.grid.gamma_values.size() == out.grid.beta_values.size(),
          "grid must be square (same point count on both axes)");
  const int npts = static_cast<int>(out.grid.gamma_values.size());
  require(static_cast<int>(rows.size()) == npts * npts,
          "incomplete grid: expected " + std::to_string(npts * npts) + " rows, got " +
              std::to_string(rows.size()));
  out.grid.points_per_axis = npts;
  out.grid.gamma_center =
      0.5 * (out.grid.gamma_values(0) + out.grid.gamma_values(npts - 1));
  out.grid.beta_center = 0.5 * (out.grid.beta_values(0) + out.grid.beta_values(npts - 1));
  out.grid.half_width = 0.5 * (out.grid.gamma_values(npts - 1) - out.grid.gamma_values(0));

  std::map<double, int> gamma_index, beta_index;
  for (int i = 0; i < npts; ++i) {
    gamma_index[out.grid.gamma_values(i)] = i;
    beta_index[out.grid.beta_values(i)] = i;
  }
  out.energies.resize(npts, npts);
  out.ff.resize(npts, npts);
  Eigen::MatrixXi seen = Eigen::MatrixXi::Zero(npts, npts);
  for (const auto& row : rows) {
    const int gi = gamma_index.at(row.gamma);
    const int bi = beta_index.at(row.beta);
    require(seen(gi, bi) == 0, "duplicate grid coordinate in landscape file");
    seen(gi, bi) = 1;
    out.energies(gi, bi) = row.energy;
    out.ff(gi, bi) = row.ff;
  }
  // seen is all-ones here: npts^2 distinct coordinates were placed.
  out.shots = shots;

  out.condition = Condition::external;
  std::ifstream meta_in(landscape_meta_path(path), std::ios::binary);
  if (meta_in) {
    nlohmann::json meta;
    meta_in >> meta;
    out.label = meta.value("label", std::string{});
    out.condition = condition_from_string(meta.value("condition", std::string{"external"}));
    out.n = meta.value("n", 0);
    out.k = meta.value("k", 0);
    if (meta.contains("grid")) {
      const auto& g = meta.at("grid");
      out.grid.gamma_center = g.value("gamma_center", out.grid.gamma_center);
      out.grid.beta_center = g.value("beta_center", out.grid.beta_center);
      out.grid.half_width = g.value("half_width", out.grid.half_width);
    }
  } else {
    // bare hardware-interchange file: label from the filename stem
    auto stem = path;
    if (const auto slash = stem.find_last_of("/\\"); slash != std::string::npos)
      stem = stem.substr(slash + 1);
    if (stem.size() >= 4 && stem.substr(stem.size() - 4) == ".csv")
      stem = stem.substr(0, stem.size() - 4);
    out.label = stem;
  }
  return out;
}

}  // namespace qlsc
