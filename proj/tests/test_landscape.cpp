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

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <doctest.h>

#include "qlsc/landscape.hpp"
#include "qlsc/metrics.hpp"
#include "qlsc/optimize.hpp"

using namespace qlsc;
namespace fs = std::filesystem;

namespace {

fs::path temp_file(const std::string& name) {
  static int counter = 0;
  const auto dir = fs::temp_directory_path() / "qlsc_landscape_tests";
  fs::create_directories(dir);
  return dir / (std::to_string(++counter) + "_" + name);
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(static_cast<bool>(in));
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void spit(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  REQUIRE(static_cast<bool>(out));
  out << content;
}

LandscapeGrid small_scan(std::optional<long long> shots = std::nullopt,
                         std::uint64_t seed = 0, int threads = 1) {
  const auto inst = generate_instance(4, 2, Volatility::low, 1);
  const auto ham = qubo_to_ising(build_qubo(inst));
  const auto grid = make_grid(0.35, 0.22, 0.4, 5);
  return scan_landscape(grid, ham, inst.k, std::nullopt, shots, seed, threads,
                        inst.label);
}

}  // namespace

TEST_SUITE_BEGIN("landscape");

TEST_CASE("grid construction matches the reference geometry") {
  const auto grid = make_grid(0.338, 0.219, 0.4, 13);
  CHECK(grid.gamma_values.size() == 13);
  CHECK(grid.gamma_values(0) == doctest::Approx(-0.062).epsilon(1e-12));
  CHECK(grid.gamma_values(12) == doctest::Approx(0.738).epsilon(1e-12));
  const double spacing = 0.8 / 12.0;
  for (int i = 0; i + 1 < 13; ++i)
    CHECK(grid.gamma_values(i + 1) - grid.gamma_values(i) ==
          doctest::Approx(spacing).epsilon(1e-12));
  CHECK(grid.beta_values(6) == doctest::Approx(0.219).epsilon(1e-12));
}

TEST_CASE("two-point grid brackets the center") {
  const auto grid = make_grid(1.5, -0.5, 1.0, 2);
  CHECK(grid.gamma_values(0) == doctest::Approx(0.5));
  CHECK(grid.gamma_values(1) == doctest::Approx(2.5));
  CHECK(grid.beta_values(0) == doctest::Approx(-1.5));
  CHECK(grid.beta_values(1) == doctest::Approx(0.5));
}

TEST_CASE("grid rejects degenerate parameters") {
  CHECK_THROWS_AS(make_grid(0, 0, 0.4, 1), std::invalid_argument);
  CHECK_THROWS_AS(make_grid(0, 0, 0.0, 13), std::invalid_argument);
  CHECK_THROWS_AS(make_grid(0, 0, -1.0, 13), std::invalid_argument);
}

TEST_CASE("grid equality is exact value equality") {
  const auto a = make_grid(0.3, 0.2, 0.4, 13);
  auto b = make_grid(0.3, 0.2, 0.4, 13);
  CHECK(same_grid(a, b));
  b.gamma_values(5) += 1e-15;
  CHECK_FALSE(same_grid(a, b));
  CHECK_FALSE(same_grid(a, make_grid(0.3, 0.2, 0.4, 12)));
}

TEST_CASE("ideal scan centered at the origin hits the uniform baseline") {
  const auto inst = generate_instance(6, 3, Volatility::low, 1);
  const auto ham = qubo_to_ising(build_qubo(inst));
  const auto diag = cost_diagonal(ham);
  const auto grid = make_grid(0.0, 0.0, 0.4, 13);
  const auto scan = scan_landscape(grid, ham, 3, std::nullopt, std::nullopt, 0);

  CHECK(scan.condition == Condition::ideal);
  // the center point sits exactly on the gamma = 0 edge
  CHECK(std::abs(scan.energies(6, 6) - diag.mean()) <= 1e-9);
  CHECK(scan.ff(6, 6) == 20.0 / 64.0);

  // expectation bounds and ff range hold everywhere
  CHECK(scan.energies.minCoeff() >= diag.minCoeff() - 1e-9);
  CHECK(scan.energies.maxCoeff() <= diag.maxCoeff() + 1e-9);
  CHECK(scan.ff.minCoeff() >= 0.0);
  CHECK(scan.ff.maxCoeff() <= 1.0);
}

TEST_CASE("scan centered at the optimum dips below the grid mean there") {
  const auto inst = generate_instance(6, 3, Volatility::low, 1);
  const auto ham = qubo_to_ising(build_qubo(inst));
  const auto opt = optimize_parameters(ham, 8, 1);
  const auto grid = make_grid(opt.gamma_star, opt.beta_star, 0.4, 13);
  const auto scan = scan_landscape(grid, ham, 3, std::nullopt, std::nullopt, 0);
  // the grid cell nearest (gamma*, beta*) is the center cell
  CHECK(scan.energies(6, 6) <= scan.energies.mean());
  CHECK(scan.energies.minCoeff() < scan.energies.mean());
  for (Eigen::Index i = 0; i < scan.energies.size(); ++i)
    CHECK(std::isfinite(scan.energies.reshaped()(i)));
}

TEST_CASE("sampled scans are bit-identical across thread counts") {
  const auto a = small_scan(4096, 7, 1);
  const auto b = small_scan(4096, 7, 3);
  CHECK(a.energies == b.energies);
  CHECK(a.ff == b.ff);
  const auto c = small_scan(4096, 8, 1);
  CHECK(a.energies != c.energies);  // a different seed actually changes the draw
}

TEST_CASE("export emits header plus N^2 beta-major rows, byte-stably") {
  const auto scan = small_scan();
  const auto path = temp_file("scan.csv");
  export_landscape(scan, path.string());
  const auto text = slurp(path);

  std::istringstream lines(text);
  std::string line;
  int count = 0;
  std::getline(lines, line);
  CHECK(line == "gamma,beta,energy,ff,shots");
  double prev_gamma = -1e300;
  while (std::getline(lines, line)) {
    ++count;
    if (count <= 5) {
      // within the first beta row, gamma ascends
      const double g = std::stod(line.substr(0, line.find(',')));
      CHECK(g > prev_gamma);
      prev_gamma = g;
    }
  }
  CHECK(count == 25);

  const auto path2 = temp_file("scan2.csv");
  export_landscape(scan, path2.string());
  CHECK(slurp(path2) == text);
}

TEST_CASE("ingest(export(scan)) restores every field exactly") {
  for (bool sampled : {false, true}) {
    const auto scan = sampled ? small_scan(2048, 3) : small_scan();
    const auto path = temp_file("roundtrip.csv");
    export_landscape(scan, path.string());
    const auto back = ingest_landscape(path.string());
    CHECK(back.energies == scan.energies);
    CHECK(back.ff == scan.ff);
    CHECK(back.grid.gamma_values == scan.grid.gamma_values);
    CHECK(back.grid.beta_values == scan.grid.beta_values);
    CHECK(back.grid.points_per_axis == scan.grid.points_per_axis);
    CHECK(back.grid.gamma_center == scan.grid.gamma_center);
    CHECK(back.grid.half_width == scan.grid.half_width);
    CHECK(back.shots == scan.shots);
    CHECK(back.condition == scan.condition);
    CHECK(back.label == scan.label);
    CHECK(back.n == scan.n);
    CHECK(back.k == scan.k);
  }
}

TEST_CASE("a bare CSV without sidecar ingests as an external landscape") {
  const auto scan = small_scan();
  const auto path = temp_file("hw.csv");
  export_landscape(scan, path.string());
  fs::remove(landscape_meta_path(path.string()));
  const auto back = ingest_landscape(path.string());
  CHECK(back.condition == Condition::external);
  CHECK(back.energies == scan.energies);
}

TEST_CASE("affinely compressed external grid keeps r=1 and lsc=0.3") {
  const auto scan = small_scan();
  LandscapeGrid hw = scan;
  hw.energies = 0.7 * scan.energies.array() + 2.5;
  const auto path = temp_file("affine.csv");
  export_landscape(hw, path.string());
  fs::remove(landscape_meta_path(path.string()));
  const auto back = ingest_landscape(path.string());
  CHECK(back.condition == Condition::external);
  CHECK(std::abs(pearson_fidelity(back, scan) - 1.0) <= 1e-12);
  CHECK(std::abs(lsc(back, scan) - 0.3) <= 1e-9);
}

TEST_CASE("csv round-trip survives extreme magnitudes") {
  auto scan = small_scan();
  scan.energies(0, 0) = 1e300;
  scan.energies(1, 1) = -1e-300;
  scan.energies(2, 2) = -0.0;
  const auto path = temp_file("extreme.csv");
  export_landscape(scan, path.string());
  const auto back = ingest_landscape(path.string());
  CHECK(back.energies == scan.energies);
}

TEST_CASE("ingest rejects an incomplete grid") {
  const auto scan = small_scan();
  const auto path = temp_file("incomplete.csv");
  export_landscape(scan, path.string());
  auto text = slurp(path);
  text.erase(text.rfind('\n', text.size() - 2) + 1);  // drop the last row
  spit(path, text);
  CHECK_THROWS_WITH_AS(ingest_landscape(path.string()), doctest::Contains("incomplete"),
                       std::invalid_argument);
}

TEST_CASE("ingest rejects duplicates, bad headers and malformed rows") {
  const auto scan = small_scan();
  const auto path = temp_file("dup.csv");
  export_landscape(scan, path.string());
  auto text = slurp(path);

  // duplicate: replace the last row with a copy of the previous one
  auto tail = text.rfind('\n', text.size() - 2);
  auto prev = text.rfind('\n', tail - 1);
  const auto dup = text.substr(prev + 1, tail - prev);
  spit(path, text.substr(0, tail + 1) + dup);
  CHECK_THROWS_WITH_AS(ingest_landscape(path.string()), doctest::Contains("duplicate"),
                       std::invalid_argument);

  spit(path, "alpha,beta,energy,ff,shots\n");
  CHECK_THROWS_AS(ingest_landscape(path.string()), std::invalid_argument);

  spit(path, "gamma,beta,energy,ff,shots\n0.1,0.2,not_a_number,0.5,\n");
  CHECK_THROWS_AS(ingest_landscape(path.string()), std::invalid_argument);

  spit(path, "gamma,beta,energy,ff,shots\n0.1,0.2,1.0,1.5,\n");
  CHECK_THROWS_AS(ingest_landscape(path.string()), std::invalid_argument);

  spit(path, "gamma,beta,energy,ff,shots\nnan,0.2,1.0,0.5,\n");
  CHECK_THROWS_AS(ingest_landscape(path.string()), std::invalid_argument);
}

TEST_CASE("ingest rejects a non-uniform axis") {
  std::string text = "gamma,beta,energy,ff,shots\n";
  const double gammas[3] = {0.0, 0.1, 0.35};  // uneven
  const double betas[3] = {0.0, 0.1, 0.2};
  for (double b : betas)
    for (double g : gammas) {
      char row[120];
      std::snprintf(row, sizeof(row), "%.17g,%.17g,%.17g,%.17g,\n", g, b, g + b, 0.5);
      text += row;
    }
  const auto path = temp_file("uneven.csv");
  spit(path, text);
  CHECK_THROWS_WITH_AS(ingest_landscape(path.string()), doctest::Contains("uniform"),
                       std::invalid_argument);
}

TEST_SUITE_END();
