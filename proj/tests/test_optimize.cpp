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

#include <cmath>

#include <doctest.h>

#include "qlsc/landscape.hpp"
#include "qlsc/optimize.hpp"
#include "qlsc/qaoa.hpp"

using namespace qlsc;

TEST_SUITE_BEGIN("optimize");

TEST_CASE("flat landscape: every point returns the constant energy") {
  QuboMatrix qubo;
  qubo.n = 3;
  qubo.q = Eigen::MatrixXd::Zero(3, 3);
  qubo.offset = 1.75;
  const auto result = optimize_parameters(qubo_to_ising(qubo), 4, 0);
  CHECK(result.energy == doctest::Approx(1.75).epsilon(1e-12));
  CHECK(result.starts == 4);
  CHECK(result.trace.size() == 4);
}

TEST_CASE("optimum beats every point of a grid centered on it") {
  // the hand-built two-variable penalty instance
  QuboMatrix qubo;
  qubo.n = 2;
  qubo.q.resize(2, 2);
  qubo.q << -1.0, 1.0, 1.0, -1.0;
  qubo.offset = 1.0;
  const auto ham2 = qubo_to_ising(qubo);
  const auto r2 = optimize_parameters(ham2, 16, 1);
  const auto grid2 = make_grid(r2.gamma_star, r2.beta_star, 0.4, 13);
  const auto scan2 = scan_landscape(grid2, ham2, 1, std::nullopt, std::nullopt, 0);
  CHECK(r2.energy <= scan2.energies.minCoeff() + 1e-9);

  // a pipeline-scale instance
  const auto ham6 = qubo_to_ising(build_qubo(generate_instance(6, 3, Volatility::low, 1)));
  const auto r6 = optimize_parameters(ham6, 16, 1);
  const auto grid6 = make_grid(r6.gamma_star, r6.beta_star, 0.4, 13);
  const auto scan6 = scan_landscape(grid6, ham6, 3, std::nullopt, std::nullopt, 0);
  CHECK(r6.energy <= scan6.energies.minCoeff() + 1e-9);
}


TEST_CASE("result stays inside the search box") {
  const auto ham = qubo_to_ising(build_qubo(generate_instance(4, 2, Volatility::high, 5)));
  SearchBox box{0.1, 0.9, 0.05, 0.6};
  const auto result = optimize_parameters(ham, 8, 2, box);
  CHECK(result.gamma_star >= box.gamma_lo);
  CHECK(result.gamma_star <= box.gamma_hi);
  CHECK(result.beta_star >= box.beta_lo);
  CHECK(result.beta_star <= box.beta_hi);
  for (const auto& t : result.trace) {
    CHECK(t.gamma >= box.gamma_lo);
    CHECK(t.gamma <= box.gamma_hi);
    CHECK(result.energy <= t.energy);
  }
}

TEST_CASE("same seed and starts give an identical result") {
  const auto ham = qubo_to_ising(build_qubo(generate_instance(5, 2, Volatility::low, 9)));
  const auto a = optimize_parameters(ham, 6, 42);
  const auto b = optimize_parameters(ham, 6, 42);
  CHECK(a.gamma_star == b.gamma_star);
  CHECK(a.beta_star == b.beta_star);
  CHECK(a.energy == b.energy);
  CHECK(a.best_start_index == b.best_start_index);
}

TEST_CASE("more starts never worsen the best energy") {
  const auto ham = qubo_to_ising(build_qubo(generate_instance(6, 3, Volatility::low, 1)));
  double prev = optimize_parameters(ham, 1, 7).energy;
  for (int starts : {2, 4, 8}) {
    const double e = optimize_parameters(ham, starts, 7).energy;
    CHECK(e <= prev + 1e-15);
    prev = e;
  }
}

TEST_CASE("invalid inputs are rejected") {
  const auto ham = qubo_to_ising(build_qubo(generate_instance(3, 1, Volatility::low, 2)));
  CHECK_THROWS_AS(optimize_parameters(ham, 0, 0), std::invalid_argument);
  CHECK_THROWS_AS(optimize_parameters(ham, 4, 0, SearchBox{1.0, 1.0, 0.0, 0.5}),
                  std::invalid_argument);
}

TEST_CASE("optimum json round-trips") {
  const auto ham = qubo_to_ising(build_qubo(generate_instance(4, 2, Volatility::low, 8)));
  const auto result = optimize_parameters(ham, 3, 5);
  const auto back = optimum_from_json(optimum_to_json(result));
  CHECK(back.gamma_star == result.gamma_star);
  CHECK(back.beta_star == result.beta_star);
  CHECK(back.energy == result.energy);
  CHECK(back.starts == result.starts);
  CHECK(back.best_start_index == result.best_start_index);
  REQUIRE(back.trace.size() == result.trace.size());
  CHECK(back.trace[1].gamma == result.trace[1].gamma);
  CHECK(back.trace[2].energy == result.trace[2].energy);
}

TEST_SUITE_END();
