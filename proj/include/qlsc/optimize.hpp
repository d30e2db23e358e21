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
#include <string>
#include <vector>

#include "qlsc/qubo.hpp"

namespace qlsc {

/// Rectangular search region for (gamma, beta). The defaults cover one
/// mixer period: gamma in [0, pi], beta in [0, pi/2].
struct SearchBox {
  double gamma_lo = 0.0;
  double gamma_hi = 3.141592653589793;
  double beta_lo = 0.0;
  double beta_hi = 1.5707963267948966;
};

struct StartTrace {
  double gamma0 = 0.0;
  double beta0 = 0.0;
  double gamma = 0.0;
  double beta = 0.0;
  double energy = 0.0;
};

struct OptimizationResult {
  double gamma_star = 0.0;
  double beta_star = 0.0;
  double energy = 0.0;
  int starts = 0;
  int best_start_index = 0;
  std::vector<StartTrace> trace;
};

/// Multi-start derivative-free minimization of the exact ideal energy
/// E(gamma, beta). Each seeded uniform start runs a Nelder-Mead simplex
/// clamped to the box (tolerance 1e-8, at most 500 evaluations per start);
/// the best final point wins, ties to the lowest start index. Deterministic
/// per seed.
OptimizationResult optimize_parameters(const IsingHamiltonian& ham, int starts,
                                       std::uint64_t seed, const SearchBox& box = {});

std::string optimum_to_json(const OptimizationResult& result);
OptimizationResult optimum_from_json(const std::string& text);
void save_optimum(const OptimizationResult& result, const std::string& path);
OptimizationResult load_optimum(const std::string& path);

}  // namespace qlsc
