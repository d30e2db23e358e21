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
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace qlsc {

/// Cardinality-constrained mean-variance selection instance. The objective
/// is f(x) = -mu.x + risk_aversion * x.Sigma.x over x in {0,1}^n, subject to
/// sum(x) == k enforced as a quadratic penalty with weight `penalty`.
///
/// Invariants (checked by validate_instance):
///  - sigma symmetric to 1e-12 and positive semidefinite (eigenvalues >= -1e-9)
///  - 2 <= n, 1 <= k <= n-1
///  - penalty strictly dominates max |f(x)| over the cube (verified by
///    enumeration for n <= 12)
struct PortfolioInstance {
  int n = 0;
  int k = 0;
  Eigen::VectorXd mu;
  Eigen::MatrixXd sigma;
  double risk_aversion = 0.0;
  double penalty = 0.0;
  std::string label;
  std::uint64_t seed = 0;
};

enum class Volatility { low, high };

Volatility volatility_from_string(const std::string& s);
std::string to_string(Volatility v);

/// Symmetric QUBO with scalar offset: energy(x) = x^T q x + offset.
struct QuboMatrix {
  int n = 0;
  Eigen::MatrixXd q;
  double offset = 0.0;
};

/// Diagonal cost Hamiltonian in spin variables z_i = 1 - 2 x_i:
/// E(z) = sum_{i<j} j(i,j) z_i z_j + sum_i h(i) z_i + constant.
/// `j` is strictly upper triangular; energies are in QUBO units.
struct IsingHamiltonian {
  int n = 0;
  Eigen::VectorXd h;
  Eigen::MatrixXd j;
  double constant = 0.0;
};

/// Throws std::invalid_argument when any instance invariant fails.
void validate_instance(const PortfolioInstance& inst);

/// Seeded synthetic instance: mu ~ U(0.02, 0.12) per asset, sigma = A A^T + 1e-6 I
/// with Gaussian A. High volatility doubles the off-diagonal entries of sigma
/// (the diagonal is shifted up minimally if that breaks positive
/// semidefiniteness). penalty = ||mu||_1 + risk_aversion * sum|sigma_ij|.
/// Deterministic per seed.
PortfolioInstance generate_instance(int n, int k, Volatility vol, std::uint64_t seed);

/// Expands the penalized objective into symmetric q and offset, folding
/// linear terms onto the diagonal via x_i^2 = x_i.
QuboMatrix build_qubo(const PortfolioInstance& inst);

/// Binary -> spin substitution x_i = (1 - z_i) / 2.
IsingHamiltonian qubo_to_ising(const QuboMatrix& qubo);

/// Bitstrings are indices into {0,1}^n with x_i = bit i (LSB = x_0); the
/// "value as unsigned integer" used for tie-breaking is the index itself.
double qubo_energy(const QuboMatrix& qubo, std::uint64_t bits);
double ising_energy(const IsingHamiltonian& ham, std::uint64_t bits);

/// Exact minimizer by enumeration; n <= 24 enforced. Ties broken by lowest
/// bitstring value.
std::pair<std::uint64_t, double> brute_force_optimum(const QuboMatrix& qubo);

/// All weight-k bitstrings in ascending (lexicographic) order; n <= 24.
std::vector<std::uint64_t> enumerate_feasible(int n, int k);

/// Single-flip Metropolis with a geometric temperature schedule from
/// 2 * span(diag q) down to 1e-3 over `sweeps` full sweeps. Returns the best
/// state seen, ties broken by lowest bitstring value; deterministic per seed.
std::pair<std::uint64_t, double> simulated_annealing(const QuboMatrix& qubo, int sweeps,
                                                     std::uint64_t seed);

/// Best of `samples` uniform draws; deterministic per seed.
std::pair<std::uint64_t, double> random_search(const QuboMatrix& qubo, long long samples,
                                               std::uint64_t seed);

/// MSB-first rendering, e.g. bits=1, n=2 -> "01".
std::string format_bits(std::uint64_t bits, int n);
std::uint64_t parse_bits(const std::string& s);

double binomial(int n, int k);

// Instance JSON: {label, n, k, mu, sigma, risk_aversion, penalty, seed}.
std::string instance_to_json(const PortfolioInstance& inst);
PortfolioInstance instance_from_json(const std::string& text);
void save_instance(const PortfolioInstance& inst, const std::string& path);
PortfolioInstance load_instance(const std::string& path);

}  // namespace qlsc
