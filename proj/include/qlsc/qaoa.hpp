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
#include <map>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "qlsc/noise.hpp"
#include "qlsc/qubo.hpp"

namespace qlsc {

enum class Condition { ideal, noisy, external };

Condition condition_from_string(const std::string& s);
std::string to_string(Condition c);

/// Measurement distribution over computational basis states. `probs[b]` is
/// indexed by the bitstring value b (x_i = bit i). When sampled, `counts`
/// holds the multinomial draw and `shots` its size; `probs` stays exact.
struct OutcomeDistribution {
  Eigen::VectorXd probs;
  std::optional<long long> shots;
  std::map<std::uint64_t, long long> counts;
  Condition condition = Condition::ideal;

  int qubits() const;
};

/// One scheduled gate event. For p=1 QAOA the schedule is: H on every qubit,
/// one RZZ per nonzero coupling (angle 2*gamma*j_ij), one RZ per nonzero
/// field (angle 2*gamma*h_i), RX(2*beta) on every qubit, then MEASURE_ALL.
/// Durations are unscaled; the evolution multiplies them by the noise scale.
struct GateEvent {
  enum class Kind { H, RZZ, RZ, RX, MeasureAll };
  Kind kind = Kind::H;
  int q1 = -1;
  int q2 = -1;
  double angle = 0.0;
  double duration = 0.0;
};

struct GateSchedule {
  int n = 0;
  std::vector<GateEvent> events;
};

GateSchedule qaoa_schedule(const IsingHamiltonian& ham, double gamma, double beta,
                           const NoiseSpec& noise);

/// Energy of every basis state in QUBO units; n <= 16.
Eigen::VectorXd cost_diagonal(const IsingHamiltonian& ham);

/// Exact statevector evolution |<b| RX(2b)^n exp(-i g H_C) |+>^n|^2.
/// At gamma == 0 or beta == 0 the distribution is exactly uniform and is
/// returned as such (X eigenstate / magnitude-preserving phases).
OutcomeDistribution ideal_distribution(double gamma, double beta,
                                       const Eigen::VectorXd& diag);

/// Density-matrix evolution of the schedule under the noise model. After
/// each event the touched qubits get depolarizing noise (p1 or p2) and every
/// qubit relaxes for the event duration; the readout channel is applied to
/// the final probabilities. The schedule carries the angles. n <= 10.
OutcomeDistribution noisy_distribution(const GateSchedule& sched,
                                       const Eigen::VectorXd& diag,
                                       const NoiseSpec& noise);

/// Independent per-qubit classical bit flips (p01 upward, p10 downward,
/// both scaled), as a tensor-product stochastic matrix on probs. Counts are
/// dropped: they describe the pre-readout distribution.
OutcomeDistribution apply_readout(const OutcomeDistribution& dist,
                                  const NoiseSpec& noise);

/// Multinomial draw of `shots` outcomes; deterministic per seed.
OutcomeDistribution sample_counts(const OutcomeDistribution& dist, long long shots,
                                  std::uint64_t seed);

/// Expectation of `diag` under exact probs or, with use_counts, the
/// count-weighted mean.
double energy_expectation(const OutcomeDistribution& dist,
                          const Eigen::VectorXd& diag, bool use_counts);

/// Probability (or count fraction) of Hamming-weight-k bitstrings.
double feasibility_fraction(const OutcomeDistribution& dist, int k, bool use_counts);

/// Density-matrix channel primitives. Exposed so tests can check each one
/// against explicit Kraus-operator references.
namespace channels {

void apply_1q_unitary(Eigen::MatrixXcd& rho, int q, const Eigen::Matrix2cd& u);

/// rho -> D rho D^dagger for a diagonal unitary with unit-modulus entries d.
void apply_phase_diagonal(Eigen::MatrixXcd& rho, const Eigen::VectorXcd& d);

/// rho -> (1-p) rho + p * (I/2 tensor Tr_q rho): the touched qubit is
/// replaced by the maximally mixed state with probability p.
void depolarize_1q(Eigen::MatrixXcd& rho, int q, double p);
void depolarize_2q(Eigen::MatrixXcd& rho, int qa, int qb, double p);

/// Amplitude damping with decay probability g = 1 - exp(-t/T1).
void amplitude_damp(Eigen::MatrixXcd& rho, int q, double g);

/// Phase damping with Kraus parameter lambda; coherences scale by
/// sqrt(1 - lambda).
void phase_damp(Eigen::MatrixXcd& rho, int q, double lambda);

}  // namespace channels

}  // namespace qlsc
