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

#include "qlsc/qaoa.hpp"

#include <bit>
#include <cmath>
#include <complex>
#include <random>
#include <stdexcept>

#include "qlsc/rng.hpp"

namespace qlsc {

namespace {

using complex = std::complex<double>;

constexpr int kStatevectorCap = 16;
constexpr int kDensityCap = 10;

void require(bool cond, const std::string& msg) {
  if (!cond) throw std::invalid_argument(msg);
}

int qubit_count_of(Eigen::Index dim, const char* what) {
  require(dim >= 2 && (dim & (dim - 1)) == 0,
          std::string(what) + " length must be a power of two");
  return std::countr_zero(static_cast<std::uint64_t>(dim));
}

OutcomeDistribution uniform_distribution(int n, Condition cond) {
  OutcomeDistribution dist;
  const Eigen::Index dim = Eigen::Index{1} << n;
  dist.probs = Eigen::VectorXd::Constant(dim, 1.0 / static_cast<double>(dim));
  dist.condition = cond;
  return dist;
}

Eigen::Matrix2cd rx_matrix(double theta) {
  const double c = std::cos(0.5 * theta);
  const double s = std::sin(0.5 * theta);
  Eigen::Matrix2cd u;
  u << complex(c, 0.0), complex(0.0, -s), complex(0.0, -s), complex(c, 0.0);
  return u;
}

Eigen::Matrix2cd hadamard_matrix() {
  const double s = 1.0 / std::sqrt(2.0);
  Eigen::Matrix2cd u;
  u << s, s, s, -s;
  return u;
}

// Thermal relaxation of every qubit for `duration`: amplitude damping from
// T1 and pure dephasing at rate max(0, 1/t2 - 1/(2 t1)).
void relax_all(Eigen::MatrixXcd& rho, int n, double duration, const NoiseSpec& noise) {
  if (duration <= 0.0) return;
  const double g = std::isinf(noise.t1) ? 0.0 : -std::expm1(-duration / noise.t1);
  double rate = 0.0;
  if (!std::isinf(noise.t2)) rate = 1.0 / noise.t2;
  if (!std::isinf(noise.t1)) rate -= 0.5 / noise.t1;
  rate = std::max(rate, 0.0);
  const double f = std::exp(-duration * rate);
  const double lambda = 1.0 - f * f;
  if (g == 0.0 && lambda == 0.0) return;
  for (int q = 0; q < n; ++q) {
    if (g > 0.0) channels::amplitude_damp(rho, q, g);
    if (lambda > 0.0) channels::phase_damp(rho, q, lambda);
  }
}

Eigen::VectorXcd rz_phases(int n, int q, double angle) {
  const Eigen::Index dim = Eigen::Index{1} << n;
  Eigen::VectorXcd d(dim);
  const complex lo = std::polar(1.0, -0.5 * angle);  // z = +1 (bit 0)
  const complex hi = std::polar(1.0, +0.5 * angle);
  for (Eigen::Index b = 0; b < dim; ++b) d(b) = ((b >> q) & 1) ? hi : lo;
  return d;
}

Eigen::VectorXcd rzz_phases(int n, int qa, int qb, double angle) {
  const Eigen::Index dim = Eigen::Index{1} << n;
  Eigen::VectorXcd d(dim);
  const complex same = std::polar(1.0, -0.5 * angle);  // z_a z_b = +1
  const complex diff = std::polar(1.0, +0.5 * angle);
  for (Eigen::Index b = 0; b < dim; ++b)
    d(b) = (((b >> qa) ^ (b >> qb)) & 1) ? diff : same;
  return d;
}

}  // namespace

Condition condition_from_string(const std::string& s) {
  if (s == "ideal") return Condition::ideal;
  if (s == "noisy") return Condition::noisy;
  if (s == "external") return Condition::external;
  throw std::invalid_argument("unknown condition '" + s + "'");
}

std::string to_string(Condition c) {
  switch (c) {
    case Condition::ideal: return "ideal";
    case Condition::noisy: return "noisy";
    default: return "external";
  }
}

int OutcomeDistribution::qubits() const {
  return qubit_count_of(probs.size(), "probs");
}

GateSchedule qaoa_schedule(const IsingHamiltonian& ham, double gamma, double beta,
                           const NoiseSpec& noise) {
  require(std::isfinite(gamma) && std::isfinite(beta), "angles must be finite");
  GateSchedule sched;
  sched.n = ham.n;
  for (int q = 0; q < ham.n; ++q)
    sched.events.push_back({GateEvent::Kind::H, q, -1, 0.0, noise.dur1});
  for (int i = 0; i < ham.n; ++i)
    for (int j = i + 1; j < ham.n; ++j)
      if (ham.j(i, j) != 0.0)
        sched.events.push_back(
            {GateEvent::Kind::RZZ, i, j, 2.0 * gamma * ham.j(i, j), noise.dur2});
  for (int i = 0; i < ham.n; ++i)
    if (ham.h(i) != 0.0)
      sched.events.push_back(
          {GateEvent::Kind::RZ, i, -1, 2.0 * gamma * ham.h(i), noise.dur1});
  for (int q = 0; q < ham.n; ++q)
    sched.events.push_back({GateEvent::Kind::RX, q, -1, 2.0 * beta, noise.dur1});
  sched.events.push_back({GateEvent::Kind::MeasureAll, -1, -1, 0.0, noise.dur_meas});
  return sched;
}

Eigen::VectorXd cost_diagonal(const IsingHamiltonian& ham) {
  require(ham.n >= 1 && ham.n <= kStatevectorCap, "cost_diagonal capped at n <= 16");
  const Eigen::Index dim = Eigen::Index{1} << ham.n;
  Eigen::VectorXd diag(dim);
  for (Eigen::Index b = 0; b < dim; ++b)
    diag(b) = ising_energy(ham, static_cast<std::uint64_t>(b));
  return diag;
}

OutcomeDistribution ideal_distribution(double gamma, double beta,
                                       const Eigen::VectorXd& diag) {
  require(std::isfinite(gamma) && std::isfinite(beta), "angles must be finite");
  const int n = qubit_count_of(diag.size(), "diag");

  // |+> is an X eigenstate and cost phases preserve magnitudes, so either
  // edge yields the uniform distribution; returning it directly keeps the
  // edge invariants exact.
  if (gamma == 0.0 || beta == 0.0) return uniform_distribution(n, Condition::ideal);

  const Eigen::Index dim = diag.size();
  Eigen::VectorXcd amps(dim);
  const double a0 = 1.0 / std::sqrt(static_cast<double>(dim));
  for (Eigen::Index b = 0; b < dim; ++b) amps(b) = std::polar(a0, -gamma * diag(b));

  const complex c(std::cos(beta), 0.0);
  const complex s(0.0, -std::sin(beta));
  for (int q = 0; q < n; ++q) {
    const Eigen::Index m = Eigen::Index{1} << q;
    for (Eigen::Index base = 0; base < dim; ++base) {
      if (base & m) continue;
      const complex lo = amps(base);
      const complex hi = amps(base | m);
      amps(base) = c * lo + s * hi;
      amps(base | m) = s * lo + c * hi;
    }
  }

  OutcomeDistribution dist;
  dist.probs = amps.cwiseAbs2();
  dist.condition = Condition::ideal;
  return dist;
}

OutcomeDistribution noisy_distribution(const GateSchedule& sched,
                                       const Eigen::VectorXd& diag,
                                       const NoiseSpec& noise) {
  const int n = sched.n;
  require(n >= 1 && n <= kDensityCap, "noisy_distribution capped at n <= 10");
  require(diag.size() == (Eigen::Index{1} << n), "diag length must be 2^n");
  const ScaledChannels sc = scaled_channels(noise);

  const Eigen::Index dim = Eigen::Index{1} << n;
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(dim, dim);
  rho(0, 0) = 1.0;

  const Eigen::Matrix2cd h_gate = hadamard_matrix();
  for (const auto& ev : sched.events) {
    switch (ev.kind) {
      case GateEvent::Kind::H:
        channels::apply_1q_unitary(rho, ev.q1, h_gate);
        if (sc.p1 > 0.0) channels::depolarize_1q(rho, ev.q1, sc.p1);
        break;
      case GateEvent::Kind::RZ:
        channels::apply_phase_diagonal(rho, rz_phases(n, ev.q1, ev.angle));
        if (sc.p1 > 0.0) channels::depolarize_1q(rho, ev.q1, sc.p1);
        break;
      case GateEvent::Kind::RZZ:
        channels::apply_phase_diagonal(rho, rzz_phases(n, ev.q1, ev.q2, ev.angle));
        if (sc.p2 > 0.0) channels::depolarize_2q(rho, ev.q1, ev.q2, sc.p2);
        break;
      case GateEvent::Kind::RX:
        channels::apply_1q_unitary(rho, ev.q1, rx_matrix(ev.angle));
        if (sc.p1 > 0.0) channels::depolarize_1q(rho, ev.q1, sc.p1);
        break;
      case GateEvent::Kind::MeasureAll:
        break;
    }
    relax_all(rho, n, ev.duration * noise.scale, noise);
  }

  OutcomeDistribution dist;
  dist.probs = rho.diagonal().real();
  dist.condition = Condition::noisy;
  if (sc.global_depol > 0.0) {
    const double w = sc.global_depol;
    dist.probs = (1.0 - w) * dist.probs +
                 Eigen::VectorXd::Constant(dim, w / static_cast<double>(dim));
  }
  return apply_readout(dist, noise);
}

OutcomeDistribution apply_readout(const OutcomeDistribution& dist,
                                  const NoiseSpec& noise) {
  const ScaledChannels sc = scaled_channels(noise);
  OutcomeDistribution out;
  out.probs = dist.probs;
  out.condition = dist.condition;
  if (sc.p01 == 0.0 && sc.p10 == 0.0) {
    out.shots = dist.shots;
    out.counts = dist.counts;
    return out;
  }
  const int n = out.qubits();
  const Eigen::Index dim = out.probs.size();
  for (int q = 0; q < n; ++q) {
    const Eigen::Index m = Eigen::Index{1} << q;
    for (Eigen::Index base = 0; base < dim; ++base) {
      if (base & m) continue;
      const double p0 = out.probs(base);
      const double p1 = out.probs(base | m);
      out.probs(base) = (1.0 - sc.p01) * p0 + sc.p10 * p1;
      out.probs(base | m) = sc.p01 * p0 + (1.0 - sc.p10) * p1;
    }
  }
  return out;
}

OutcomeDistribution sample_counts(const OutcomeDistribution& dist, long long shots,
                                  std::uint64_t seed) {
  require(shots >= 1, "shots must be >= 1");
  OutcomeDistribution out = dist;
  out.shots = shots;
  out.counts.clear();

  const Eigen::Index dim = dist.probs.size();
  std::vector<double> cdf(static_cast<std::size_t>(dim));
  double total = 0.0;
  for (Eigen::Index b = 0; b < dim; ++b) {
    total += std::max(dist.probs(b), 0.0);
    cdf[static_cast<std::size_t>(b)] = total;
  }
  require(total > 0.0, "cannot sample from an all-zero distribution");

  std::mt19937_64 rng(splitmix64(seed));
  for (long long s = 0; s < shots; ++s) {
    const double u = uniform01(rng) * total;
    const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    const auto idx = static_cast<std::uint64_t>(
        it == cdf.end() ? dim - 1 : std::distance(cdf.begin(), it));
    ++out.counts[idx];
  }
  return out;
}

double energy_expectation(const OutcomeDistribution& dist,
                          const Eigen::VectorXd& diag, bool use_counts) {
  require(diag.size() == dist.probs.size(), "diag/probs dimension mismatch");
  if (!use_counts) return dist.probs.dot(diag);
  require(dist.shots.has_value() && !dist.counts.empty(),
          "use_counts requires a sampled distribution");
  double acc = 0.0;
  for (const auto& [bits, count] : dist.counts)
    acc += static_cast<double>(count) * diag(static_cast<Eigen::Index>(bits));
  return acc / static_cast<double>(*dist.shots);
}

double feasibility_fraction(const OutcomeDistribution& dist, int k, bool use_counts) {
  require(k >= 0, "k must be nonnegative");
  if (use_counts) {
    require(dist.shots.has_value() && !dist.counts.empty(),
            "use_counts requires a sampled distribution");
    long long hits = 0;
    for (const auto& [bits, count] : dist.counts)
      if (std::popcount(bits) == k) hits += count;
    return static_cast<double>(hits) / static_cast<double>(*dist.shots);
  }
  const Eigen::Index dim = dist.probs.size();
  double acc = 0.0;
  for (Eigen::Index b = 0; b < dim; ++b)
    if (std::popcount(static_cast<std::uint64_t>(b)) == k) acc += dist.probs(b);
  return acc;
}

namespace channels {

void apply_1q_unitary(Eigen::MatrixXcd& rho, int q, const Eigen::Matrix2cd& u) {
  const Eigen::Index dim = rho.rows();
  const Eigen::Index m = Eigen::Index{1} << q;
  for (Eigen::Index r = 0; r < dim; ++r) {
    if (r & m) continue;
    const Eigen::RowVectorXcd lo = rho.row(r);
    rho.row(r) = u(0, 0) * lo + u(0, 1) * rho.row(r | m);
    rho.row(r | m) = u(1, 0) * lo + u(1, 1) * rho.row(r | m);
  }
  for (Eigen::Index c = 0; c < dim; ++c) {
    if (c & m) continue;
    const Eigen::VectorXcd lo = rho.col(c);
    rho.col(c) = std::conj(u(0, 0)) * lo + std::conj(u(0, 1)) * rho.col(c | m);
    rho.col(c | m) = std::conj(u(1, 0)) * lo + std::conj(u(1, 1)) * rho.col(c | m);
  }
}

void apply_phase_diagonal(Eigen::MatrixXcd& rho, const Eigen::VectorXcd& d) {
  const Eigen::Index dim = rho.rows();
  for (Eigen::Index c = 0; c < dim; ++c) {
    const complex pc = std::conj(d(c));
    for (Eigen::Index r = 0; r < dim; ++r) rho(r, c) *= d(r) * pc;
  }
}

void depolarize_1q(Eigen::MatrixXcd& rho, int q, double p) {
  if (p == 0.0) return;
  const Eigen::Index dim = rho.rows();
  const Eigen::Index m = Eigen::Index{1} << q;
  const double keep = 1.0 - p;
  for (Eigen::Index c = 0; c < dim; ++c) {
    if (c & m) continue;
    for (Eigen::Index r = 0; r < dim; ++r) {
      if (r & m) continue;
      const complex mean = 0.5 * (rho(r, c) + rho(r | m, c | m));
      rho(r, c) = keep * rho(r, c) + p * mean;
      rho(r | m, c | m) = keep * rho(r | m, c | m) + p * mean;
      rho(r, c | m) *= keep;
      rho(r | m, c) *= keep;
    }
  }
}

void depolarize_2q(Eigen::MatrixXcd& rho, int qa, int qb, double p) {
  if (p == 0.0) return;
  const Eigen::Index dim = rho.rows();
  const Eigen::Index ma = Eigen::Index{1} << qa;
  const Eigen::Index mb = Eigen::Index{1} << qb;
  const Eigen::Index offs[4] = {0, ma, mb, ma | mb};
  const double keep = 1.0 - p;
  for (Eigen::Index c = 0; c < dim; ++c) {
    if (c & (ma | mb)) continue;
    for (Eigen::Index r = 0; r < dim; ++r) {
      if (r & (ma | mb)) continue;
      complex mean = 0.0;
      for (const auto o : offs) mean += rho(r | o, c | o);
      mean *= 0.25;
      for (const auto ro : offs)
        for (const auto co : offs) {
          complex& v = rho(r | ro, c | co);
          v = (ro == co) ? keep * v + p * mean : keep * v;
        }
    }
  }
}

void amplitude_damp(Eigen::MatrixXcd& rho, int q, double g) {
  if (g == 0.0) return;
  const Eigen::Index dim = rho.rows();
  const Eigen::Index m = Eigen::Index{1} << q;
  const double s = std::sqrt(1.0 - g);
  for (Eigen::Index c = 0; c < dim; ++c) {
    if (c & m) continue;
    for (Eigen::Index r = 0; r < dim; ++r) {
      if (r & m) continue;
      rho(r, c) += g * rho(r | m, c | m);
      rho(r | m, c | m) *= 1.0 - g;
      rho(r, c | m) *= s;
      rho(r | m, c) *= s;
    }
  }
}

void phase_damp(Eigen::MatrixXcd& rho, int q, double lambda) {
  if (lambda == 0.0) return;
  const Eigen::Index dim = rho.rows();
  const Eigen::Index m = Eigen::Index{1} << q;
  const double f = std::sqrt(1.0 - lambda);
  for (Eigen::Index c = 0; c < dim; ++c) {
    if (c & m) continue;
    for (Eigen::Index r = 0; r < dim; ++r) {
      if (r & m) continue;
      rho(r, c | m) *= f;
      rho(r | m, c) *= f;
    }
  }
}

}  // namespace channels

}  // namespace qlsc
