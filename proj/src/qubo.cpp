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

#include "qlsc/qubo.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <random>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "qlsc/rng.hpp"

namespace qlsc {

namespace {

constexpr int kEnumerationCap = 24;

void require(bool cond, const std::string& msg) {
  if (!cond) throw std::invalid_argument(msg);
}

void check_bits_range(std::uint64_t bits, int n) {
  if (n < 64 && (bits >> n) != 0)
    throw std::invalid_argument("bitstring has bits set beyond variable count");
}

// Tie-break rule used by every solver: lower energy wins, equal energies go
// to the lower bitstring value.
struct BestTracker {
  std::uint64_t bits = 0;
  double energy = std::numeric_limits<double>::infinity();
  bool seen = false;

  void offer(std::uint64_t b, double e) {
    if (!seen || e < energy || (e == energy && b < bits)) {
      bits = b;
      energy = e;
      seen = true;
    }
  }
};

}  // namespace

Volatility volatility_from_string(const std::string& s) {
  if (s == "low") return Volatility::low;
  if (s == "high") return Volatility::high;
  throw std::invalid_argument("volatility must be 'low' or 'high', got '" + s + "'");
}

std::string to_string(Volatility v) { return v == Volatility::low ? "low" : "high"; }

void validate_instance(const PortfolioInstance& inst) {
  require(inst.n >= 2, "instance requires n >= 2");
  require(inst.k >= 1 && inst.k <= inst.n - 1, "instance requires 1 <= k <= n-1");
  require(inst.mu.size() == inst.n, "mu length must equal n");
  require(inst.sigma.rows() == inst.n && inst.sigma.cols() == inst.n,
          "sigma must be n x n");
  require(inst.risk_aversion >= 0.0, "risk_aversion must be >= 0");
  require(inst.penalty > 0.0, "penalty must be > 0");

  const double asym = (inst.sigma - inst.sigma.transpose()).cwiseAbs().maxCoeff();
  require(asym <= 1e-12, "sigma is not symmetric");

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(inst.sigma, Eigen::EigenvaluesOnly);
  require(es.eigenvalues().minCoeff() >= -1e-9, "sigma is not positive semidefinite");

  if (inst.n <= 12) {
    // Penalty dominance is cheap to certify at this size: P must strictly
    // exceed |f(x)| everywhere on the cube.
    double max_abs_f = 0.0;
    for (std::uint64_t b = 0; b < (std::uint64_t{1} << inst.n); ++b) {
      double lin = 0.0, quad = 0.0;
      for (int i = 0; i < inst.n; ++i) {
        if (!((b >> i) & 1)) continue;
        lin += inst.mu(i);
        for (int j = 0; j < inst.n; ++j)
          if ((b >> j) & 1) quad += inst.sigma(i, j);
      }
      max_abs_f = std::max(max_abs_f, std::abs(-lin + inst.risk_aversion * quad));
    }
    require(inst.penalty > max_abs_f, "penalty does not dominate |f| over the cube");
  }
}

PortfolioInstance generate_instance(int n, int k, Volatility vol, std::uint64_t seed) {
  require(n >= 2, "generate_instance requires n >= 2");
  require(k >= 1 && k <= n - 1, "generate_instance requires 1 <= k <= n-1");

  std::mt19937_64 rng(splitmix64(seed));
  std::uniform_real_distribution<double> ret(0.02, 0.12);
  std::normal_distribution<double> gauss(0.0, 0.05);

  PortfolioInstance inst;
  inst.n = n;
  inst.k = k;
  inst.seed = seed;
  inst.risk_aversion = 0.5;

  inst.mu.resize(n);
  for (int i = 0; i < n; ++i) inst.mu(i) = ret(rng);

  Eigen::MatrixXd a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = gauss(rng);
  inst.sigma = a * a.transpose() + 1e-6 * Eigen::MatrixXd::Identity(n, n);

  if (vol == Volatility::high) {
    Eigen::VectorXd diag = inst.sigma.diagonal();
    inst.sigma *= 2.0;
    inst.sigma.diagonal() = diag;
    // Doubling the off-diagonal can lose positive semidefiniteness; restore
    // it with the smallest uniform diagonal shift.
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(inst.sigma, Eigen::EigenvaluesOnly);
    const double lo = es.eigenvalues().minCoeff();
    if (lo < 1e-6) inst.sigma.diagonal().array() += (1e-6 - lo);
  }

  inst.penalty =
      inst.mu.lpNorm<1>() + inst.risk_aversion * inst.sigma.cwiseAbs().sum();
  inst.label = std::to_string(n) + "-var " + to_string(vol) + "-vol s" +
               std::to_string(seed);

  validate_instance(inst);
  return inst;
}

QuboMatrix build_qubo(const PortfolioInstance& inst) {
  validate_instance(inst);
  const int n = inst.n;
  const double lam = inst.risk_aversion;
  const double p = inst.penalty;
  const double k = static_cast<double>(inst.k);

  QuboMatrix qubo;
  qubo.n = n;
  qubo.q = lam * inst.sigma;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) qubo.q(i, j) += (i == j) ? 0.0 : p;
  // x_i^2 = x_i folds the linear part of the penalty expansion and -mu onto
  // the diagonal: P (sum x_i - k)^2 = P [(1-2k) sum x_i + 2 sum_{i<j} x_i x_j + k^2].
  qubo.q.diagonal().array() += p * (1.0 - 2.0 * k);
  qubo.q.diagonal() -= inst.mu;
  qubo.offset = p * k * k;
  return qubo;
}

IsingHamiltonian qubo_to_ising(const QuboMatrix& qubo) {
  const int n = qubo.n;
  require(n >= 1 && qubo.q.rows() == n && qubo.q.cols() == n, "malformed QuboMatrix");
  require((qubo.q - qubo.q.transpose()).cwiseAbs().maxCoeff() <= 1e-12,
          "QuboMatrix is not symmetric");

  IsingHamiltonian ham;
  ham.n = n;
  ham.h = Eigen::VectorXd::Zero(n);
  ham.j = Eigen::MatrixXd::Zero(n, n);
  ham.constant = qubo.offset;

  for (int i = 0; i < n; ++i) {
    ham.h(i) -= 0.5 * qubo.q(i, i);
    ham.constant += 0.5 * qubo.q(i, i);
    for (int j = i + 1; j < n; ++j) {
      ham.j(i, j) = 0.5 * qubo.q(i, j);
      ham.h(i) -= 0.5 * qubo.q(i, j);
      ham.h(j) -= 0.5 * qubo.q(i, j);
      ham.constant += 0.5 * qubo.q(i, j);
    }
  }
  return ham;
}

double qubo_energy(const QuboMatrix& qubo, std::uint64_t bits) {
  check_bits_range(bits, qubo.n);
  int idx[64];
  int w = 0;
  for (int i = 0; i < qubo.n; ++i)
    if ((bits >> i) & 1) idx[w++] = i;

  double e = qubo.offset;
  for (int a = 0; a < w; ++a) {
    e += qubo.q(idx[a], idx[a]);
    for (int b = a + 1; b < w; ++b) e += 2.0 * qubo.q(idx[a], idx[b]);
  }
  return e;
}

double ising_energy(const IsingHamiltonian& ham, std::uint64_t bits) {
  check_bits_range(bits, ham.n);
  double e = ham.constant;
  for (int i = 0; i < ham.n; ++i) {
    const double zi = ((bits >> i) & 1) ? -1.0 : 1.0;
    e += ham.h(i) * zi;
    for (int j = i + 1; j < ham.n; ++j) {
      const double zj = ((bits >> j) & 1) ? -1.0 : 1.0;
      e += ham.j(i, j) * zi * zj;
    }
  }
  return e;
}

std::pair<std::uint64_t, double> brute_force_optimum(const QuboMatrix& qubo) {
  require(qubo.n >= 1 && qubo.n <= kEnumerationCap, "brute force capped at n <= 24");
  BestTracker best;
  for (std::uint64_t b = 0; b < (std::uint64_t{1} << qubo.n); ++b)
    best.offer(b, qubo_energy(qubo, b));
  return {best.bits, best.energy};
}

std::vector<std::uint64_t> enumerate_feasible(int n, int k) {
  require(n >= 1 && n <= kEnumerationCap, "enumeration capped at n <= 24");
  require(k >= 0 && k <= n, "invalid cardinality");
  std::vector<std::uint64_t> out;
  if (k == 0) {
    out.push_back(0);
    return out;
  }
  const std::uint64_t limit = std::uint64_t{1} << n;
  // Gosper's hack walks weight-k sets in ascending order.
  std::uint64_t v = (std::uint64_t{1} << k) - 1;
  while (v < limit) {
    out.push_back(v);
    const std::uint64_t u = v & (~v + 1);
    const std::uint64_t w = v + u;
    v = w | (((v ^ w) >> 2) / u);
  }
  return out;
}

std::pair<std::uint64_t, double> simulated_annealing(const QuboMatrix& qubo, int sweeps,
                                                     std::uint64_t seed) {
  require(sweeps >= 1, "simulated_annealing requires sweeps >= 1");
  const int n = qubo.n;
  std::mt19937_64 rng(splitmix64(seed));

  std::uint64_t state = 0;
  for (int i = 0; i < n; ++i)
    if (rng() & 1) state |= std::uint64_t{1} << i;
  double energy = qubo_energy(qubo, state);

  // Hot enough to cross any single-flip barrier: bound |dE| by the largest
  // row of |q|.
  double t0 = 0.0;
  for (int i = 0; i < n; ++i) {
    double row = std::abs(qubo.q(i, i));
    for (int j = 0; j < n; ++j)
      if (j != i) row += 2.0 * std::abs(qubo.q(i, j));
    t0 = std::max(t0, row);
  }
  t0 *= 2.0;
  if (!(t0 > 0.0)) t0 = 1.0;
  const double tf = 1e-3;
  const double ratio = sweeps > 1 ? std::pow(tf / t0, 1.0 / (sweeps - 1)) : 1.0;

  BestTracker best;
  best.offer(state, energy);

  double t = t0;
  for (int s = 0; s < sweeps; ++s, t *= ratio) {
    for (int i = 0; i < n; ++i) {
      const double d = ((state >> i) & 1) ? -1.0 : 1.0;
      double coupling = 0.0;
      for (int j = 0; j < n; ++j)
        if (j != i && ((state >> j) & 1)) coupling += qubo.q(i, j);
      const double delta = d * (qubo.q(i, i) + 2.0 * coupling);
      if (delta <= 0.0 || uniform01(rng) < std::exp(-delta / t)) {
        state ^= std::uint64_t{1} << i;
        energy += delta;
        best.offer(state, energy);
      }
    }
  }
  // Re-evaluate exactly; the incremental energy accumulates rounding.
  return {best.bits, qubo_energy(qubo, best.bits)};
}

std::pair<std::uint64_t, double> random_search(const QuboMatrix& qubo, long long samples,
                                               std::uint64_t seed) {
  require(samples >= 1, "random_search requires samples >= 1");
  const std::uint64_t mask = (qubo.n >= 64) ? ~std::uint64_t{0}
                                            : (std::uint64_t{1} << qubo.n) - 1;
  std::mt19937_64 rng(splitmix64(seed));
  BestTracker best;
  for (long long s = 0; s < samples; ++s) {
    const std::uint64_t b = rng() & mask;
    best.offer(b, qubo_energy(qubo, b));
  }
  return {best.bits, best.energy};
}

std::string format_bits(std::uint64_t bits, int n) {
  std::string s(static_cast<std::size_t>(n), '0');
  for (int i = 0; i < n; ++i)
    if ((bits >> i) & 1) s[static_cast<std::size_t>(n - 1 - i)] = '1';
  return s;
}

std::uint64_t parse_bits(const std::string& s) {
  std::uint64_t b = 0;
  const int n = static_cast<int>(s.size());
  for (int i = 0; i < n; ++i) {
    const char c = s[static_cast<std::size_t>(i)];
    if (c != '0' && c != '1') throw std::invalid_argument("bitstring must be 0/1");
    if (c == '1') b |= std::uint64_t{1} << (n - 1 - i);
  }
  return b;
}

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return std::round(r);
}

std::string instance_to_json(const PortfolioInstance& inst) {
  nlohmann::ordered_json j;
  j["label"] = inst.label;
  j["n"] = inst.n;
  j["k"] = inst.k;
  j["mu"] = std::vector<double>(inst.mu.data(), inst.mu.data() + inst.mu.size());
  auto rows = nlohmann::ordered_json::array();
  for (int r = 0; r < inst.n; ++r) {
    auto row = nlohmann::ordered_json::array();
    for (int c = 0; c < inst.n; ++c) row.push_back(inst.sigma(r, c));
    rows.push_back(std::move(row));
  }
  j["sigma"] = std::move(rows);
  j["risk_aversion"] = inst.risk_aversion;
  j["penalty"] = inst.penalty;
  j["seed"] = inst.seed;
  return j.dump(2) + "\n";
}

PortfolioInstance instance_from_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  PortfolioInstance inst;
  inst.label = j.at("label").get<std::string>();
  inst.n = j.at("n").get<int>();
  inst.k = j.at("k").get<int>();
  const auto mu = j.at("mu").get<std::vector<double>>();
  inst.mu = Eigen::Map<const Eigen::VectorXd>(mu.data(),
                                              static_cast<Eigen::Index>(mu.size()));
  const auto& sig = j.at("sigma");
  if (!sig.is_array() || static_cast<int>(sig.size()) != inst.n)
    throw std::invalid_argument("sigma must be an n x n array");
  inst.sigma.resize(inst.n, inst.n);
  for (int r = 0; r < inst.n; ++r) {
    const auto row = sig.at(static_cast<std::size_t>(r)).get<std::vector<double>>();
    if (static_cast<int>(row.size()) != inst.n)
      throw std::invalid_argument("sigma must be an n x n array");
    for (int c = 0; c < inst.n; ++c) inst.sigma(r, c) = row[static_cast<std::size_t>(c)];
  }
  inst.risk_aversion = j.at("risk_aversion").get<double>();
  inst.penalty = j.at("penalty").get<double>();
  inst.seed = j.at("seed").get<std::uint64_t>();
  validate_instance(inst);
  return inst;
}

void save_instance(const PortfolioInstance& inst, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << instance_to_json(inst);
}

PortfolioInstance load_instance(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open instance file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return instance_from_json(ss.str());
}

}  // namespace qlsc
