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

#include "qlsc/optimize.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "qlsc/qaoa.hpp"
#include "qlsc/rng.hpp"

namespace qlsc {

namespace {

struct Point {
  double g = 0.0;
  double b = 0.0;
};

struct Vertex {
  Point x;
  double f = 0.0;
};

Point clamp_to(const SearchBox& box, Point p) {
  p.g = std::clamp(p.g, box.gamma_lo, box.gamma_hi);
  p.b = std::clamp(p.b, box.beta_lo, box.beta_hi);
  return p;
}

// Plain 2-D Nelder-Mead with the standard coefficients; the simplex is kept
// inside the box by clamping every candidate point.
Vertex nelder_mead(const std::function<double(Point)>& f, Point x0,
                   const SearchBox& box, double tol, int max_evals) {
  const double alpha = 1.0, gamma = 2.0, rho = 0.5, sigma = 0.5;
  int evals = 0;
  auto eval = [&](Point p) {
    ++evals;
    return f(p);
  };

  const double step_g = 0.05 * (box.gamma_hi - box.gamma_lo);
  const double step_b = 0.05 * (box.beta_hi - box.beta_lo);
  std::array<Vertex, 3> s;
  s[0].x = clamp_to(box, x0);
  s[1].x = clamp_to(box, {x0.g + (x0.g + step_g <= box.gamma_hi ? step_g : -step_g), x0.b});
  s[2].x = clamp_to(box, {x0.g, x0.b + (x0.b + step_b <= box.beta_hi ? step_b : -step_b)});
  for (auto& v : s) v.f = eval(v.x);

  while (evals < max_evals) {
    std::sort(s.begin(), s.end(), [](const Vertex& a, const Vertex& b) {
      return a.f < b.f || (a.f == b.f && (a.x.g < b.x.g || (a.x.g == b.x.g && a.x.b < b.x.b)));
    });
    const double fspread = s[2].f - s[0].f;
    const double diameter =
        std::max({std::abs(s[0].x.g - s[1].x.g), std::abs(s[0].x.g - s[2].x.g),
                  std::abs(s[0].x.b - s[1].x.b), std::abs(s[0].x.b - s[2].x.b)});
    if (fspread <= tol && diameter <= tol) break;

    const Point centroid{0.5 * (s[0].x.g + s[1].x.g), 0.5 * (s[0].x.b + s[1].x.b)};
    auto blend = [&](double t) {
      return clamp_to(box, {centroid.g + t * (centroid.g - s[2].x.g),
                            centroid.b + t * (centroid.b - s[2].x.b)});
    };

    const Point xr = blend(alpha);
    const double fr = eval(xr);
    if (fr < s[0].f) {
      const Point xe = blend(gamma);
      const double fe = eval(xe);
      if (fe < fr)
        s[2] = {xe, fe};
      else
        s[2] = {xr, fr};
    } else if (fr < s[1].f) {
      s[2] = {xr, fr};
    } else {
      const bool outside = fr < s[2].f;
      const Point xc = outside ? blend(rho)
                               : clamp_to(box, {centroid.g + rho * (s[2].x.g - centroid.g),
                                                centroid.b + rho * (s[2].x.b - centroid.b)});
      const double fc = eval(xc);
      if (fc < (outside ? fr : s[2].f)) {
        s[2] = {xc, fc};
      } else {
        for (int i = 1; i < 3; ++i) {
          s[i].x = clamp_to(box, {s[0].x.g + sigma * (s[i].x.g - s[0].x.g),
                                  s[0].x.b + sigma * (s[i].x.b - s[0].x.b)});
          s[i].f = eval(s[i].x);
        }
      }
    }
  }

  return *std::min_element(s.begin(), s.end(),
                           [](const Vertex& a, const Vertex& b) { return a.f < b.f; });
}

}  // namespace

OptimizationResult optimize_parameters(const IsingHamiltonian& ham, int starts,
                                       std::uint64_t seed, const SearchBox& box) {
  if (starts < 1) throw std::invalid_argument("optimize_parameters requires starts >= 1");
  if (!(box.gamma_lo < box.gamma_hi) || !(box.beta_lo < box.beta_hi))
    throw std::invalid_argument("degenerate search box");

  const auto diag = cost_diagonal(ham);
  auto energy = [&](Point p) {
    return energy_expectation(ideal_distribution(p.g, p.b, diag), diag, false);
  };

  std::mt19937_64 rng(splitmix64(seed));
  std::vector<Point> initial(static_cast<std::size_t>(starts));
  for (auto& p : initial) {
    p.g = box.gamma_lo + uniform01(rng) * (box.gamma_hi - box.gamma_lo);
    p.b = box.beta_lo + uniform01(rng) * (box.beta_hi - box.beta_lo);
  }

  OptimizationResult result;
  result.starts = starts;
  result.trace.reserve(static_cast<std::size_t>(starts));
  for (int s = 0; s < starts; ++s) {
    const auto p0 = initial[static_cast<std::size_t>(s)];
    const auto best = nelder_mead(energy, p0, box, 1e-8, 500);
    result.trace.push_back({p0.g, p0.b, best.x.g, best.x.b, best.f});
    if (s == 0 || best.f < result.energy) {
      result.energy = best.f;
      result.gamma_star = best.x.g;
      result.beta_star = best.x.b;
      result.best_start_index = s;
    }
  }
  return result;
}

std::string optimum_to_json(const OptimizationResult& result) {
  nlohmann::ordered_json j;
  j["gamma_star"] = result.gamma_star;
  j["beta_star"] = result.beta_star;
  j["energy"] = result.energy;
  j["starts"] = result.starts;
  j["best_start_index"] = result.best_start_index;
  auto trace = nlohmann::ordered_json::array();
  for (const auto& t : result.trace)
    trace.push_back({{"initial", {t.gamma0, t.beta0}},
                     {"final", {t.gamma, t.beta}},
                     {"energy", t.energy}});
  j["trace"] = std::move(trace);
  return j.dump(2) + "\n";
}

OptimizationResult optimum_from_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  OptimizationResult result;
  result.gamma_star = j.at("gamma_star").get<double>();
  result.beta_star = j.at("beta_star").get<double>();
  result.energy = j.at("energy").get<double>();
  result.starts = j.at("starts").get<int>();
  result.best_start_index = j.at("best_start_index").get<int>();
  if (j.contains("trace"))
    for (const auto& t : j.at("trace")) {
      StartTrace st;
      st.gamma0 = t.at("initial").at(0).get<double>();
      st.beta0 = t.at("initial").at(1).get<double>();
      st.gamma = t.at("final").at(0).get<double>();
      st.beta = t.at("final").at(1).get<double>();
      st.energy = t.at("energy").get<double>();
      result.trace.push_back(st);
    }
  return result;
}

void save_optimum(const OptimizationResult& result, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << optimum_to_json(result);
}

OptimizationResult load_optimum(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open optimum file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return optimum_from_json(ss.str());
}

}  // namespace qlsc
