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

#include "qlsc/noise.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace qlsc {

namespace {

void require(bool cond, const std::string& msg) {
  if (!cond) throw std::invalid_argument(msg);
}

bool in_unit(double p) { return p >= 0.0 && p <= 1.0; }

double clamp01(double p, bool& clamped) {
  if (p < 0.0) {
    clamped = true;
    return 0.0;
  }
  if (p > 1.0) {
    clamped = true;
    return 1.0;
  }
  return p;
}

}  // namespace

void validate_noise(const NoiseSpec& noise) {
  require(in_unit(noise.p1), "p1 must be in [0,1]");
  require(in_unit(noise.p2), "p2 must be in [0,1]");
  require(in_unit(noise.p01), "p01 must be in [0,1]");
  require(in_unit(noise.p10), "p10 must be in [0,1]");
  require(in_unit(noise.global_depol), "global_depol must be in [0,1]");
  require(noise.t1 > 0.0, "t1 must be positive (infinity disables relaxation)");
  require(noise.t2 > 0.0, "t2 must be positive (infinity disables dephasing)");
  require(noise.t2 <= 2.0 * noise.t1, "t2 must not exceed 2*t1");
  require(noise.dur1 >= 0.0 && noise.dur2 >= 0.0 && noise.dur_meas >= 0.0,
          "durations must be nonnegative");
  require(noise.scale >= 1.0, "scale must be >= 1");
  require(std::isfinite(noise.scale), "scale must be finite");
}

bool is_identity_noise(const NoiseSpec& noise) {
  return noise.p1 == 0.0 && noise.p2 == 0.0 && noise.p01 == 0.0 &&
         noise.p10 == 0.0 && noise.global_depol == 0.0 &&
         std::isinf(noise.t1) && std::isinf(noise.t2);
}

ScaledChannels scaled_channels(const NoiseSpec& noise) {
  validate_noise(noise);
  ScaledChannels s;
  s.p1 = clamp01(noise.p1 * noise.scale, s.clamped);
  s.p2 = clamp01(noise.p2 * noise.scale, s.clamped);
  s.p01 = clamp01(noise.p01 * noise.scale, s.clamped);
  s.p10 = clamp01(noise.p10 * noise.scale, s.clamped);
  s.global_depol = clamp01(noise.global_depol * noise.scale, s.clamped);
  s.dur1 = noise.dur1 * noise.scale;
  s.dur2 = noise.dur2 * noise.scale;
  s.dur_meas = noise.dur_meas * noise.scale;
  return s;
}

std::string noise_to_json(const NoiseSpec& noise) {
  nlohmann::ordered_json j;
  j["p1"] = noise.p1;
  j["p2"] = noise.p2;
  j["t1"] = std::isinf(noise.t1) ? nlohmann::ordered_json() : nlohmann::ordered_json(noise.t1);
  j["t2"] = std::isinf(noise.t2) ? nlohmann::ordered_json() : nlohmann::ordered_json(noise.t2);
  j["dur1"] = noise.dur1;
  j["dur2"] = noise.dur2;
  j["dur_meas"] = noise.dur_meas;
  j["p01"] = noise.p01;
  j["p10"] = noise.p10;
  j["scale"] = noise.scale;
  j["global_depol"] = noise.global_depol;
  return j.dump(2) + "\n";
}

NoiseSpec noise_from_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  NoiseSpec noise;
  auto get = [&j](const char* key, double fallback) {
    if (!j.contains(key) || j.at(key).is_null()) return fallback;
    return j.at(key).get<double>();
  };
  const double inf = std::numeric_limits<double>::infinity();
  noise.p1 = get("p1", 0.0);
  noise.p2 = get("p2", 0.0);
  noise.t1 = get("t1", inf);
  noise.t2 = get("t2", inf);
  noise.dur1 = get("dur1", 0.0);
  noise.dur2 = get("dur2", 0.0);
  noise.dur_meas = get("dur_meas", 0.0);
  noise.p01 = get("p01", 0.0);
  noise.p10 = get("p10", 0.0);
  noise.scale = get("scale", 1.0);
  noise.global_depol = get("global_depol", 0.0);
  validate_noise(noise);
  return noise;
}

void save_noise(const NoiseSpec& noise, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << noise_to_json(noise);
}

NoiseSpec load_noise(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open noise file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return noise_from_json(ss.str());
}

}  // namespace qlsc
