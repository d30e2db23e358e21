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

#include <limits>
#include <string>

namespace qlsc {

/// Calibration-style noise description. Probabilities are per gate, times in
/// seconds, and `scale` is the noise amplification factor used by ZNE: it
/// multiplies p1, p2, p01, p10, global_depol and every duration. t1 = t2 =
/// infinity disables relaxation (serialized as JSON null).
///
/// p01 is Pr(read 1 | prepared 0) and p10 is Pr(read 0 | prepared 1), applied
/// independently per qubit after measurement.
///
/// global_depol configures a single whole-register depolarizing channel
/// applied once after the circuit instead of (or on top of) the per-gate
/// channels; it is the knob behind the closed-form flattening checks.
struct NoiseSpec {
  double p1 = 0.0;
  double p2 = 0.0;
  double t1 = std::numeric_limits<double>::infinity();
  double t2 = std::numeric_limits<double>::infinity();
  double dur1 = 0.0;
  double dur2 = 0.0;
  double dur_meas = 0.0;
  double p01 = 0.0;
  double p10 = 0.0;
  double scale = 1.0;
  double global_depol = 0.0;
};

/// Throws std::invalid_argument on out-of-range parameters (probabilities
/// outside [0,1], t2 > 2*t1, nonpositive t1/t2, negative durations, scale < 1).
void validate_noise(const NoiseSpec& noise);

/// True when the spec reproduces the ideal channel exactly at scale 1.
bool is_identity_noise(const NoiseSpec& noise);

/// Channel strengths after multiplying by `scale`, clamped to [0,1].
/// `clamped` records whether any probability actually hit the clamp.
struct ScaledChannels {
  double p1 = 0.0;
  double p2 = 0.0;
  double p01 = 0.0;
  double p10 = 0.0;
  double global_depol = 0.0;
  double dur1 = 0.0;
  double dur2 = 0.0;
  double dur_meas = 0.0;
  bool clamped = false;
};

ScaledChannels scaled_channels(const NoiseSpec& noise);

// JSON with the exact field names of the struct; infinite t1/t2 <-> null.
std::string noise_to_json(const NoiseSpec& noise);
NoiseSpec noise_from_json(const std::string& text);
void save_noise(const NoiseSpec& noise, const std::string& path);
NoiseSpec load_noise(const std::string& path);

}  // namespace qlsc
