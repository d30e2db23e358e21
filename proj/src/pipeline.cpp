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

#include "qlsc/pipeline.hpp"

#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "qlsc/landscape.hpp"
#include "qlsc/metrics.hpp"
#include "qlsc/optimize.hpp"
#include "qlsc/qaoa.hpp"
#include "qlsc/rng.hpp"
#include "qlsc/zne.hpp"

namespace qlsc {

namespace {

namespace fs = std::filesystem;

// Stable per-stage seed salts; the per-point / per-factor derivation happens
// inside the stages themselves.
constexpr std::uint64_t kSaltOptimize = 0x10;
constexpr std::uint64_t kSaltIdealScan = 0x20;
constexpr std::uint64_t kSaltNoisyScan = 0x30;
constexpr std::uint64_t kSaltZne = 0x40;

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << content;
}

template <typename Fn>
auto stage(const std::string& name, Fn&& fn) {
  try {
    return fn();
  } catch (const StageError&) {
    throw;
  } catch (const std::exception& e) {
    throw StageError(name, e.what());
  }
}

nlohmann::ordered_json noise_json_obj(const NoiseSpec& noise) {
  return nlohmann::ordered_json::parse(noise_to_json(noise));
}

}  // namespace

NoiseSpec default_noise() {
  NoiseSpec noise;
  noise.p1 = 3e-4;
  noise.p2 = 3e-3;
  noise.t1 = 1.5e-4;
  noise.t2 = 1.0e-4;
  noise.dur1 = 3.2e-8;
  noise.dur2 = 6.8e-8;
  noise.dur_meas = 1.3e-6;
  noise.p01 = 0.01;
  noise.p10 = 0.02;
  return noise;
}

std::string config_to_json(const RunConfig& config) {
  nlohmann::ordered_json j;
  if (config.generate) {
    j["instance"] = {{"generate",
                      {{"n", config.generate->n},
                       {"k", config.generate->k},
                       {"volatility", to_string(config.generate->volatility)},
                       {"seed", config.generate->seed}}}};
  } else if (config.instance) {
    j["instance"] = {{"inline", nlohmann::ordered_json::parse(
                                    instance_to_json(*config.instance))}};
  } else {
    j["instance"] = nullptr;
  }
  j["noise"] = noise_json_obj(config.noise);
  j["grid"] = {{"half_width", config.half_width},
               {"points_per_axis", config.points_per_axis}};
  j["shots"] = config.shots ? nlohmann::ordered_json(*config.shots)
                            : nlohmann::ordered_json();
  j["seed"] = config.seed;
  j["out_dir"] = config.out_dir;
  j["external"] = config.external ? nlohmann::ordered_json(*config.external)
                                  : nlohmann::ordered_json();
  j["zne"] = {{"enabled", config.zne_enabled},
              {"factors", config.zne_factors},
              {"shots", config.zne_shots ? nlohmann::ordered_json(*config.zne_shots)
                                         : nlohmann::ordered_json()}};
  j["starts"] = config.starts;
  return j.dump(2) + "\n";
}

RunConfig config_from_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  RunConfig config;
  if (j.contains("instance") && !j.at("instance").is_null()) {
    const auto& inst = j.at("instance");
    if (inst.contains("generate")) {
      const auto& g = inst.at("generate");
      GenerateParams params;
      params.n = g.at("n").get<int>();
      params.k = g.at("k").get<int>();
      params.volatility = volatility_from_string(g.at("volatility").get<std::string>());
      params.seed = g.at("seed").get<std::uint64_t>();
      config.generate = params;
    } else if (inst.contains("inline")) {
      config.instance = instance_from_json(inst.at("inline").dump());
    } else {
      throw std::invalid_argument("instance must hold 'generate' or 'inline'");
    }
  }
  if (j.contains("noise") && !j.at("noise").is_null())
    config.noise = noise_from_json(j.at("noise").dump());
  if (j.contains("grid")) {
    config.half_width = j.at("grid").value("half_width", config.half_width);
    config.points_per_axis = j.at("grid").value("points_per_axis", config.points_per_axis);
  }
  if (j.contains("shots") && !j.at("shots").is_null())
    config.shots = j.at("shots").get<long long>();
  config.seed = j.value("seed", config.seed);
  config.out_dir = j.value("out_dir", config.out_dir);
  if (j.contains("external") && !j.at("external").is_null())
    config.external = j.at("external").get<std::string>();
  if (j.contains("zne")) {
    const auto& z = j.at("zne");
    config.zne_enabled = z.value("enabled", false);
    if (z.contains("factors")) config.zne_factors = z.at("factors").get<std::vector<double>>();
    if (z.contains("shots") && !z.at("shots").is_null())
      config.zne_shots = z.at("shots").get<long long>();
  }
  config.starts = j.value("starts", config.starts);
  return config;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return config_from_json(ss.str());
}

void run_pipeline(const RunConfig& config, int threads, std::ostream& log) {
  const fs::path dir(config.out_dir);
  stage("setup", [&] {
    fs::create_directories(dir);
    write_file((dir / "run_config.json").string(), config_to_json(config));
  });

  const PortfolioInstance inst = stage("instance", [&] {
    if (config.generate)
      return generate_instance(config.generate->n, config.generate->k,
                               config.generate->volatility, config.generate->seed);
    if (config.instance) {
      validate_instance(*config.instance);
      return *config.instance;
    }
    throw std::invalid_argument("run config carries no instance");
  });
  stage("instance", [&] { save_instance(inst, (dir / "instance.json").string()); });
  log << "instance: " << inst.label << " (n=" << inst.n << ", k=" << inst.k
      << ", P=" << inst.penalty << ")\n";

  const auto qubo = stage("qubo", [&] { return build_qubo(inst); });
  const auto ham = stage("qubo", [&] { return qubo_to_ising(qubo); });
  const auto [best_bits, e_star] = stage("qubo", [&] { return brute_force_optimum(qubo); });
  log << "classical optimum: E*=" << e_star << " at " << format_bits(best_bits, inst.n)
      << "\n";

  const auto opt = stage("optimize", [&] {
    return optimize_parameters(ham, config.starts, derive_seed(config.seed, kSaltOptimize));
  });
  stage("optimize", [&] { save_optimum(opt, (dir / "optimum.json").string()); });
  log << "optimum: gamma*=" << opt.gamma_star << ", beta*=" << opt.beta_star
      << ", E=" << opt.energy << "\n";

  const auto grid = stage("scan-ideal", [&] {
    return make_grid(opt.gamma_star, opt.beta_star, config.half_width,
                     config.points_per_axis);
  });
  const auto ideal = stage("scan-ideal", [&] {
    auto scan = scan_landscape(grid, ham, inst.k, std::nullopt, config.shots,
                               derive_seed(config.seed, kSaltIdealScan), threads,
                               inst.label);
    export_landscape(scan, (dir / "landscape_ideal.csv").string());
    return scan;
  });
  log << "scan-ideal: span=" << landscape_span(ideal) << "\n";

  const auto noisy = stage("scan-noisy", [&] {
    auto scan = scan_landscape(grid, ham, inst.k, config.noise, config.shots,
                               derive_seed(config.seed, kSaltNoisyScan), threads,
                               inst.label);
    export_landscape(scan, (dir / "landscape_noisy.csv").string());
    return scan;
  });
  log << "scan-noisy: span=" << landscape_span(noisy) << "\n";

  std::optional<LandscapeGrid> external;
  if (config.external) {
    external = stage("ingest-external", [&] {
      auto grid_ext = ingest_landscape(*config.external);
      grid_ext.condition = Condition::external;
      if (!same_grid(grid_ext.grid, grid))
        throw std::invalid_argument("external grid does not match the scan grid");
      export_landscape(grid_ext, (dir / "landscape_external.csv").string());
      return grid_ext;
    });
    log << "ingest-external: span=" << landscape_span(*external) << "\n";
  }

  const auto report = stage("metrics", [&] {
    auto rep = build_report(ideal, noisy, external, e_star,
                            {opt.gamma_star, opt.beta_star});
    write_file((dir / "metrics.json").string(), report_to_json(rep));
    write_file((dir / "table.txt").string(), report_table(rep));
    return rep;
  });
  log << "metrics: LSC_n=" << report.lsc_noisy;
  if (report.lsc_hw) log << ", LSC_hw=" << *report.lsc_hw;
  log << ", OPS=" << report.ops_noisy << "\n";

  if (config.zne_enabled) {
    const auto zne = stage("zne", [&] {
      const auto diag = cost_diagonal(ham);
      const auto sched = qaoa_schedule(ham, opt.gamma_star, opt.beta_star, config.noise);
      auto result = run_zne(sched, diag, config.noise, config.zne_factors,
                            config.zne_shots, derive_seed(config.seed, kSaltZne));
      write_file((dir / "zne.json").string(), zne_to_json(result));
      return result;
    });
    log << "zne: extrapolated=" << zne.extrapolated
        << ", improvement=" << zne.improvement_pct << "%"
        << (zne.monotone ? "" : " [non-monotone: extrapolation unreliable]") << "\n";
  }
}

}  // namespace qlsc
