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

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qlsc/landscape.hpp"
#include "qlsc/metrics.hpp"
#include "qlsc/optimize.hpp"
#include "qlsc/pipeline.hpp"
#include "qlsc/qaoa.hpp"
#include "qlsc/qubo.hpp"
#include "qlsc/rng.hpp"
#include "qlsc/zne.hpp"

namespace {

using namespace qlsc;

void write_text(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << content;
}

// Relative output paths land under --out-dir; absolute paths pass through.
std::string resolve_out(const std::string& out_dir, const std::string& path) {
  if (path.empty()) return path;
  std::filesystem::path p(path);
  if (p.is_absolute() || out_dir.empty() || out_dir == ".") return path;
  std::filesystem::create_directories(out_dir);
  return (std::filesystem::path(out_dir) / p).string();
}

std::pair<double, double> parse_point(const std::string& s) {
  const auto comma = s.find(',');
  if (comma == std::string::npos)
    throw CLI::ValidationError("point must be 'gamma,beta'");
  return {std::stod(s.substr(0, comma)), std::stod(s.substr(comma + 1))};
}

std::vector<double> parse_factors(const std::string& s) {
  std::vector<double> out;
  std::size_t start = 0;
  while (start <= s.size()) {
    const auto comma = s.find(',', start);
    const auto token = s.substr(start, comma == std::string::npos ? std::string::npos
                                                                  : comma - start);
    if (!token.empty()) out.push_back(std::stod(token));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  if (out.size() < 2) throw CLI::ValidationError("need at least two factors");
  return out;
}

struct CommonArgs {
  std::uint64_t seed = 0;
  std::string out_dir = ".";
  std::string config_path;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("--seed", args.seed, "base RNG seed");
  cmd->add_option("--out-dir", args.out_dir, "output directory");
  cmd->add_option("--config", args.config_path, "JSON run config to load first");
}

int cmd_generate(int n, int k, const std::string& vol, std::uint64_t inst_seed,
                 const std::string& out_path) {
  const auto inst = generate_instance(n, k, volatility_from_string(vol), inst_seed);
  save_instance(inst, out_path);
  const double feasible = binomial(n, k);
  const double fraction = feasible / static_cast<double>(std::uint64_t{1} << n);
  std::cout << "wrote " << out_path << "\n"
            << "label: " << inst.label << "\n"
            << "n=" << n << " k=" << k << " penalty=" << inst.penalty << "\n"
            << "feasible set: " << static_cast<long long>(feasible) << " of "
            << (std::uint64_t{1} << n) << " (" << 100.0 * fraction << "%)\n";
  return 0;
}

int cmd_solve_classical(const std::string& inst_path, int sweeps, long long samples,
                        std::uint64_t seed, const std::string& out_path) {
  const auto inst = load_instance(inst_path);
  const auto qubo = build_qubo(inst);
  const auto [bf_bits, bf_energy] = brute_force_optimum(qubo);
  const auto [sa_bits, sa_energy] = simulated_annealing(qubo, sweeps, seed);
  const auto [rs_bits, rs_energy] = random_search(qubo, samples, seed);

  nlohmann::ordered_json j;
  j["brute_force"] = {{"bitstring", format_bits(bf_bits, inst.n)}, {"energy", bf_energy}};
  j["simulated_annealing"] = {{"bitstring", format_bits(sa_bits, inst.n)},
                              {"energy", sa_energy},
                              {"sweeps", sweeps}};
  j["random_search"] = {{"bitstring", format_bits(rs_bits, inst.n)},
                        {"energy", rs_energy},
                        {"samples", samples}};
  j["ar"] = {{"simulated_annealing", approximation_ratio(sa_energy, bf_energy)},
             {"random_search", approximation_ratio(rs_energy, bf_energy)}};
  if (!out_path.empty()) write_text(out_path, j.dump(2) + "\n");
  std::cout << j.dump(2) << "\n";
  return 0;
}

int cmd_ingest(const std::string& in_path, const std::string& out_path) {
  const auto grid = ingest_landscape(in_path);
  std::cout << "label: " << grid.label << "\n"
            << "condition: " << to_string(grid.condition) << "\n"
            << "points: " << grid.grid.points_per_axis << "x"
            << grid.grid.points_per_axis << "\n"
            << "gamma: [" << grid.grid.gamma_values(0) << ", "
            << grid.grid.gamma_values(grid.grid.points_per_axis - 1) << "]\n"
            << "beta: [" << grid.grid.beta_values(0) << ", "
            << grid.grid.beta_values(grid.grid.points_per_axis - 1) << "]\n"
            << "span: " << landscape_span(grid) << "\n";
  if (!out_path.empty()) {
    export_landscape(grid, out_path);
    std::cout << "wrote " << out_path << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"QAOA landscape-compression toolkit"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "qlsc 0.1.0");

  // generate ---------------------------------------------------------------
  auto* gen = app.add_subcommand("generate", "generate a synthetic instance");
  int gen_n = 6, gen_k = 0;
  std::string gen_vol = "low", gen_out = "instance.json";
  std::uint64_t gen_seed = 1;
  gen->add_option("--n", gen_n, "variable count")->required();
  gen->add_option("--k", gen_k, "cardinality target")->required();
  gen->add_option("--volatility", gen_vol, "low|high");
  gen->add_option("--seed", gen_seed, "instance seed");
  gen->add_option("--out", gen_out, "output instance JSON path");
  std::string gen_dir = ".";
  gen->add_option("--out-dir", gen_dir, "directory for relative output paths");

  // solve-classical ----------------------------------------------------------
  auto* solve = app.add_subcommand("solve-classical",
                                   "brute force, annealing and random search");
  std::string solve_inst, solve_out;
  int solve_sweeps = 2000;
  long long solve_samples = 100000;
  std::uint64_t solve_seed = 0;
  solve->add_option("--instance", solve_inst, "instance JSON")->required();
  solve->add_option("--sweeps", solve_sweeps, "annealing sweeps");
  solve->add_option("--samples", solve_samples, "random-search samples");
  solve->add_option("--seed", solve_seed, "solver seed");
  solve->add_option("--out", solve_out, "optional classical.json output");
  std::string solve_dir = ".";
  solve->add_option("--out-dir", solve_dir, "directory for relative output paths");

  // optimize -----------------------------------------------------------------
  auto* optc = app.add_subcommand("optimize", "find (gamma*, beta*) on the ideal landscape");
  std::string opt_inst, opt_out = "optimum.json", opt_box;
  int opt_starts = 16;
  std::uint64_t opt_seed = 0;
  optc->add_option("--instance", opt_inst, "instance JSON")->required();
  optc->add_option("--starts", opt_starts, "number of local starts");
  optc->add_option("--seed", opt_seed, "start-sampling seed");
  optc->add_option("--box", opt_box, "search box 'g_lo,g_hi,b_lo,b_hi'");
  optc->add_option("--out", opt_out, "output optimum JSON path");
  std::string opt_dir = ".";
  optc->add_option("--out-dir", opt_dir, "directory for relative output paths");

  // scan ---------------------------------------------------------------------
  auto* scan = app.add_subcommand("scan", "evaluate a (gamma,beta) landscape grid");
  std::string scan_inst, scan_noise, scan_optimum, scan_center, scan_out = "landscape.csv";
  std::string scan_label;
  double scan_hw = 0.4;
  int scan_points = 13, scan_threads = 0;
  std::optional<long long> scan_shots;
  std::uint64_t scan_seed = 0;
  scan->add_option("--instance", scan_inst, "instance JSON")->required();
  scan->add_option("--noise", scan_noise, "noise JSON (omit for the ideal scan)");
  scan->add_option("--optimum", scan_optimum, "center the grid at this optimum JSON");
  scan->add_option("--center", scan_center, "explicit center 'gamma,beta'");
  scan->add_option("--half-width", scan_hw, "grid half-width (radians)");
  scan->add_option("--points", scan_points, "points per axis");
  scan->add_option("--shots", scan_shots, "sample this many shots per point");
  scan->add_option("--seed", scan_seed, "sampling seed");
  scan->add_option("--threads", scan_threads, "worker threads (0 = auto)");
  scan->add_option("--label", scan_label, "landscape label");
  scan->add_option("--out", scan_out, "output CSV path");
  std::string scan_dir = ".";
  scan->add_option("--out-dir", scan_dir, "directory for relative output paths");

  // metrics --------------------------------------------------------------------
  auto* met = app.add_subcommand("metrics", "compare landscapes sharing one grid");
  std::string met_ideal, met_noisy, met_external, met_instance, met_optimum, met_point;
  std::optional<double> met_estar;
  std::string met_json = "metrics.json", met_table = "table.txt";
  met->add_option("--ideal", met_ideal, "ideal landscape CSV")->required();
  met->add_option("--noisy", met_noisy, "noisy landscape CSV")->required();
  met->add_option("--external", met_external, "external landscape CSV");
  met->add_option("--e-star", met_estar, "true optimum energy");
  met->add_option("--instance", met_instance, "instance JSON (brute-forces E*)");
  met->add_option("--optimum", met_optimum, "optimum JSON for ff-at-optimum");
  met->add_option("--opt-point", met_point, "explicit optimum 'gamma,beta'");
  met->add_option("--out-json", met_json, "metrics JSON output path");
  met->add_option("--out-table", met_table, "table output path");
  std::string met_dir = ".";
  met->add_option("--out-dir", met_dir, "directory for relative output paths");

  // zne ------------------------------------------------------------------------
  auto* zne = app.add_subcommand("zne", "zero-noise extrapolation at one point");
  std::string zne_inst, zne_noise, zne_optimum, zne_factors = "1,3,5", zne_out = "zne.json";
  std::string zne_inject;
  std::optional<double> zne_gamma, zne_beta;
  std::optional<long long> zne_shots;
  std::uint64_t zne_seed = 0;
  zne->add_option("--instance", zne_inst, "instance JSON")->required();
  zne->add_option("--noise", zne_noise, "noise JSON (defaults to the built-in model)");
  zne->add_option("--optimum", zne_optimum, "take (gamma*, beta*) from this JSON");
  zne->add_option("--gamma", zne_gamma, "explicit gamma");
  zne->add_option("--beta", zne_beta, "explicit beta");
  zne->add_option("--factors", zne_factors, "comma-separated amplification factors");
  zne->add_option("--shots", zne_shots, "shots per factor (omit for exact mode)");
  zne->add_option("--seed", zne_seed, "sampling seed");
  zne->add_option("--out", zne_out, "output JSON path");
  std::string zne_dir = ".";
  zne->add_option("--out-dir", zne_dir, "directory for relative output paths");
  zne->add_option("--inject-energies", zne_inject,
                  "testing hook: skip simulation, use these energies")
      ->group("");

  // ingest ----------------------------------------------------------------------
  auto* ing = app.add_subcommand("ingest", "validate an externally measured landscape");
  std::string ing_in, ing_out;
  ing->add_option("--in", ing_in, "landscape CSV")->required();
  ing->add_option("--out", ing_out, "optional normalized re-export path");

  // pipeline ----------------------------------------------------------------------
  auto* pipe = app.add_subcommand("pipeline", "full benchmark run into a bundle directory");
  CommonArgs pipe_common;
  pipe_common.out_dir = "out";
  std::string pipe_inst, pipe_noise, pipe_vol = "low", pipe_external;
  int pipe_n = 6, pipe_k = 3, pipe_points = 13, pipe_starts = 16, pipe_threads = 0;
  std::uint64_t pipe_inst_seed = 1;
  double pipe_hw = 0.4;
  std::optional<long long> pipe_shots, pipe_zne_shots;
  bool pipe_zne = false;
  std::string pipe_zne_factors = "1,3,5";
  add_common(pipe, pipe_common);
  pipe->add_option("--instance", pipe_inst, "instance JSON (overrides generation)");
  pipe->add_option("--n", pipe_n, "generated instance: variable count");
  pipe->add_option("--k", pipe_k, "generated instance: cardinality");
  pipe->add_option("--volatility", pipe_vol, "generated instance: low|high");
  pipe->add_option("--instance-seed", pipe_inst_seed, "generated instance: seed");
  pipe->add_option("--noise", pipe_noise, "noise JSON path");
  pipe->add_option("--half-width", pipe_hw, "grid half-width");
  pipe->add_option("--points", pipe_points, "grid points per axis");
  pipe->add_option("--shots", pipe_shots, "shots per grid point (omit for exact)");
  pipe->add_option("--external", pipe_external, "externally measured landscape CSV");
  pipe->add_flag("--zne", pipe_zne, "run ZNE at the optimum");
  pipe->add_option("--zne-factors", pipe_zne_factors, "ZNE amplification factors");
  pipe->add_option("--zne-shots", pipe_zne_shots, "ZNE shots per factor");
  pipe->add_option("--starts", pipe_starts, "optimizer starts");
  pipe->add_option("--threads", pipe_threads, "worker threads (0 = auto)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed())
      return cmd_generate(gen_n, gen_k, gen_vol, gen_seed, resolve_out(gen_dir, gen_out));

    if (solve->parsed())
      return cmd_solve_classical(solve_inst, solve_sweeps, solve_samples, solve_seed,
                                 resolve_out(solve_dir, solve_out));

    if (optc->parsed()) {
      const auto inst = load_instance(opt_inst);
      const auto ham = qubo_to_ising(build_qubo(inst));
      SearchBox box;
      if (!opt_box.empty()) {
        const auto parts = parse_factors(opt_box);
        if (parts.size() != 4) throw CLI::ValidationError("--box needs four values");
        box = {parts[0], parts[1], parts[2], parts[3]};
      }
      const auto result = optimize_parameters(ham, opt_starts, opt_seed, box);
      save_optimum(result, resolve_out(opt_dir, opt_out));
      std::cout << "gamma*=" << result.gamma_star << " beta*=" << result.beta_star
                << " energy=" << result.energy << " (start " << result.best_start_index
                << " of " << result.starts << ")\n";
      return 0;
    }

    if (scan->parsed()) {
      const auto inst = load_instance(scan_inst);
      const auto ham = qubo_to_ising(build_qubo(inst));
      double cg = 0.0, cb = 0.0;
      if (!scan_center.empty()) {
        std::tie(cg, cb) = parse_point(scan_center);
      } else if (!scan_optimum.empty()) {
        const auto opt = load_optimum(scan_optimum);
        cg = opt.gamma_star;
        cb = opt.beta_star;
      } else {
        throw CLI::ValidationError("scan needs --center or --optimum");
      }
      std::optional<NoiseSpec> noise;
      if (!scan_noise.empty()) noise = load_noise(scan_noise);
      const int threads = scan_threads > 0
                              ? scan_threads
                              : static_cast<int>(std::thread::hardware_concurrency());
      const auto grid = make_grid(cg, cb, scan_hw, scan_points);
      const auto label = scan_label.empty() ? inst.label : scan_label;
      const auto scan_result = scan_landscape(grid, ham, inst.k, noise, scan_shots,
                                              scan_seed, std::max(threads, 1), label);
      const auto scan_path = resolve_out(scan_dir, scan_out);
      export_landscape(scan_result, scan_path);
      std::cout << "wrote " << scan_path << " (condition "
                << to_string(scan_result.condition)
                << ", span " << landscape_span(scan_result) << ")\n";
      return 0;
    }

    if (met->parsed()) {
      const auto ideal = ingest_landscape(met_ideal);
      const auto noisy = ingest_landscape(met_noisy);
      std::optional<LandscapeGrid> external;
      if (!met_external.empty()) external = ingest_landscape(met_external);

      double e_star = 0.0;
      if (met_estar) {
        e_star = *met_estar;
      } else if (!met_instance.empty()) {
        e_star = brute_force_optimum(build_qubo(load_instance(met_instance))).second;
      } else {
        throw CLI::ValidationError("metrics needs --e-star or --instance");
      }

      std::pair<double, double> point{ideal.grid.gamma_center, ideal.grid.beta_center};
      if (!met_point.empty())
        point = parse_point(met_point);
      else if (!met_optimum.empty()) {
        const auto opt = load_optimum(met_optimum);
        point = {opt.gamma_star, opt.beta_star};
      }

      const auto report = build_report(ideal, noisy, external, e_star, point);
      write_text(resolve_out(met_dir, met_json), report_to_json(report));
      write_text(resolve_out(met_dir, met_table), report_table(report));
      std::cout << report_table(report);
      return 0;
    }

    if (zne->parsed()) {
      const auto inst = load_instance(zne_inst);
      const auto ham = qubo_to_ising(build_qubo(inst));
      const auto factors = parse_factors(zne_factors);

      ZneResult result;
      if (!zne_inject.empty()) {
        const auto energies = parse_factors(zne_inject);
        result = build_zne_result(factors, energies,
                                  std::vector<double>(factors.size(), 0.0));
      } else {
        double g = 0.0, b = 0.0;
        if (zne_gamma && zne_beta) {
          g = *zne_gamma;
          b = *zne_beta;
        } else if (!zne_optimum.empty()) {
          const auto opt = load_optimum(zne_optimum);
          g = opt.gamma_star;
          b = opt.beta_star;
        } else {
          throw CLI::ValidationError("zne needs --optimum or --gamma/--beta");
        }
        const NoiseSpec noise =
            zne_noise.empty() ? default_noise() : load_noise(zne_noise);
        const auto diag = cost_diagonal(ham);
        const auto sched = qaoa_schedule(ham, g, b, noise);
        result = run_zne(sched, diag, noise, factors, zne_shots, zne_seed);
      }
      write_text(resolve_out(zne_dir, zne_out), zne_to_json(result));
      std::cout << zne_to_json(result);
      if (!result.monotone)
        std::cerr << "warning: energies are not monotone in the amplification factor; "
                     "the extrapolated value should not be trusted\n";
      if (result.clamped)
        std::cerr << "warning: scaled noise probabilities were clamped to [0,1]\n";
      return 0;
    }

    if (ing->parsed()) return cmd_ingest(ing_in, ing_out);

    if (pipe->parsed()) {
      RunConfig config;
      if (!pipe_common.config_path.empty()) config = load_config(pipe_common.config_path);

      if (pipe->count("--instance")) {
        config.instance = load_instance(pipe_inst);
        config.generate.reset();
      } else if (!config.instance && !config.generate) {
        config.generate = GenerateParams{};
      }
      if (pipe->count("--n")) config.generate->n = pipe_n;
      if (pipe->count("--k")) config.generate->k = pipe_k;
      if (pipe->count("--volatility"))
        config.generate->volatility = volatility_from_string(pipe_vol);
      if (pipe->count("--instance-seed")) config.generate->seed = pipe_inst_seed;
      if (pipe->count("--noise"))
        config.noise = load_noise(pipe_noise);
      else if (pipe_common.config_path.empty())
        config.noise = default_noise();
      if (pipe->count("--half-width")) config.half_width = pipe_hw;
      if (pipe->count("--points")) config.points_per_axis = pipe_points;
      if (pipe->count("--shots")) config.shots = pipe_shots;
      if (pipe->count("--seed")) config.seed = pipe_common.seed;
      if (pipe->count("--out-dir")) config.out_dir = pipe_common.out_dir;
      if (pipe->count("--external")) config.external = pipe_external;
      if (pipe->count("--zne")) config.zne_enabled = pipe_zne;
      if (pipe->count("--zne-factors")) config.zne_factors = parse_factors(pipe_zne_factors);
      if (pipe->count("--zne-shots")) config.zne_shots = pipe_zne_shots;
      if (pipe->count("--starts")) config.starts = pipe_starts;

      const int threads = pipe_threads > 0
                              ? pipe_threads
                              : static_cast<int>(std::thread::hardware_concurrency());
      try {
        run_pipeline(config, std::max(threads, 1), std::cout);
      } catch (const StageError& e) {
        std::cerr << "pipeline stage '" << e.stage << "' failed: " << e.what() << "\n";
        return 1;
      }
      std::ifstream table(std::filesystem::path(config.out_dir) / "table.txt");
      if (table) std::cout << table.rdbuf();
      return 0;
    }
  } catch (const CLI::Error& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
