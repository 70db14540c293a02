// Copyright 2026 The lindqite Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// lindqite command-line tool. Exit codes: 0 success, 2 configuration error,
// 3 numerical failure.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "lindqite/errors.hpp"
#include "lindqite/experiments.hpp"

namespace ex = lindqite::experiments;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

void emit(const ex::ExperimentConfig& c, const std::string& out_path, const std::string& svg_path) {
  const auto runs = ex::run_all(c);
  const std::string csv = ex::format_csv(c, runs);
  const std::string path = ex::resolve_output(out_path);
  ex::write_file(path, csv);
  double wall = 0.0;
  for (const auto& r : runs) wall += r.wall_seconds;
  std::printf("wrote %s (%s, %zu run(s), %.2f s)\n", path.c_str(), ex::to_string(c.algorithm).c_str(), runs.size(),
              wall);
  if (!svg_path.empty()) {
    const std::string svg = ex::resolve_output(svg_path);
    ex::write_file(svg, ex::render_svg(csv));
    std::printf("wrote %s\n", svg.c_str());
  }
}

std::string default_name(const ex::ExperimentConfig& c) {
  return c.model.type + "_" + ex::to_string(c.algorithm) + ".csv";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lindblad dynamics through imaginary-time evolution"};
  app.require_subcommand(1);

  std::string config_path;
  std::string run_out;
  std::string run_svg;
  auto* run = app.add_subcommand("run", "Run an experiment described by a JSON config");
  run->add_option("config", config_path, "JSON config, or a CSV written by this tool")->required();
  run->add_option("--out", run_out, "CSV path (overrides the config)");
  run->add_option("--svg", run_svg, "Also render an SVG chart");

  std::string preset_model;
  std::string preset_algo = "oracle";
  double preset_tau = 0.0;
  int preset_steps = 0;
  long long preset_shots = -1;
  std::vector<std::uint64_t> preset_seeds;
  bool preset_noisy = false;
  std::string preset_out;
  std::string preset_svg;
  auto* preset = app.add_subcommand("preset", "Run the built-in two-level or Ising preset");
  preset->add_option("model", preset_model, "tls or tfim")->required()->check(CLI::IsMember({"tls", "tfim"}));
  preset->add_option("--algo", preset_algo, "oracle, algo1 or algo2")->check(CLI::IsMember({"oracle", "algo1", "algo2"}));
  preset->add_option("--tau", preset_tau, "Time step");
  preset->add_option("--steps", preset_steps, "Number of steps");
  preset->add_option("--shots", preset_shots, "Shots per Pauli estimate (0 = exact)");
  preset->add_flag("--noisy", preset_noisy, "Use the default shot count");
  preset->add_option("--seed", preset_seeds, "Sampling seed; repeat for replicated runs");
  preset->add_option("--out", preset_out, "CSV path");
  preset->add_option("--svg", preset_svg, "Also render an SVG chart");

  std::vector<int> sp_counts{16, 24, 32, 48};
  std::vector<std::uint64_t> sp_seeds{ex::kTfimBasisSeed};
  ex::SweepOptions sp_opt;
  std::string sp_out = "sweep_paulis.csv";
  auto* sweep_p = app.add_subcommand("sweep-paulis", "Algorithm I accuracy against the random basis size");
  sweep_p->add_option("--counts", sp_counts, "Basis sizes")->delimiter(',');
  sweep_p->add_option("--seeds", sp_seeds, "Basis seeds")->delimiter(',');
  sweep_p->add_option("--tau", sp_opt.tau, "Time step");
  sweep_p->add_option("--t-final", sp_opt.t_final, "Final time");
  sweep_p->add_option("--gamma", sp_opt.gamma, "Dissipation rate");
  sweep_p->add_option("--reg", sp_opt.reg, "Regularizer");
  sweep_p->add_option("--threads", sp_opt.threads, "Worker threads (0 = all cores)");
  sweep_p->add_option("--out", sp_out, "CSV path");

  std::vector<double> sg_gammas{0.0, 0.25, 0.5, 0.75, 1.0};
  int sg_count = 16;
  std::uint64_t sg_seed = ex::kTfimBasisSeed;
  ex::SweepOptions sg_opt;
  sg_opt.tau = 0.02;
  std::string sg_out = "sweep_gamma.csv";
  auto* sweep_g = app.add_subcommand("sweep-gamma", "Both algorithms across dissipation rates");
  sweep_g->add_option("--gammas", sg_gammas, "Dissipation rates")->delimiter(',');
  sweep_g->add_option("--count", sg_count, "Algorithm I basis size");
  sweep_g->add_option("--basis-seed", sg_seed, "Algorithm I basis seed");
  sweep_g->add_option("--tau", sg_opt.tau, "Time step");
  sweep_g->add_option("--t-final", sg_opt.t_final, "Final time");
  sweep_g->add_option("--reg", sg_opt.reg, "Algorithm I regularizer");
  sweep_g->add_option("--threads", sg_opt.threads, "Worker threads (0 = all cores)");
  sweep_g->add_option("--out", sg_out, "CSV path");

  std::string plot_csv;
  std::string plot_out;
  auto* plot = app.add_subcommand("plot", "Render a trajectory CSV as an SVG line chart");
  plot->add_option("csv", plot_csv, "Trajectory CSV")->required();
  plot->add_option("--out", plot_out, "SVG path (default: alongside the CSV)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (*run) {
      const ex::ExperimentConfig c = ex::load_config(config_path);
      std::string out = run_out.empty() ? c.output : run_out;
      if (out.empty()) out = default_name(c);
      emit(c, out, run_svg.empty() ? c.svg : run_svg);
    } else if (*preset) {
      const auto algo = ex::parse_algorithm(preset_algo);
      ex::ExperimentConfig c = preset_model == "tls" ? ex::tls_preset(algo) : ex::tfim_preset(algo);
      if (preset_tau > 0.0) c.tau = preset_tau;
      if (preset_steps > 0) c.n_steps = preset_steps;
      if (preset_noisy) c.shots = ex::kDefaultNoisyShots;
      if (preset_shots >= 0) c.shots = static_cast<std::uint64_t>(preset_shots);
      if (!preset_seeds.empty()) c.seeds = preset_seeds;
      ex::parse_config(ex::to_json(c));  // same validation as a config file
      emit(c, preset_out.empty() ? default_name(c) : preset_out, preset_svg);
    } else if (*sweep_p) {
      const auto rows = ex::sweep_paulis(sp_counts, sp_seeds, sp_opt);
      const std::string path = ex::resolve_output(sp_out);
      ex::write_file(path, ex::format_pauli_sweep(rows, sp_opt));
      std::printf("wrote %s (%zu rows)\n", path.c_str(), rows.size());
    } else if (*sweep_g) {
      const auto rows = ex::sweep_gamma(sg_gammas, sg_count, sg_seed, sg_opt);
      const std::string path = ex::resolve_output(sg_out);
      ex::write_file(path, ex::format_gamma_sweep(rows, sg_opt, sg_count, sg_seed));
      std::printf("wrote %s (%zu rows)\n", path.c_str(), rows.size());
    } else if (*plot) {
      const std::string svg = ex::render_svg(ex::read_file(plot_csv));
      std::string out = plot_out.empty() ? std::filesystem::path(plot_csv).replace_extension(".svg").string()
                                         : ex::resolve_output(plot_out);
      ex::write_file(out, svg);
      std::printf("wrote %s\n", out.c_str());
    }
  } catch (const lindqite::ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kExitConfig;
  } catch (const lindqite::SizeError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kExitConfig;
  } catch (const lindqite::StepSizeError& e) {
    std::fprintf(stderr, "numerical failure: %s\n", e.what());
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return kExitOk;
}
