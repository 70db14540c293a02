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

// Experiment harness: JSON configs, presets, parameter sweeps and the CSV/SVG
// writers behind the command-line tool.

#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "lindqite/ansatz.hpp"
#include "lindqite/lindblad.hpp"
#include "lindqite/qite.hpp"
#include "lindqite/trajectory.hpp"

namespace lindqite::experiments {

using nlohmann::json;

inline constexpr std::uint64_t kDefaultNoisyShots = 8192;
inline constexpr const char* kOutputDirEnv = "LINDQITE_OUTPUT_DIR";
/// Seed of the 16-string random basis the TFIM preset uses for Algorithm I.
inline constexpr std::uint64_t kTfimBasisSeed = 164;
/// Tikhonov shift for the branch-rotation solve. Nearly equal branch weights
/// make that system close to singular.
inline constexpr double kAnsatzReg = 1e-3;

enum class Algorithm { kOracle, kAlgo1, kAlgo2 };
std::string to_string(Algorithm a);
Algorithm parse_algorithm(const std::string& name);

struct ModelSpec {
  std::string type = "tls";  // tls | tfim | custom
  double delta = 1.0;
  double omega = 1.0;
  double gamma = 1.0;
  int sites = 2;
  double coupling = 1.0;
  double field = 1.0;
  int custom_qubits = 0;
  PauliSum hamiltonian;          // custom only
  std::vector<PauliSum> jumps;   // custom only
};

struct BasisSpec {
  std::string kind = "full";  // full | random | explicit
  int count = 0;
  std::uint64_t seed = 0;
  std::vector<std::string> strings;
};

struct ObservableSpec {
  std::string name;
  std::string op;
};

struct ExperimentConfig {
  ModelSpec model;
  Algorithm algorithm = Algorithm::kOracle;
  double tau = 0.05;
  int n_steps = 0;
  BasisSpec basis;
  double reg = 0.0;
  std::uint64_t shots = 0;
  std::vector<std::uint64_t> seeds{0};
  std::vector<ObservableSpec> observables;
  std::vector<std::pair<std::string, double>> initial;  // bit-string weights of a diagonal start
  std::vector<std::string> index_set;                   // empty means every bit-string
  double prune = 0.0;
  ansatz::DissipatorOrder order = ansatz::DissipatorOrder::kCombined;
  int trotter_substeps = 1;
  std::string output;
  std::string svg;
};

/// Validates the schema; throws ConfigError with the offending key.
ExperimentConfig parse_config(const json& j);
/// Accepts a JSON config or a CSV produced by this tool (its echoed config).
ExperimentConfig load_config(const std::string& path);
/// Fully resolved form; parse_config(to_json(c)) reproduces c.
json to_json(const ExperimentConfig& c);

LindbladModel build_model(const ModelSpec& spec);
int model_qubits(const ModelSpec& spec);
DensityMatrix initial_density(const ExperimentConfig& c);
std::vector<NamedObservable> build_observables(const ExperimentConfig& c);
PauliBasis build_basis(const BasisSpec& spec, int n_qubits);

/// One trajectory for one seed; throws StepSizeError on numerical failure.
Trajectory run_single(const ExperimentConfig& c, std::uint64_t seed);
std::vector<Trajectory> run_all(const ExperimentConfig& c);

/// Rows for every seed, followed by "mean" and "std" rows when there are
/// several seeds.
std::string format_csv(const ExperimentConfig& c, const std::vector<Trajectory>& runs, bool with_timestamp = true);

ExperimentConfig tls_preset(Algorithm a);
ExperimentConfig tfim_preset(Algorithm a);

/// Largest |a_k - b_k| over two equally sampled series.
double max_abs_deviation(const std::vector<double>& a, const std::vector<double>& b);

struct SweepOptions {
  double tau = 0.05;
  double t_final = 10.0;
  double gamma = 0.1;
  double reg = 0.01;  // Algorithm I
  double ansatz_reg = kAnsatzReg;
  int threads = 0;  // 0 = hardware concurrency
};

struct PauliSweepRow {
  int count = 0;
  std::uint64_t seed = 0;
  double deviation = 0.0;
  std::string status = "ok";
};
/// Algorithm I on the TFIM preset with random bases of each count. Bases for
/// one seed are nested: the count-k basis is the first k draws.
std::vector<PauliSweepRow> sweep_paulis(const std::vector<int>& counts, const std::vector<std::uint64_t>& seeds,
                                        const SweepOptions& opt);
std::string format_pauli_sweep(const std::vector<PauliSweepRow>& rows, const SweepOptions& opt);

struct GammaSweepRow {
  double gamma = 0.0;
  std::string algorithm;
  double deviation = 0.0;
  std::string status = "ok";
};
/// Both algorithms on the TFIM preset across dissipation rates; Algorithm I
/// uses a random basis of `count` strings drawn with `basis_seed`.
std::vector<GammaSweepRow> sweep_gamma(const std::vector<double>& gammas, int count, std::uint64_t basis_seed,
                                       const SweepOptions& opt);
std::string format_gamma_sweep(const std::vector<GammaSweepRow>& rows, const SweepOptions& opt, int count,
                               std::uint64_t basis_seed);

/// Line chart of every (observable, algorithm, seed) series in a trajectory
/// CSV. Throws ConfigError when the file holds no data rows.
std::string render_svg(const std::string& csv_text);

/// Joins `path` onto the output directory from the environment unless it is
/// absolute.
std::string resolve_output(const std::string& path);
void write_file(const std::string& path, const std::string& text);
std::string read_file(const std::string& path);

}  // namespace lindqite::experiments
