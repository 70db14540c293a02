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

#include "lindqite/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <thread>

#include "lindqite/errors.hpp"
#include "lindqite/oracle.hpp"
#include "lindqite/vectorized.hpp"

namespace lindqite::experiments {
namespace {

// Largest register for which a full Pauli basis is accepted.
constexpr int kMaxFullBasisQubits = 5;

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

template <class T>
T field(const json& obj, const char* key, T fallback) {
  const auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return fallback;
  try {
    return it->get<T>();
  } catch (const json::exception&) {
    throw ConfigError(std::string("config key '") + key + "' has the wrong type");
  }
}

void reject_unknown(const json& obj, std::initializer_list<const char*> allowed, const std::string& where) {
  for (const auto& item : obj.items()) {
    const bool known = std::any_of(allowed.begin(), allowed.end(), [&](const char* k) { return item.key() == k; });
    if (!known) throw ConfigError("unknown key '" + item.key() + "' in " + where);
  }
}

cplx parse_coeff(const json& c) {
  if (c.is_number()) return {c.get<double>(), 0.0};
  if (c.is_array() && c.size() == 2 && c[0].is_number() && c[1].is_number()) {
    return {c[0].get<double>(), c[1].get<double>()};
  }
  throw ConfigError("a coefficient must be a number or [re, im]");
}

PauliSum parse_terms(const json& terms, int n, const std::string& where) {
  if (!terms.is_array()) throw ConfigError(where + " must be a list of {coeff, string}");
  std::vector<PauliTerm> out;
  for (const auto& t : terms) {
    if (!t.is_object()) throw ConfigError(where + " entries must be objects");
    reject_unknown(t, {"coeff", "string"}, where);
    if (!t.contains("coeff") || !t.contains("string")) throw ConfigError(where + " entries need 'coeff' and 'string'");
    const PauliString s = PauliString::parse(field<std::string>(t, "string", ""));
    if (s.n_qubits() != n) throw ConfigError(where + ": string '" + s.to_string() + "' must have " + std::to_string(n) + " qubits");
    out.push_back({parse_coeff(t.at("coeff")), s});
  }
  return PauliSum(n, std::move(out));
}

json terms_json(const PauliSum& s) {
  json out = json::array();
  for (const auto& t : s.terms()) {
    out.push_back({{"coeff", {t.coeff.real(), t.coeff.imag()}}, {"string", t.string.to_string()}});
  }
  return out;
}

ModelSpec parse_model(const json& j) {
  if (!j.is_object()) throw ConfigError("'model' must be an object");
  reject_unknown(j, {"type", "params", "custom"}, "model");
  ModelSpec m;
  m.type = field<std::string>(j, "type", "");
  const json params = j.contains("params") ? j.at("params") : json::object();
  if (!params.is_object()) throw ConfigError("'model.params' must be an object");
  if (m.type == "tls") {
    reject_unknown(params, {"delta", "omega", "gamma"}, "model.params");
    m.delta = field(params, "delta", 1.0);
    m.omega = field(params, "omega", 1.0);
    m.gamma = field(params, "gamma", 1.0);
  } else if (m.type == "tfim") {
    reject_unknown(params, {"n", "J", "h", "gamma"}, "model.params");
    m.sites = field(params, "n", 2);
    m.coupling = field(params, "J", 1.0);
    m.field = field(params, "h", 1.0);
    m.gamma = field(params, "gamma", 0.1);
  } else if (m.type == "custom") {
    if (!j.contains("custom") || !j.at("custom").is_object()) throw ConfigError("custom model needs a 'custom' object");
    const json& c = j.at("custom");
    reject_unknown(c, {"n", "h_terms", "jumps"}, "model.custom");
    m.custom_qubits = field(c, "n", 0);
    if (m.custom_qubits < 1 || m.custom_qubits > oracle::kMaxOracleQubits) {
      throw ConfigError("custom model needs 1 <= n <= " + std::to_string(oracle::kMaxOracleQubits));
    }
    if (!c.contains("h_terms")) throw ConfigError("custom model needs 'h_terms'");
    m.hamiltonian = parse_terms(c.at("h_terms"), m.custom_qubits, "model.custom.h_terms");
    if (c.contains("jumps")) {
      if (!c.at("jumps").is_array()) throw ConfigError("'model.custom.jumps' must be a list of term lists");
      for (const auto& jump : c.at("jumps")) m.jumps.push_back(parse_terms(jump, m.custom_qubits, "model.custom.jumps"));
    }
  } else {
    throw ConfigError("model type must be tls, tfim or custom");
  }
  if (!(m.gamma >= 0.0)) throw ConfigError("dissipation rate must be non-negative");
  return m;
}

BasisSpec parse_basis(const json& j) {
  BasisSpec b;
  if (j.is_string()) {
    b.kind = j.get<std::string>();
    if (b.kind != "full") throw ConfigError("basis string must be \"full\"");
    return b;
  }
  if (!j.is_object()) throw ConfigError("'basis' must be \"full\" or an object");
  reject_unknown(j, {"type", "count", "seed", "strings"}, "basis");
  b.kind = field<std::string>(j, "type", "full");
  if (b.kind == "random") {
    b.count = field(j, "count", 0);
    b.seed = field<std::uint64_t>(j, "seed", 0);
    if (b.count < 1) throw ConfigError("random basis needs 'count' >= 1");
  } else if (b.kind == "explicit") {
    b.strings = field<std::vector<std::string>>(j, "strings", {});
    if (b.strings.empty()) throw ConfigError("explicit basis needs 'strings'");
  } else if (b.kind != "full") {
    throw ConfigError("basis type must be full, random or explicit");
  }
  return b;
}

std::vector<ObservableSpec> default_observables(const ModelSpec& m) {
  if (m.type == "tls") {
    return {{"excited", "0.5*I - 0.5*Z"}, {"re_rho10", "0.5*X"}, {"im_rho10", "0.5*Y"}};
  }
  if (m.type == "tfim") return {{"avg_Z", average_magnetization(m.sites).to_string()}};
  return {};
}

std::vector<std::pair<std::string, double>> default_initial(const ModelSpec& m) {
  if (m.type == "tls") return {{"1", 1.0}};
  if (m.type == "tfim") return {{std::string(static_cast<std::size_t>(m.sites), '1'), 1.0}};
  return {};
}

// Fixed-size pool: each index runs on exactly one worker; results land in
// caller-owned slots so assembly order never depends on scheduling.
template <class Fn>
void parallel_for(std::size_t count, int threads, Fn fn) {
  unsigned workers = threads > 0 ? static_cast<unsigned>(threads) : std::max(1U, std::thread::hardware_concurrency());
  workers = std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::size_t>(count, 1)));
  std::atomic<std::size_t> next{0};
  auto body = [&] {
    for (std::size_t i = next++; i < count; i = next++) fn(i);
  };
  std::vector<std::thread> pool;
  for (unsigned w = 1; w < workers; ++w) pool.emplace_back(body);
  body();
  for (auto& t : pool) t.join();
}

std::vector<double> oracle_series(const LindbladModel& m, const DensityMatrix& rho0, double tau, int steps,
                                  const PauliSum& o) {
  std::vector<double> out;
  for (const auto& rho : oracle::trajectory(m, rho0, tau, steps)) {
    out.push_back((rho.expectation(o) / rho.trace()).real());
  }
  return out;
}

int steps_for(double t_final, double tau) {
  if (!(tau > 0.0) || !(t_final > 0.0)) throw ConfigError("sweep needs positive tau and final time");
  return static_cast<int>(std::lround(t_final / tau));
}

std::string timestamp() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace

std::string to_string(Algorithm a) {
  switch (a) {
    case Algorithm::kOracle:
      return "oracle";
    case Algorithm::kAlgo1:
      return "algo1";
    case Algorithm::kAlgo2:
      return "algo2";
  }
  return "oracle";
}

Algorithm parse_algorithm(const std::string& name) {
  if (name == "oracle") return Algorithm::kOracle;
  if (name == "algo1") return Algorithm::kAlgo1;
  if (name == "algo2") return Algorithm::kAlgo2;
  throw ConfigError("algorithm must be oracle, algo1 or algo2 (got '" + name + "')");
}

ExperimentConfig parse_config(const json& j) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  reject_unknown(j,
                 {"model", "algorithm", "tau", "n_steps", "basis", "reg", "shots", "seed", "seeds", "observables",
                  "initial", "index_set", "prune", "dissipator_order", "trotter_substeps", "output", "svg"},
                 "config");
  ExperimentConfig c;
  if (!j.contains("model")) throw ConfigError("config needs a 'model'");
  c.model = parse_model(j.at("model"));
  c.algorithm = parse_algorithm(field<std::string>(j, "algorithm", "oracle"));
  c.tau = field(j, "tau", 0.05);
  c.n_steps = field(j, "n_steps", 0);
  if (!(c.tau > 0.0) || !std::isfinite(c.tau)) throw ConfigError("'tau' must be positive");
  if (c.n_steps < 1) throw ConfigError("'n_steps' must be >= 1");
  if (j.contains("basis")) c.basis = parse_basis(j.at("basis"));
  c.reg = field(j, "reg", 0.0);
  if (!(c.reg >= 0.0)) throw ConfigError("'reg' must be non-negative");
  c.shots = field<std::uint64_t>(j, "shots", 0);
  if (j.contains("seed") && j.contains("seeds")) throw ConfigError("give either 'seed' or 'seeds', not both");
  if (j.contains("seeds")) {
    c.seeds = field<std::vector<std::uint64_t>>(j, "seeds", {});
    if (c.seeds.empty()) throw ConfigError("'seeds' must not be empty");
  } else {
    c.seeds = {field<std::uint64_t>(j, "seed", 0)};
  }

  if (j.contains("observables")) {
    const json& obs = j.at("observables");
    if (!obs.is_array()) throw ConfigError("'observables' must be a list of {name, op}");
    for (const auto& o : obs) {
      if (o.is_string()) {
        c.observables.push_back({o.get<std::string>(), o.get<std::string>()});
        continue;
      }
      if (!o.is_object()) throw ConfigError("each observable must be a Pauli-sum string or {name, op}");
      reject_unknown(o, {"name", "op"}, "observable");
      c.observables.push_back({field<std::string>(o, "name", ""), field<std::string>(o, "op", "")});
      if (c.observables.back().name.empty() || c.observables.back().op.empty()) {
        throw ConfigError("each observable needs a non-empty 'name' and 'op'");
      }
    }
  } else {
    c.observables = default_observables(c.model);
  }
  if (c.observables.empty()) throw ConfigError("no observables given");

  if (j.contains("initial")) {
    const json& init = j.at("initial");
    if (init.is_string()) {
      c.initial = {{init.get<std::string>(), 1.0}};
    } else if (init.is_object()) {
      for (const auto& item : init.items()) {
        if (!item.value().is_number()) throw ConfigError("initial weights must be numbers");
        c.initial.emplace_back(item.key(), item.value().get<double>());
      }
    } else {
      throw ConfigError("'initial' must be a bit-string or an object of bit-string weights");
    }
  } else {
    c.initial = default_initial(c.model);
  }
  if (c.initial.empty()) throw ConfigError("no initial state given");

  if (j.contains("index_set")) {
    const json& idx = j.at("index_set");
    if (idx.is_string()) {
      if (idx.get<std::string>() != "all") throw ConfigError("'index_set' must be \"all\" or a list of bit-strings");
    } else {
      c.index_set = field<std::vector<std::string>>(j, "index_set", {});
      if (c.index_set.empty()) throw ConfigError("'index_set' must not be empty");
      const std::size_t width = static_cast<std::size_t>(model_qubits(c.model));
      for (const auto& bits : c.index_set) {
        if (bits.size() != width || bits.find_first_not_of("01") != std::string::npos) {
          throw ConfigError("index_set entry '" + bits + "' is not a " + std::to_string(width) + "-bit string");
        }
      }
    }
  }
  c.prune = field(j, "prune", 0.0);
  if (!(c.prune >= 0.0)) throw ConfigError("'prune' must be non-negative");
  const std::string order = field<std::string>(j, "dissipator_order", "combined");
  if (order == "combined") {
    c.order = ansatz::DissipatorOrder::kCombined;
  } else if (order == "sequential") {
    c.order = ansatz::DissipatorOrder::kSequential;
  } else {
    throw ConfigError("'dissipator_order' must be combined or sequential");
  }
  c.trotter_substeps = field(j, "trotter_substeps", 1);
  if (c.trotter_substeps < 1) throw ConfigError("'trotter_substeps' must be >= 1");
  c.output = field<std::string>(j, "output", "");
  c.svg = field<std::string>(j, "svg", "");

  // Build everything once so invalid operators fail before any computation.
  try {
    const int n = model_qubits(c.model);
    build_model(c.model);
    build_observables(c);
    initial_density(c);
    if (c.algorithm == Algorithm::kAlgo1) build_basis(c.basis, 2 * n);
    if (c.algorithm == Algorithm::kAlgo2) build_basis(c.basis, n);
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError(e.what());
  }
  return c;
}

ExperimentConfig load_config(const std::string& path) {
  const std::string text = read_file(path);
  std::string payload = text;
  // A trajectory CSV carries its resolved config on a "# config=" line.
  if (!text.empty() && text.front() == '#') {
    std::istringstream in(text);
    std::string line;
    payload.clear();
    while (std::getline(in, line)) {
      if (line.rfind("# config=", 0) == 0) {
        payload = line.substr(9);
        break;
      }
    }
    if (payload.empty()) throw ConfigError(path + ": no '# config=' line found");
  }
  json j;
  try {
    j = json::parse(payload);
  } catch (const json::parse_error& e) {
    throw ConfigError(path + ": malformed JSON: " + e.what());
  }
  return parse_config(j);
}

json to_json(const ExperimentConfig& c) {
  json model;
  model["type"] = c.model.type;
  if (c.model.type == "tls") {
    model["params"] = {{"delta", c.model.delta}, {"omega", c.model.omega}, {"gamma", c.model.gamma}};
  } else if (c.model.type == "tfim") {
    model["params"] = {{"n", c.model.sites}, {"J", c.model.coupling}, {"h", c.model.field}, {"gamma", c.model.gamma}};
  } else {
    json jumps = json::array();
    for (const auto& l : c.model.jumps) jumps.push_back(terms_json(l));
    model["custom"] = {{"n", c.model.custom_qubits}, {"h_terms", terms_json(c.model.hamiltonian)}, {"jumps", jumps}};
  }
  json basis;
  basis["type"] = c.basis.kind;
  if (c.basis.kind == "random") {
    basis["count"] = c.basis.count;
    basis["seed"] = c.basis.seed;
  } else if (c.basis.kind == "explicit") {
    basis["strings"] = c.basis.strings;
  }
  json obs = json::array();
  for (const auto& o : c.observables) obs.push_back({{"name", o.name}, {"op", o.op}});
  json init = json::object();
  for (const auto& [bits, w] : c.initial) init[bits] = w;

  json j;
  j["model"] = model;
  j["algorithm"] = to_string(c.algorithm);
  j["tau"] = c.tau;
  j["n_steps"] = c.n_steps;
  j["basis"] = basis;
  j["reg"] = c.reg;
  j["shots"] = c.shots;
  j["seeds"] = c.seeds;
  j["observables"] = obs;
  j["initial"] = init;
  if (c.index_set.empty()) {
    j["index_set"] = "all";
  } else {
    j["index_set"] = c.index_set;
  }
  j["prune"] = c.prune;
  j["dissipator_order"] = c.order == ansatz::DissipatorOrder::kCombined ? "combined" : "sequential";
  j["trotter_substeps"] = c.trotter_substeps;
  if (!c.output.empty()) j["output"] = c.output;
  if (!c.svg.empty()) j["svg"] = c.svg;
  return j;
}

int model_qubits(const ModelSpec& spec) {
  if (spec.type == "tls") return 1;
  if (spec.type == "tfim") return spec.sites;
  return spec.custom_qubits;
}

LindbladModel build_model(const ModelSpec& spec) {
  if (spec.type == "tls") return tls_model(spec.delta, spec.omega, spec.gamma);
  if (spec.type == "tfim") return tfim_model(spec.sites, spec.coupling, spec.field, spec.gamma);
  if (spec.hamiltonian.n_qubits() != spec.custom_qubits) throw ConfigError("custom model has no Hamiltonian terms");
  if (!spec.hamiltonian.is_hermitian()) throw ConfigError("custom Hamiltonian is not Hermitian");
  return LindbladModel(spec.hamiltonian, spec.jumps);
}

DensityMatrix initial_density(const ExperimentConfig& c) {
  const int n = model_qubits(c.model);
  std::vector<std::pair<std::uint64_t, double>> weights;
  std::set<std::uint64_t> seen;
  double total = 0.0;
  for (const auto& [bits, w] : c.initial) {
    if (bits.size() != static_cast<std::size_t>(n)) {
      throw ConfigError("initial bit-string '" + bits + "' must have " + std::to_string(n) + " bits");
    }
    const std::uint64_t idx = ansatz::parse_bits(bits);
    if (!seen.insert(idx).second) throw ConfigError("duplicate initial bit-string '" + bits + "'");
    if (!(w >= 0.0)) throw ConfigError("initial weights must be non-negative");
    weights.emplace_back(idx, w);
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-8) throw ConfigError("initial weights must sum to 1");
  return DensityMatrix::diagonal(n, weights);
}

std::vector<NamedObservable> build_observables(const ExperimentConfig& c) {
  const int n = model_qubits(c.model);
  std::vector<NamedObservable> out;
  std::set<std::string> names;
  for (const auto& o : c.observables) {
    if (!names.insert(o.name).second) throw ConfigError("duplicate observable name '" + o.name + "'");
    if (o.name.find_first_of(",\n\"") != std::string::npos) {
      throw ConfigError("observable name '" + o.name + "' contains a comma, quote or newline");
    }
    PauliSum op = PauliSum::parse(o.op);
    if (op.n_qubits() != n) throw ConfigError("observable '" + o.name + "' does not act on " + std::to_string(n) + " qubits");
    if (!op.is_hermitian()) throw ConfigError("observable '" + o.name + "' is not Hermitian");
    out.push_back({o.name, std::move(op)});
  }
  return out;
}

PauliBasis build_basis(const BasisSpec& spec, int n_qubits) {
  if (spec.kind == "random") return PauliBasis::random(n_qubits, spec.count, spec.seed);
  if (spec.kind == "explicit") {
    std::vector<PauliString> strings;
    for (const auto& s : spec.strings) {
      strings.push_back(PauliString::parse(s));
      if (strings.back().n_qubits() != n_qubits) {
        throw ConfigError("basis string '" + s + "' must act on " + std::to_string(n_qubits) + " qubits");
      }
      if (strings.back().is_identity()) throw ConfigError("basis must not contain the identity string");
    }
    return PauliBasis::explicit_strings(std::move(strings));
  }
  if (n_qubits > kMaxFullBasisQubits) {
    throw ConfigError("a full basis on " + std::to_string(n_qubits) + " qubits is too large; use a random basis");
  }
  return PauliBasis::full(n_qubits);
}

Trajectory run_single(const ExperimentConfig& c, std::uint64_t seed) {
  const LindbladModel m = build_model(c.model);
  const int n = m.n_qubits();
  const DensityMatrix rho0 = initial_density(c);
  const std::vector<NamedObservable> obs = build_observables(c);
  const ShotModel shot = c.shots == 0 ? ShotModel::exact() : ShotModel(c.shots, seed);

  if (c.algorithm == Algorithm::kAlgo1) {
    vectorized::Config cfg;
    cfg.tau = c.tau;
    cfg.n_steps = c.n_steps;
    cfg.basis = build_basis(c.basis, 2 * n);
    cfg.reg = c.reg;
    cfg.shot = shot;
    cfg.trotter_substeps = c.trotter_substeps;
    Trajectory t = vectorized::run(m, rho0, cfg, obs);
    t.seed = seed;
    return t;
  }
  if (c.algorithm == Algorithm::kAlgo2) {
    std::vector<std::pair<std::string, double>> weights;
    std::map<std::string, double> given(c.initial.begin(), c.initial.end());
    if (c.index_set.empty()) {
      for (std::uint64_t x = 0; x < (std::uint64_t{1} << n); ++x) {
        const std::string bits = ansatz::format_bits(x, n);
        const auto it = given.find(bits);
        weights.emplace_back(bits, it == given.end() ? 0.0 : it->second);
      }
    } else {
      for (const auto& bits : c.index_set) {
        const auto it = given.find(bits);
        weights.emplace_back(bits, it == given.end() ? 0.0 : it->second);
        if (it != given.end()) given.erase(it);
      }
      for (const auto& [bits, w] : given) {
        if (w > 0.0) throw ConfigError("initial bit-string '" + bits + "' is not in the index set");
      }
    }
    ansatz::Config cfg;
    cfg.tau = c.tau;
    cfg.n_steps = c.n_steps;
    cfg.basis = build_basis(c.basis, n);
    cfg.reg = c.reg;
    cfg.shot = shot;
    cfg.prune_threshold = c.prune;
    cfg.order = c.order;
    Trajectory t = ansatz::run(m, ansatz::init_ansatz(weights, n), cfg, obs);
    t.seed = seed;
    return t;
  }

  const auto start = std::chrono::steady_clock::now();
  Trajectory t;
  t.algorithm = "oracle";
  t.seed = seed;
  for (const auto& o : obs) t.observables.push_back(o.name);
  const auto states = oracle::trajectory(m, rho0, c.tau, c.n_steps);
  for (std::size_t k = 0; k < states.size(); ++k) {
    const auto& rho = states[k];
    const cplx tr = rho.trace();
    TrajectoryRecord r;
    r.t = static_cast<double>(k) * c.tau;
    for (const auto& o : obs) r.values.push_back((rho.expectation(o.op) / tr).real());
    r.raw_norm = tr.real();
    r.purity = rho.purity() / std::norm(tr);
    t.records.push_back(std::move(r));
  }
  t.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return t;
}

std::vector<Trajectory> run_all(const ExperimentConfig& c) {
  std::vector<Trajectory> runs;
  for (std::uint64_t seed : c.seeds) runs.push_back(run_single(c, seed));
  return runs;
}

std::string format_csv(const ExperimentConfig& c, const std::vector<Trajectory>& runs, bool with_timestamp) {
  if (runs.empty()) throw ContractError("format_csv: no trajectories");
  std::ostringstream out;
  out << "# tool=lindqite\n";
  out << "# algorithm=" << to_string(c.algorithm) << '\n';
  out << "# model=" << c.model.type << '\n';
  out << "# tau=" << fmt(c.tau) << '\n';
  out << "# n_steps=" << c.n_steps << '\n';
  out << "# shots=" << c.shots << '\n';
  if (c.algorithm != Algorithm::kOracle) {
    const int n = model_qubits(c.model);
    out << "# basis=" << build_basis(c.basis, c.algorithm == Algorithm::kAlgo1 ? 2 * n : n).describe() << '\n';
  }
  out << "# config=" << to_json(c).dump() << '\n';
  if (with_timestamp) out << "# generated=" << timestamp() << '\n';
  out << "t,observable,value,raw_norm,purity,dropped_mass,algorithm,seed\n";

  auto row = [&](double t, const std::string& name, double value, const TrajectoryRecord& r, const std::string& algo,
                 const std::string& seed) {
    out << fmt(t) << ',' << name << ',' << fmt(value) << ',' << fmt(r.raw_norm) << ',' << fmt(r.purity) << ','
        << fmt(r.dropped_mass) << ',' << algo << ',' << seed << '\n';
  };
  for (const auto& traj : runs) {
    for (const auto& r : traj.records) {
      for (std::size_t o = 0; o < traj.observables.size(); ++o) {
        row(r.t, traj.observables[o], r.values[o], r, traj.algorithm, std::to_string(traj.seed));
      }
    }
  }
  if (runs.size() > 1) {
    const Trajectory& first = runs.front();
    const double count = static_cast<double>(runs.size());
    for (const char* label : {"mean", "std"}) {
      const bool is_mean = std::string(label) == "mean";
      for (std::size_t k = 0; k < first.records.size(); ++k) {
        for (std::size_t o = 0; o < first.observables.size(); ++o) {
          TrajectoryRecord agg;
          agg.raw_norm = 0.0;
          agg.purity = 0.0;
          double mean = 0.0;
          for (const auto& t : runs) {
            mean += t.records[k].values[o] / count;
            agg.raw_norm += t.records[k].raw_norm / count;
            agg.purity += t.records[k].purity / count;
            agg.dropped_mass += t.records[k].dropped_mass / count;
          }
          double var = 0.0;
          for (const auto& t : runs) var += std::pow(t.records[k].values[o] - mean, 2) / (count - 1.0);
          row(first.records[k].t, first.observables[o], is_mean ? mean : std::sqrt(var), agg, first.algorithm, label);
        }
      }
    }
  }
  return out.str();
}

ExperimentConfig tls_preset(Algorithm a) {
  ExperimentConfig c;
  c.model.type = "tls";
  c.model.delta = c.model.omega = c.model.gamma = 1.0;
  c.algorithm = a;
  c.tau = 0.05;
  c.n_steps = 120;  // gamma t in [0, 6]
  c.reg = a == Algorithm::kAlgo1 ? 1e-6 : a == Algorithm::kAlgo2 ? kAnsatzReg : 0.0;
  c.observables = default_observables(c.model);
  c.initial = default_initial(c.model);
  return c;
}

ExperimentConfig tfim_preset(Algorithm a) {
  ExperimentConfig c;
  c.model.type = "tfim";
  c.model.sites = 2;
  c.model.coupling = c.model.field = 1.0;
  c.model.gamma = 0.1;
  c.algorithm = a;
  c.tau = 0.05;
  c.n_steps = 200;  // t in [0, 10]
  c.reg = a == Algorithm::kAlgo1 ? 0.01 : a == Algorithm::kAlgo2 ? kAnsatzReg : 0.0;
  if (a == Algorithm::kAlgo1) {
    c.basis.kind = "random";
    c.basis.count = 16;
    c.basis.seed = kTfimBasisSeed;
  }
  c.observables = default_observables(c.model);
  c.initial = default_initial(c.model);
  return c;
}

double max_abs_deviation(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) throw ContractError("max_abs_deviation: series lengths differ");
  double worst = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) worst = std::max(worst, std::abs(a[k] - b[k]));
  return worst;
}

std::vector<PauliSweepRow> sweep_paulis(const std::vector<int>& counts, const std::vector<std::uint64_t>& seeds,
                                        const SweepOptions& opt) {
  if (counts.empty() || seeds.empty()) throw ConfigError("sweep needs at least one count and one seed");
  const int steps = steps_for(opt.t_final, opt.tau);
  const LindbladModel m = tfim_model(2, 1.0, 1.0, opt.gamma);
  const DensityMatrix rho0 = DensityMatrix::pure(StateVector::basis("11"));
  const std::vector<NamedObservable> obs{{"avg_Z", average_magnetization(2)}};
  const std::vector<double> exact = oracle_series(m, rho0, opt.tau, steps, obs[0].op);

  std::vector<PauliSweepRow> rows;
  for (int count : counts) {
    for (std::uint64_t seed : seeds) rows.push_back({count, seed, 0.0, "ok"});
  }
  parallel_for(rows.size(), opt.threads, [&](std::size_t i) {
    PauliSweepRow& r = rows[i];
    try {
      vectorized::Config cfg;
      cfg.tau = opt.tau;
      cfg.n_steps = steps;
      cfg.basis = PauliBasis::random(4, r.count, r.seed);
      cfg.reg = opt.reg;
      r.deviation = max_abs_deviation(vectorized::run(m, rho0, cfg, obs).series("avg_Z"), exact);
    } catch (const StepSizeError&) {
      r.deviation = std::nan("");
      r.status = "step_failure";
    }
  });
  return rows;
}

std::string format_pauli_sweep(const std::vector<PauliSweepRow>& rows, const SweepOptions& opt) {
  std::ostringstream out;
  out << "# sweep=paulis\n# model=tfim\n# gamma=" << fmt(opt.gamma) << "\n# tau=" << fmt(opt.tau)
      << "\n# t_final=" << fmt(opt.t_final) << "\n# reg=" << fmt(opt.reg) << '\n';
  out << "count,seed,deviation,status\n";
  for (const auto& r : rows) out << r.count << ',' << r.seed << ',' << fmt(r.deviation) << ',' << r.status << '\n';
  return out.str();
}

std::vector<GammaSweepRow> sweep_gamma(const std::vector<double>& gammas, int count, std::uint64_t basis_seed,
                                       const SweepOptions& opt) {
  if (gammas.empty()) throw ConfigError("sweep needs at least one dissipation rate");
  for (double g : gammas) {
    if (!(g >= 0.0)) throw ConfigError("dissipation rates must be non-negative");
  }
  const int steps = steps_for(opt.t_final, opt.tau);
  const DensityMatrix rho0 = DensityMatrix::pure(StateVector::basis("11"));
  const std::vector<NamedObservable> obs{{"avg_Z", average_magnetization(2)}};

  std::vector<GammaSweepRow> rows;
  for (double g : gammas) {
    rows.push_back({g, "algo1", 0.0, "ok"});
    rows.push_back({g, "algo2", 0.0, "ok"});
  }
  std::vector<std::vector<double>> exact(gammas.size());
  parallel_for(gammas.size(), opt.threads, [&](std::size_t i) {
    exact[i] = oracle_series(tfim_model(2, 1.0, 1.0, gammas[i]), rho0, opt.tau, steps, obs[0].op);
  });
  parallel_for(rows.size(), opt.threads, [&](std::size_t i) {
    GammaSweepRow& r = rows[i];
    const LindbladModel m = tfim_model(2, 1.0, 1.0, r.gamma);
    try {
      std::vector<double> series;
      if (r.algorithm == "algo1") {
        vectorized::Config cfg;
        cfg.tau = opt.tau;
        cfg.n_steps = steps;
        cfg.basis = PauliBasis::random(4, count, basis_seed);
        cfg.reg = opt.reg;
        series = vectorized::run(m, rho0, cfg, obs).series("avg_Z");
      } else {
        ansatz::Config cfg;
        cfg.tau = opt.tau;
        cfg.n_steps = steps;
        cfg.basis = PauliBasis::full(2);
        cfg.reg = opt.ansatz_reg;
        series = ansatz::run(m, ansatz::init_all(2, 3), cfg, obs).series("avg_Z");
      }
      r.deviation = max_abs_deviation(series, exact[i / 2]);
    } catch (const StepSizeError&) {
      r.deviation = std::nan("");
      r.status = "step_failure";
    }
  });
  return rows;
}

std::string format_gamma_sweep(const std::vector<GammaSweepRow>& rows, const SweepOptions& opt, int count,
                               std::uint64_t basis_seed) {
  std::ostringstream out;
  out << "# sweep=gamma\n# model=tfim\n# tau=" << fmt(opt.tau) << "\n# t_final=" << fmt(opt.t_final)
      << "\n# algo1_reg=" << fmt(opt.reg) << "\n# algo2_reg=" << fmt(opt.ansatz_reg) << "\n# algo1_basis=random(count=" << count << ",seed=" << basis_seed
      << ")\n# algo2_basis=full(n=2)\n";
  out << "gamma,algorithm,deviation,status\n";
  for (const auto& r : rows) out << fmt(r.gamma) << ',' << r.algorithm << ',' << fmt(r.deviation) << ',' << r.status << '\n';
  return out.str();
}

std::string resolve_output(const std::string& path) {
  if (path.empty()) throw ConfigError("no output path given");
  const std::filesystem::path p(path);
  if (p.is_absolute()) return path;
  const char* dir = std::getenv(kOutputDirEnv);
  if (dir == nullptr || *dir == '\0') return path;
  return (std::filesystem::path(dir) / p).string();
}

void write_file(const std::string& path, const std::string& text) {
  const std::filesystem::path p(path);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream out(p, std::ios::binary);
  if (!out) throw ConfigError("cannot open '" + path + "' for writing");
  out << text;
  if (!out) throw ConfigError("failed writing '" + path + "'");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace lindqite::experiments
