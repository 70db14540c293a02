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

#include "lindqite/ansatz.hpp"

#include <chrono>
#include <cmath>
#include <set>

#include "lindqite/errors.hpp"

namespace lindqite::ansatz {
namespace {

void require_matching(const AnsatzState& s, const PauliSum& op, const char* what) {
  if (!op.empty() && op.n_qubits() != s.n_qubits) throw SizeError(std::string(what) + ": operator register mismatch");
}

void require_basis(const AnsatzState& s, const PauliBasis& basis) {
  if (basis.size() == 0) throw ConfigError("ansatz basis is empty");
  if (basis.n_qubits() != s.n_qubits) throw SizeError("ansatz basis must act on the physical register");
}

PauliSum single(const PauliString& sigma) { return PauliSum(1.0, sigma); }

}  // namespace

std::uint64_t parse_bits(std::string_view bits) {
  if (bits.empty() || bits.size() > static_cast<std::size_t>(kMaxStateQubits)) {
    throw ConfigError("bit-string '" + std::string(bits) + "' has invalid length");
  }
  std::uint64_t index = 0;
  for (char c : bits) {
    if (c != '0' && c != '1') throw ConfigError("bit-string '" + std::string(bits) + "' contains non-binary characters");
    index = (index << 1) | static_cast<std::uint64_t>(c - '0');
  }
  return index;
}

std::string format_bits(std::uint64_t index, int n_qubits) {
  std::string out(static_cast<std::size_t>(n_qubits), '0');
  for (int q = 0; q < n_qubits; ++q) {
    if ((index >> q) & 1U) out[static_cast<std::size_t>(n_qubits - 1 - q)] = '1';
  }
  return out;
}

std::string AnsatzState::label(std::size_t j) const { return format_bits(index_set.at(j), n_qubits); }

AnsatzState init_ansatz(std::span<const std::pair<std::string, double>> weights, int n_qubits) {
  if (n_qubits < 1 || n_qubits > kMaxStateQubits) throw SizeError("init_ansatz: qubit count out of range");
  if (weights.empty()) throw ConfigError("init_ansatz: empty index set");
  AnsatzState s;
  s.n_qubits = n_qubits;
  std::set<std::uint64_t> seen;
  double total = 0.0;
  for (const auto& [bits, w] : weights) {
    if (bits.size() != static_cast<std::size_t>(n_qubits)) {
      throw ConfigError("init_ansatz: bit-string '" + bits + "' does not have " + std::to_string(n_qubits) + " bits");
    }
    const std::uint64_t idx = parse_bits(bits);
    if (!seen.insert(idx).second) throw ConfigError("init_ansatz: duplicate bit-string '" + bits + "'");
    if (!(w >= 0.0) || !std::isfinite(w)) throw ConfigError("init_ansatz: weight of '" + bits + "' must be >= 0");
    total += w;
    s.index_set.push_back(idx);
    s.p.push_back(w);
    s.phi.push_back(StateVector::basis(n_qubits, idx));
  }
  if (std::abs(total - 1.0) > 1e-8) throw ConfigError("init_ansatz: weights must sum to 1");
  return s;
}

AnsatzState init_all(int n_qubits, std::uint64_t occupied) {
  if (n_qubits < 1 || n_qubits > 16) throw SizeError("init_all: qubit count out of range");
  const std::uint64_t dim = std::uint64_t{1} << n_qubits;
  if (occupied >= dim) throw ConfigError("init_all: occupied bit-string out of range");
  std::vector<std::pair<std::string, double>> w;
  for (std::uint64_t x = 0; x < dim; ++x) w.emplace_back(format_bits(x, n_qubits), x == occupied ? 1.0 : 0.0);
  return init_ansatz(w, n_qubits);
}

AnsatzState unitary_step(const AnsatzState& s, const PauliSum& h, double tau) {
  require_matching(s, h, "unitary_step");
  if (!h.is_hermitian()) throw ContractError("unitary_step: Hamiltonian must be Hermitian");
  AnsatzState out = s;
  for (auto& phi : out.phi) {
    for (const auto& t : h.terms()) {
      if (!t.string.is_identity()) pauli_rotation_inplace(phi, t.string, t.coeff.real() * tau);
    }
  }
  return out;
}

cplx ElementCache::operator()(const PauliString& sigma, std::size_t x, std::size_t y) {
  if (sigma.is_identity()) return x == y ? cplx(1.0) : cplx(0.0);
  // Hermitian strings give <y|s|x> = conj <x|s|y>, so only x <= y is stored.
  const bool swap = x > y;
  Key key{sigma, swap ? y : x, swap ? x : y};
  auto it = cache_.find(key);
  if (it == cache_.end()) {
    ++evaluations_;
    const cplx v = matrix_element(state_.phi[key.x], state_.phi[key.y], single(sigma), shot_);
    it = cache_.emplace(std::move(key), key.x == key.y ? cplx(v.real()) : v).first;
  }
  return swap ? std::conj(it->second) : it->second;
}

cplx ElementCache::operator()(const PauliSum& op, std::size_t x, std::size_t y) {
  cplx acc{0.0, 0.0};
  for (const auto& t : op.terms()) acc += t.coeff * (*this)(t.string, x, y);
  return acc;
}

Eigen::MatrixXd assemble_s(const AnsatzState& s, const PauliBasis& basis, ElementCache& e) {
  require_basis(s, basis);
  const auto& strings = basis.strings();
  const auto m = static_cast<Eigen::Index>(strings.size());
  const std::size_t nb = s.size();
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(m, m);
  for (Eigen::Index j = 0; j < m; ++j) {
    for (Eigen::Index k = j; k < m; ++k) {
      const auto& sj = strings[static_cast<std::size_t>(j)];
      const auto& sk = strings[static_cast<std::size_t>(k)];
      auto [phase, r] = multiply(sj, sk);
      double acc = 0.0;
      // Anticommuting strings have a vanishing anticommutator.
      if (phase.real() != 0.0) {
        for (std::size_t x = 0; x < nb; ++x) {
          if (s.p[x] != 0.0) acc += 2.0 * s.p[x] * s.p[x] * phase.real() * e(r, x, x).real();
        }
      }
      for (std::size_t x = 0; x < nb; ++x) {
        for (std::size_t y = 0; y < nb; ++y) {
          const double w = s.p[x] * s.p[y];
          if (w != 0.0) acc -= 2.0 * w * (e(sj, x, y) * e(sk, y, x)).real();
        }
      }
      out(j, k) = acc;
      out(k, j) = acc;
    }
  }
  return out;
}

Update assemble_v(const AnsatzState& s, const PauliSum& l, double tau, const PauliBasis& basis, ElementCache& e) {
  require_matching(s, l, "assemble_v");
  const PauliSum m = adjoint(l) * l;
  const std::size_t nb = s.size();
  Update u;
  u.q = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(nb));
  for (std::size_t x = 0; x < nb; ++x) {
    if (s.p[x] != 0.0) u.q[static_cast<Eigen::Index>(x)] = -tau * s.p[x] * e(m, x, x).real();
  }
  u.s = assemble_s(s, basis, e);
  const auto& strings = basis.strings();
  u.b = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(strings.size()));
  for (std::size_t j = 0; j < strings.size(); ++j) {
    const PauliSum sm = single(strings[j]) * m;
    double acc = 0.0;
    for (std::size_t x = 0; x < nb; ++x) {
      if (s.p[x] != 0.0) acc += s.p[x] * s.p[x] * e(sm, x, x).imag();
    }
    u.b[static_cast<Eigen::Index>(j)] = -tau * acc;
  }
  return u;
}

Update assemble_w(const AnsatzState& s, const PauliSum& l, double tau, const PauliBasis& basis, ElementCache& e) {
  require_matching(s, l, "assemble_w");
  const std::size_t nb = s.size();
  Update u;
  u.q = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(nb));
  for (std::size_t y = 0; y < nb; ++y) {
    double acc = 0.0;
    for (std::size_t x = 0; x < nb; ++x) {
      if (s.p[x] != 0.0) acc += s.p[x] * std::norm(e(l, y, x));
    }
    u.q[static_cast<Eigen::Index>(y)] = tau * acc;
  }
  u.s = assemble_s(s, basis, e);
  const auto& strings = basis.strings();
  u.b = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(strings.size()));
  for (std::size_t j = 0; j < strings.size(); ++j) {
    const PauliSum sl = single(strings[j]) * l;
    double acc = 0.0;
    for (std::size_t x = 0; x < nb; ++x) {
      for (std::size_t y = 0; y < nb; ++y) {
        const double w = s.p[x] * s.p[y];
        if (w != 0.0) acc += w * (e(sl, x, y) * std::conj(e(l, x, y))).imag();
      }
    }
    u.b[static_cast<Eigen::Index>(j)] = 2.0 * tau * acc;
  }
  return u;
}

AnsatzState apply_update(const AnsatzState& s, const Update& u, const PauliBasis& basis, double reg,
                         QiteStep* solved) {
  if (static_cast<std::size_t>(u.q.size()) != s.size()) throw SizeError("apply_update: weight shift size mismatch");
  AnsatzState out = s;
  double before = 0.0;
  double after = 0.0;
  for (std::size_t x = 0; x < s.size(); ++x) {
    const double next = s.p[x] + u.q[static_cast<Eigen::Index>(x)];
    if (next < -kNegativeWeightTol) {
      throw StepSizeError("weight of bit-string " + s.label(x) + " became negative (" + std::to_string(next) +
                          "); reduce the time step");
    }
    out.p[x] = next;
    before += s.p[x];
    after += next;
  }
  if (!(after > 0.0)) throw StepSizeError("apply_update: total weight vanished");
  // A partial index set cannot hold weight moved onto excluded bit-strings.
  const bool complete = s.size() == (std::size_t{1} << s.n_qubits);
  if (!complete && after < before) out.dropped_mass += before - after;
  out.raw_weight = after;
  for (auto& w : out.p) w /= after;

  const QiteStep st = solve_regularized(u.s, u.b, reg);
  const auto& strings = basis.strings();
  for (auto& phi : out.phi) {
    for (std::size_t j = 0; j < strings.size(); ++j) {
      pauli_rotation_inplace(phi, strings[j], -st.a[static_cast<Eigen::Index>(j)]);
    }
  }
  if (solved != nullptr) *solved = st;
  return out;
}

AnsatzState vk_step(const AnsatzState& s, const PauliSum& l, double tau, const PauliBasis& basis, double reg,
                    ShotModel& shot) {
  ElementCache e(s, shot);
  return apply_update(s, assemble_v(s, l, tau, basis, e), basis, reg);
}

AnsatzState wk_step(const AnsatzState& s, const PauliSum& l, double tau, const PauliBasis& basis, double reg,
                    ShotModel& shot) {
  ElementCache e(s, shot);
  return apply_update(s, assemble_w(s, l, tau, basis, e), basis, reg);
}

AnsatzState jump_step(const AnsatzState& s, const PauliSum& l, double tau, const PauliBasis& basis, double reg,
                      ShotModel& shot) {
  ElementCache e(s, shot);
  Update u = assemble_v(s, l, tau, basis, e);
  const Update w = assemble_w(s, l, tau, basis, e);
  u.q += w.q;
  u.b += w.b;
  return apply_update(s, u, basis, reg);
}

AnsatzState step(const AnsatzState& s, const LindbladModel& m, Config& cfg, long* solves) {
  if (m.n_qubits() != s.n_qubits) throw SizeError("step: model and ansatz registers differ");
  if (cfg.basis.size() == 0) cfg.basis = PauliBasis::full(s.n_qubits);
  AnsatzState out = unitary_step(s, m.hamiltonian(), cfg.tau);
  long count = 0;
  for (const auto& l : m.jumps()) {
    if (cfg.order == DissipatorOrder::kCombined) {
      out = jump_step(out, l, cfg.tau, cfg.basis, cfg.reg, cfg.shot);
      ++count;
    } else {
      out = vk_step(out, l, cfg.tau, cfg.basis, cfg.reg, cfg.shot);
      out = wk_step(out, l, cfg.tau, cfg.basis, cfg.reg, cfg.shot);
      count += 2;
    }
  }
  if (cfg.prune_threshold > 0.0) out = prune(out, cfg.prune_threshold);
  if (solves != nullptr) *solves += count;
  return out;
}

double observe(const AnsatzState& s, const PauliSum& o) {
  ShotModel exact;
  return observe(s, o, exact);
}

double observe(const AnsatzState& s, const PauliSum& o, ShotModel& shot) {
  require_matching(s, o, "observe");
  if (!o.is_hermitian()) throw ContractError("observe: observable must be Hermitian");
  double acc = 0.0;
  for (std::size_t x = 0; x < s.size(); ++x) {
    if (s.p[x] != 0.0) acc += s.p[x] * expectation(s.phi[x], o, shot).real();
  }
  return acc;
}

AnsatzState prune(const AnsatzState& s, double threshold) {
  if (!(threshold >= 0.0)) throw ContractError("prune: threshold must be non-negative");
  if (threshold == 0.0) return s;
  AnsatzState out;
  out.n_qubits = s.n_qubits;
  out.dropped_mass = s.dropped_mass;
  out.raw_weight = s.raw_weight;
  double kept = 0.0;
  for (std::size_t x = 0; x < s.size(); ++x) {
    if (s.p[x] < threshold) {
      out.dropped_mass += std::max(s.p[x], 0.0);
      continue;
    }
    out.index_set.push_back(s.index_set[x]);
    out.p.push_back(s.p[x]);
    out.phi.push_back(s.phi[x]);
    kept += s.p[x];
  }
  if (out.index_set.empty() || !(kept > 0.0)) throw StepSizeError("prune: every branch fell below the threshold");
  for (auto& w : out.p) w /= kept;
  return out;
}

DensityMatrix reconstruct(const AnsatzState& s) {
  const Eigen::Index dim = Eigen::Index{1} << s.n_qubits;
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(dim, dim);
  for (std::size_t x = 0; x < s.size(); ++x) {
    const auto& a = s.phi[x].amplitudes();
    rho += s.p[x] * a * a.adjoint();
  }
  return DensityMatrix(s.n_qubits, std::move(rho));
}

double weight_sum(const AnsatzState& s) {
  double acc = 0.0;
  for (double w : s.p) acc += w;
  return acc;
}

double orthonormality_error(const AnsatzState& s) {
  double worst = 0.0;
  for (std::size_t j = 0; j < s.size(); ++j) {
    for (std::size_t k = j; k < s.size(); ++k) {
      const cplx g = inner(s.phi[j], s.phi[k]);
      worst = std::max(worst, std::abs(g - (j == k ? 1.0 : 0.0)));
    }
  }
  return worst;
}

Trajectory run(const LindbladModel& m, const AnsatzState& initial, Config cfg,
               std::span<const NamedObservable> observables) {
  if (cfg.n_steps < 0) throw ContractError("run: negative step count");
  if (!(cfg.tau > 0.0)) throw ConfigError("time step must be positive");
  const auto start = std::chrono::steady_clock::now();
  if (cfg.basis.size() == 0) cfg.basis = PauliBasis::full(m.n_qubits());
  require_basis(initial, cfg.basis);

  Trajectory traj;
  traj.algorithm = "algo2";
  traj.seed = cfg.shot.seed();
  for (const auto& o : observables) traj.observables.push_back(o.name);

  auto record = [&](double t, const AnsatzState& s) {
    TrajectoryRecord r;
    r.t = t;
    for (const auto& o : observables) r.values.push_back(observe(s, o.op, cfg.shot));
    r.raw_norm = s.raw_weight;
    double sq = 0.0;
    for (double w : s.p) sq += w * w;
    const double total = weight_sum(s);
    r.purity = sq / (total * total);
    r.dropped_mass = s.dropped_mass;
    traj.records.push_back(std::move(r));
  };

  AnsatzState s = initial;
  record(0.0, s);
  for (int k = 1; k <= cfg.n_steps; ++k) {
    s = step(s, m, cfg, &traj.linear_solves);
    record(k * cfg.tau, s);
  }
  traj.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return traj;
}

}  // namespace lindqite::ansatz
