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

#include "lindqite/vectorized.hpp"

#include <chrono>
#include <cmath>

#include "lindqite/errors.hpp"

namespace lindqite::vectorized {
namespace {

constexpr double kMinTrace = 1e-8;

PauliSum without_identity(const PauliSum& s) {
  std::vector<PauliTerm> terms;
  for (const auto& t : s.terms()) {
    if (!t.string.is_identity()) terms.push_back(t);
  }
  if (terms.empty()) return PauliSum(s.n_qubits() > 0 ? s.n_qubits() : 1);
  return PauliSum(s.n_qubits(), std::move(terms));
}

StateVector vec_identity(int n_physical) {
  const Eigen::Index dim = Eigen::Index{1} << n_physical;
  return vec(n_physical, Eigen::MatrixXcd::Identity(dim, dim));
}

StateVector vec_adjoint(const PauliSum& o) { return vec(o.n_qubits(), to_dense(o).adjoint()); }

double ratio(cplx num, cplx den) {
  if (std::abs(den) < kMinTrace) throw StepSizeError("observe: trace of the vectorized state vanished");
  return (num / den).real();
}

}  // namespace

State init(const DensityMatrix& rho0) {
  if (rho0.matrix().norm() == 0.0) throw ContractError("init: zero density matrix");
  if (!rho0.is_hermitian(1e-8)) throw ContractError("init: initial density matrix is not Hermitian");
  if (std::abs(rho0.trace() - 1.0) > 1e-8) throw ContractError("init: initial density matrix must have unit trace");
  return State{vec(rho0).normalized(), rho0.purity()};
}

State step(const State& s, const VectorizedGenerator& g, Config& cfg, StepReport* report) {
  if (s.v.n_qubits() != 2 * g.n_physical) throw SizeError("step: state and generator registers differ");
  if (cfg.trotter_substeps < 1) throw ContractError("step: trotter_substeps must be >= 1");

  State out = s;
  const double dt = cfg.tau / cfg.trotter_substeps;
  for (int sub = 0; sub < cfg.trotter_substeps; ++sub) {
    for (const auto& t : g.h1.terms()) {
      // Identity terms only contribute a global phase.
      if (!t.string.is_identity()) pauli_rotation_inplace(out.v, t.string, t.coeff.real() * dt);
    }
  }

  StepReport local;
  // Shifting h2 by a multiple of the identity leaves the normalized
  // imaginary-time step unchanged.
  const PauliSum h2 = without_identity(g.h2);
  if (h2.empty()) {
    local.raw_norm = out.v.norm();
    out.v = out.v.normalized();
  } else {
    NonunitaryResult r = nonunitary_step(out.v, h2, cfg.tau, cfg.basis, cfg.reg, cfg.shot);
    local.raw_norm = r.raw_norm;
    local.qite_residual = r.step.residual;
    local.qite_invoked = true;
    out.v = std::move(r.state);
  }
  if (report != nullptr) *report = local;
  return out;
}

cplx trace(const State& s) { return inner(vec_identity(s.v.n_qubits() / 2), s.v); }

double observe(const State& s, const PauliSum& o) {
  ShotModel exact;
  return observe(s, o, exact);
}

double observe(const State& s, const PauliSum& o, ShotModel& shot) {
  if (!o.is_hermitian()) throw ContractError("observe: observable must be Hermitian");
  if (2 * o.n_qubits() != s.v.n_qubits()) throw SizeError("observe: observable register mismatch");
  const int n = o.n_qubits();
  if (shot.is_exact()) return ratio(inner(vec_adjoint(o), s.v), trace(s));
  // Each Pauli term of O is estimated separately, as is the trace.
  cplx num{0.0, 0.0};
  for (const auto& t : o.terms()) {
    num += t.coeff.real() * overlap(vec(n, to_dense(t.string)), s.v, shot);
  }
  return ratio(num, overlap(vec_identity(n), s.v, shot));
}

double hermiticity_drift(const State& s) {
  const Eigen::MatrixXcd m = unvec(s.v).matrix();
  const double scale = m.norm();
  if (scale == 0.0) return 0.0;
  return (m - m.adjoint()).norm() / scale;
}

Purity purity(const State& s) {
  const double norm2 = s.v.amplitudes().squaredNorm();
  const double tr = std::abs(trace(s));
  if (tr < kMinTrace) throw StepSizeError("purity: trace of the vectorized state vanished");
  return {norm2 / (tr * tr), norm2 * s.purity0};
}

Trajectory run(const LindbladModel& m, const DensityMatrix& rho0, Config cfg,
               std::span<const NamedObservable> observables) {
  if (cfg.n_steps < 0) throw ContractError("run: negative step count");
  const auto start = std::chrono::steady_clock::now();
  const VectorizedGenerator g = vectorize(m);
  if (cfg.basis.size() == 0) cfg.basis = PauliBasis::full(2 * m.n_qubits());
  if (cfg.basis.n_qubits() != 2 * m.n_qubits()) throw ConfigError("algo1 basis must act on 2n qubits");

  Trajectory traj;
  traj.algorithm = "algo1";
  traj.seed = cfg.shot.seed();
  for (const auto& o : observables) traj.observables.push_back(o.name);

  auto record = [&](double t, const State& s, double raw_norm2) {
    TrajectoryRecord r;
    r.t = t;
    for (const auto& o : observables) r.values.push_back(observe(s, o.op, cfg.shot));
    r.raw_norm = raw_norm2;
    r.purity = purity(s).normalized;
    traj.records.push_back(std::move(r));
  };

  State s = init(rho0);
  record(0.0, s, 1.0);
  for (int k = 1; k <= cfg.n_steps; ++k) {
    StepReport rep;
    s = step(s, g, cfg, &rep);
    if (rep.qite_invoked) ++traj.linear_solves;
    record(k * cfg.tau, s, rep.raw_norm * rep.raw_norm);
  }
  traj.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return traj;
}

}  // namespace lindqite::vectorized
