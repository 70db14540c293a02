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

#pragma once

#include <Eigen/Dense>
#include <vector>

#include "lindqite/lindblad.hpp"
#include "lindqite/state.hpp"

// Ground truth for the QITE-based integrators: dense integration of the
// master equation plus brute-force operator actions used by the tests.

namespace lindqite::oracle {

/// Largest physical register the oracle accepts.
inline constexpr int kMaxOracleQubits = 6;
/// Largest total dimension handled by dense matrix exponentials.
inline constexpr Eigen::Index kMaxDenseDim = 256;

enum class Method { kAuto, kExpm, kRk4 };

/// 4^n x 4^n Liouvillian in the column-stacking convention, assembled column
/// by column from D(E_ij) = -i[H, E_ij] + sum_k (L E_ij L^+ - {L^+L, E_ij}/2).
Eigen::MatrixXcd dense_liouvillian(const LindbladModel& m);

/// Right-hand side of the master equation on a dense density matrix.
Eigen::MatrixXcd lindblad_rhs(const LindbladModel& m, const Eigen::MatrixXcd& rho);

/// exp(a) by power-of-two scaling and a degree-16 Taylor polynomial.
Eigen::MatrixXcd expm(const Eigen::MatrixXcd& a);

/// rho(t). kAuto uses the dense exponential when 4^n <= 256 and RK4
/// otherwise; `steps` only affects RK4 (0 selects the default step count).
/// The result is re-Hermitized.
DensityMatrix evolve_exact(const LindbladModel& m, const DensityMatrix& rho0, double t, int steps = 0,
                           Method method = Method::kAuto);

/// Default RK4 step count: max(1000, ceil(100 t ||L||)), with ||L|| bounded
/// through the Pauli 1-norms of H and the jumps.
int default_rk4_steps(const LindbladModel& m, double t);

/// rho(k tau) for k = 0..n_steps.
std::vector<DensityMatrix> trajectory(const LindbladModel& m, const DensityMatrix& rho0, double tau, int n_steps);

struct SteadyState {
  DensityMatrix rho;
  double residual = 0.0;      // ||L vec(rho)||
  int nullity = 0;            // near-zero singular values found
  bool degenerate = false;    // nullity > 1: rho is one of several fixed points
};

SteadyState steady_state(const LindbladModel& m);

StateVector dense_apply(const Eigen::MatrixXcd& op, const StateVector& v);
StateVector dense_apply(const PauliSum& op, const StateVector& v);
/// exp(tau * op) v.
StateVector dense_expm_apply(const Eigen::MatrixXcd& op, double tau, const StateVector& v);
StateVector dense_expm_apply(const PauliSum& op, double tau, const StateVector& v);

}  // namespace lindqite::oracle
