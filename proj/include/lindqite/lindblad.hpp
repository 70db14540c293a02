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

#include <vector>

#include "lindqite/pauli.hpp"
#include "lindqite/state.hpp"

namespace lindqite {

/// H and the jump operators of a Lindblad master equation. Rates are absorbed
/// into the jumps: a channel with rate gamma and operator L is stored as
/// sqrt(gamma) * L. The excited state of every qubit is |1>.
class LindbladModel {
 public:
  LindbladModel() = default;
  LindbladModel(PauliSum hamiltonian, std::vector<PauliSum> jumps);

  int n_qubits() const { return hamiltonian_.n_qubits(); }
  const PauliSum& hamiltonian() const { return hamiltonian_; }
  const std::vector<PauliSum>& jumps() const { return jumps_; }

 private:
  PauliSum hamiltonian_;
  std::vector<PauliSum> jumps_;
};

/// Column-stacked Liouvillian on 2n qubits split as L = -i h1 - h2 with h1 and
/// h2 Hermitian. The left (most significant) register carries the column
/// index of rho, the right register the row index.
struct VectorizedGenerator {
  int n_physical = 0;
  PauliSum liouvillian;
  PauliSum h1;
  PauliSum h2;
};

VectorizedGenerator vectorize(const LindbladModel& m);

/// vec(rho) = sum_ij rho_ij |j> (x) |i>, so vec(A rho B) = (B^T (x) A) vec(rho).
StateVector vec(const DensityMatrix& rho);
DensityMatrix unvec(const StateVector& v);
/// vec of an arbitrary square matrix (for observables).
StateVector vec(int n_qubits, const Eigen::MatrixXcd& m);

/// H = -(delta/2) Z - (omega/2) X, jump sqrt(gamma) sigma_minus.
LindbladModel tls_model(double delta, double omega, double gamma);

/// Open chain: H = -J sum Z_k Z_{k+1} - h sum X_k, one jump sqrt(gamma)
/// sigma_minus per site.
LindbladModel tfim_model(int n_sites, double coupling, double field, double gamma);

/// N^-1 sum_k Z_k.
PauliSum average_magnetization(int n_qubits);
/// Projector onto |1> of `qubit`: (I - Z)/2.
PauliSum excited_population(int n_qubits, int qubit = 0);

}  // namespace lindqite
