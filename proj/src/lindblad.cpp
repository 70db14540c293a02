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

#include "lindqite/lindblad.hpp"

#include <cmath>
#include <string>

#include "lindqite/errors.hpp"

namespace lindqite {

LindbladModel::LindbladModel(PauliSum hamiltonian, std::vector<PauliSum> jumps)
    : hamiltonian_(std::move(hamiltonian)), jumps_(std::move(jumps)) {
  if (hamiltonian_.n_qubits() < 1) throw ContractError("LindbladModel: Hamiltonian has no register");
  if (!hamiltonian_.is_hermitian()) throw ContractError("LindbladModel: Hamiltonian is not Hermitian");
  for (const auto& l : jumps_) {
    if (l.n_qubits() != hamiltonian_.n_qubits()) throw SizeError("LindbladModel: jump operator qubit count mismatch");
  }
}

VectorizedGenerator vectorize(const LindbladModel& m) {
  const int n = m.n_qubits();
  const PauliSum id = PauliSum::identity(n);
  const cplx i(0.0, 1.0);
  const PauliSum& h = m.hamiltonian();

  PauliSum gen = -i * tensor(id, h) + i * tensor(transform(h, Transform::kTranspose), id);
  for (const auto& l : m.jumps()) {
    const PauliSum l_conj = transform(l, Transform::kConjugate);
    const PauliSum l_dag_l = adjoint(l) * l;
    const PauliSum lt_lconj = transform(l, Transform::kTranspose) * l_conj;
    gen += tensor(l_conj, l) - 0.5 * tensor(id, l_dag_l) - 0.5 * tensor(lt_lconj, id);
  }
  const PauliSum gen_dag = adjoint(gen);
  VectorizedGenerator g;
  g.n_physical = n;
  g.h1 = (i * 0.5) * (gen - gen_dag);
  g.h2 = -0.5 * (gen + gen_dag);
  g.liouvillian = std::move(gen);
  return g;
}

StateVector vec(int n_qubits, const Eigen::MatrixXcd& m) {
  const Eigen::Index dim = Eigen::Index{1} << n_qubits;
  if (m.rows() != dim || m.cols() != dim) throw SizeError("vec: matrix is not 2^n x 2^n");
  // Eigen storage is column-major, which is exactly column stacking.
  Eigen::VectorXcd v = Eigen::Map<const Eigen::VectorXcd>(m.data(), dim * dim);
  return StateVector(2 * n_qubits, std::move(v));
}

StateVector vec(const DensityMatrix& rho) { return vec(rho.n_qubits(), rho.matrix()); }

DensityMatrix unvec(const StateVector& v) {
  if (v.n_qubits() % 2 != 0) throw SizeError("unvec: dimension is not a power of 4");
  const int n = v.n_qubits() / 2;
  const Eigen::Index dim = Eigen::Index{1} << n;
  Eigen::MatrixXcd m = Eigen::Map<const Eigen::MatrixXcd>(v.amplitudes().data(), dim, dim);
  return DensityMatrix(n, std::move(m));
}

LindbladModel tls_model(double delta, double omega, double gamma) {
  if (!(gamma >= 0.0)) throw ConfigError("tls_model: gamma must be non-negative");
  PauliSum h(1, {{-0.5 * delta, PauliString::parse("Z")}, {-0.5 * omega, PauliString::parse("X")}});
  std::vector<PauliSum> jumps;
  if (gamma > 0.0) jumps.push_back(sigma_minus(1, 0) * std::sqrt(gamma));
  return LindbladModel(std::move(h), std::move(jumps));
}

LindbladModel tfim_model(int n_sites, double coupling, double field, double gamma) {
  if (n_sites < 2) throw ConfigError("tfim_model: need at least 2 sites");
  if (n_sites > 12) throw ConfigError("tfim_model: at most 12 sites");
  if (!(gamma >= 0.0)) throw ConfigError("tfim_model: gamma must be non-negative");
  std::vector<PauliTerm> terms;
  for (int k = 0; k + 1 < n_sites; ++k) {
    const std::uint64_t zz = (std::uint64_t{1} << k) | (std::uint64_t{1} << (k + 1));
    terms.push_back({-coupling, PauliString(n_sites, 0, zz)});
  }
  for (int k = 0; k < n_sites; ++k) terms.push_back({-field, PauliString::single(n_sites, k, 'X')});
  std::vector<PauliSum> jumps;
  if (gamma > 0.0) {
    for (int k = 0; k < n_sites; ++k) jumps.push_back(sigma_minus(n_sites, k) * std::sqrt(gamma));
  }
  return LindbladModel(PauliSum(n_sites, std::move(terms)), std::move(jumps));
}

PauliSum average_magnetization(int n_qubits) {
  std::vector<PauliTerm> terms;
  for (int k = 0; k < n_qubits; ++k) terms.push_back({1.0 / n_qubits, PauliString::single(n_qubits, k, 'Z')});
  return PauliSum(n_qubits, std::move(terms));
}

PauliSum excited_population(int n_qubits, int qubit) {
  return PauliSum(n_qubits, {{0.5, PauliString::identity(n_qubits)}, {-0.5, PauliString::single(n_qubits, qubit, 'Z')}});
}

}  // namespace lindqite
