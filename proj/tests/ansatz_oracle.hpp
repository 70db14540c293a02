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
#include <random>
#include <vector>

#include <unsupported/Eigen/KroneckerProduct>

#include "lindqite/ansatz.hpp"
#include "lindqite/oracle.hpp"
#include "test_util.hpp"

// Dense reference for the mixed-state ansatz update: the propagator increments
// and the Frobenius least-squares system they induce.
namespace lindqite::ansatz::testing {

using lindqite::testing::random_sum;

// Every bit-string present, random weights, branches rotated by a common random unitary.
inline AnsatzState random_ansatz(int n, std::mt19937_64& rng) {
  AnsatzState s = init_all(n, 0);
  std::uniform_real_distribution<double> u(0.05, 1.0);
  double total = 0.0;
  for (auto& w : s.p) total += (w = u(rng));
  for (auto& w : s.p) w /= total;
  return unitary_step(s, random_sum(n, 6, true, rng), 0.9);
}

// Random complex jump scaled to unit spectral norm.
inline PauliSum random_jump(int n, std::mt19937_64& rng) {
  const PauliSum l = random_sum(n, 3, false, rng);
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(to_dense(l));
  return (1.0 / svd.singularValues()[0]) * l;
}

// First-order change of rho under exp(-tau M / 2) (.) exp(-tau M / 2), M = L^dag L.
inline Eigen::MatrixXcd dense_v_increment(const Eigen::MatrixXcd& rho, const PauliSum& l, double tau) {
  const Eigen::MatrixXcd ld = to_dense(l);
  const Eigen::MatrixXcd half = oracle::expm(-0.5 * tau * (ld.adjoint() * ld));
  return half * rho * half - rho;
}

// Change of rho under exp(tau conj(L) (x) L) on the vectorized state.
inline Eigen::MatrixXcd dense_w_increment(int n, const Eigen::MatrixXcd& rho, const PauliSum& l, double tau) {
  const Eigen::MatrixXcd ld = to_dense(l);
  const Eigen::MatrixXcd gen = Eigen::kroneckerProduct(ld.conjugate(), ld).eval();
  const auto out = oracle::dense_expm_apply(gen, tau, vec(n, rho));
  return unvec(out).matrix() - rho;
}

// Frobenius least-squares fit of rho + sum_x q_x phi_x phi_x^dag + i [A, rho] to rho + drho.
struct DenseFit {
  Eigen::VectorXd q;
  Eigen::MatrixXd s;
  Eigen::VectorXd b;
};

inline DenseFit dense_fit(const AnsatzState& st, const Eigen::MatrixXcd& drho, const PauliBasis& basis) {
  const Eigen::MatrixXcd rho = reconstruct(st).matrix();
  const auto m = static_cast<Eigen::Index>(basis.size());
  DenseFit f;
  f.q.resize(static_cast<Eigen::Index>(st.size()));
  for (std::size_t x = 0; x < st.size(); ++x) {
    const auto& a = st.phi[x].amplitudes();
    f.q[static_cast<Eigen::Index>(x)] = a.dot(drho * a).real();
  }
  std::vector<Eigen::MatrixXcd> v;
  for (const auto& sigma : basis.strings()) {
    const Eigen::MatrixXcd sd = to_dense(sigma);
    v.push_back(cplx(0.0, 1.0) * (sd * rho - rho * sd));
  }
  f.s.resize(m, m);
  f.b.resize(m);
  for (Eigen::Index j = 0; j < m; ++j) {
    f.b[j] = (v[static_cast<std::size_t>(j)].adjoint() * drho).trace().real();
    for (Eigen::Index k = 0; k < m; ++k) {
      f.s(j, k) = (v[static_cast<std::size_t>(j)].adjoint() * v[static_cast<std::size_t>(k)]).trace().real();
    }
  }
  return f;
}

}  // namespace lindqite::ansatz::testing
