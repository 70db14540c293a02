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

#include "lindqite/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/SVD>

#include "lindqite/errors.hpp"

namespace lindqite::oracle {
namespace {

void check_register(int n) {
  if (n > kMaxOracleQubits) {
    throw SizeError("oracle: " + std::to_string(n) + " qubits exceeds the dense limit of " +
                    std::to_string(kMaxOracleQubits));
  }
}

void check_dense_dim(Eigen::Index dim) {
  if (dim > kMaxDenseDim) throw SizeError("oracle: dense operator dimension " + std::to_string(dim) + " too large");
}

struct DenseModel {
  Eigen::MatrixXcd h;
  std::vector<Eigen::MatrixXcd> jumps;
  Eigen::MatrixXcd decay;  // sum_k L_k^+ L_k
};

DenseModel densify(const LindbladModel& m) {
  DenseModel d;
  d.h = to_dense(m.hamiltonian());
  const Eigen::Index dim = d.h.rows();
  d.decay = Eigen::MatrixXcd::Zero(dim, dim);
  for (const auto& l : m.jumps()) {
    d.jumps.push_back(to_dense(l));
    d.decay += d.jumps.back().adjoint() * d.jumps.back();
  }
  return d;
}

Eigen::MatrixXcd rhs(const DenseModel& d, const Eigen::MatrixXcd& rho) {
  const cplx i(0.0, 1.0);
  Eigen::MatrixXcd out = -i * (d.h * rho - rho * d.h);
  for (const auto& l : d.jumps) out += l * rho * l.adjoint();
  out -= 0.5 * (d.decay * rho + rho * d.decay);
  return out;
}

double one_norm(const Eigen::MatrixXcd& a) { return a.cwiseAbs().colwise().sum().maxCoeff(); }

DensityMatrix hermitize(int n, const Eigen::MatrixXcd& rho) {
  return DensityMatrix(n, 0.5 * (rho + rho.adjoint()));
}

Eigen::MatrixXcd unvec_matrix(const Eigen::VectorXcd& v, Eigen::Index dim) {
  return Eigen::Map<const Eigen::MatrixXcd>(v.data(), dim, dim);
}

}  // namespace

Eigen::MatrixXcd dense_liouvillian(const LindbladModel& m) {
  check_register(m.n_qubits());
  const DenseModel d = densify(m);
  const Eigen::Index dim = d.h.rows();
  check_dense_dim(dim * dim);
  Eigen::MatrixXcd sup(dim * dim, dim * dim);
  for (Eigen::Index j = 0; j < dim; ++j) {
    for (Eigen::Index i = 0; i < dim; ++i) {
      Eigen::MatrixXcd e = Eigen::MatrixXcd::Zero(dim, dim);
      e(i, j) = 1.0;
      const Eigen::MatrixXcd out = rhs(d, e);
      sup.col(i + j * dim) = Eigen::Map<const Eigen::VectorXcd>(out.data(), dim * dim);
    }
  }
  return sup;
}

Eigen::MatrixXcd lindblad_rhs(const LindbladModel& m, const Eigen::MatrixXcd& rho) { return rhs(densify(m), rho); }

Eigen::MatrixXcd expm(const Eigen::MatrixXcd& a) {
  if (a.rows() != a.cols()) throw SizeError("expm: matrix is not square");
  constexpr int kOrder = 16;
  const double nrm = one_norm(a);
  int squarings = 0;
  if (nrm > 0.5) squarings = static_cast<int>(std::ceil(std::log2(nrm / 0.5)));
  const Eigen::MatrixXcd b = a / std::ldexp(1.0, squarings);
  const Eigen::Index n = a.rows();
  // Horner: I + b(I + b/2(I + b/3(...)))
  Eigen::MatrixXcd result = Eigen::MatrixXcd::Identity(n, n);
  for (int k = kOrder; k >= 1; --k) {
    result = Eigen::MatrixXcd::Identity(n, n) + (b * result) / static_cast<double>(k);
  }
  for (int s = 0; s < squarings; ++s) result = result * result;
  return result;
}

int default_rk4_steps(const LindbladModel& m, double t) {
  double bound = 2.0 * m.hamiltonian().one_norm();
  for (const auto& l : m.jumps()) bound += 2.0 * l.one_norm() * l.one_norm();
  return std::max(1000, static_cast<int>(std::ceil(100.0 * t * bound)));
}

DensityMatrix evolve_exact(const LindbladModel& m, const DensityMatrix& rho0, double t, int steps, Method method) {
  if (!(t >= 0.0)) throw ContractError("evolve_exact: t must be non-negative");
  if (steps < 0) throw ContractError("evolve_exact: steps must be >= 1 (0 selects the default)");
  if (rho0.n_qubits() != m.n_qubits()) throw SizeError("evolve_exact: state and model registers differ");
  const int n = m.n_qubits();
  check_register(n);
  if (t == 0.0) return rho0;

  const Eigen::Index dim = Eigen::Index{1} << n;
  if (method == Method::kAuto) method = dim * dim <= kMaxDenseDim ? Method::kExpm : Method::kRk4;

  if (method == Method::kExpm) {
    const Eigen::MatrixXcd prop = expm(dense_liouvillian(m) * t);
    const Eigen::VectorXcd v = prop * Eigen::Map<const Eigen::VectorXcd>(rho0.matrix().data(), dim * dim);
    return hermitize(n, unvec_matrix(v, dim));
  }

  const DenseModel d = densify(m);
  const int n_steps = steps > 0 ? steps : default_rk4_steps(m, t);
  const double dt = t / n_steps;
  Eigen::MatrixXcd rho = rho0.matrix();
  for (int s = 0; s < n_steps; ++s) {
    const Eigen::MatrixXcd k1 = rhs(d, rho);
    const Eigen::MatrixXcd k2 = rhs(d, rho + 0.5 * dt * k1);
    const Eigen::MatrixXcd k3 = rhs(d, rho + 0.5 * dt * k2);
    const Eigen::MatrixXcd k4 = rhs(d, rho + dt * k3);
    rho += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return hermitize(n, rho);
}

std::vector<DensityMatrix> trajectory(const LindbladModel& m, const DensityMatrix& rho0, double tau, int n_steps) {
  if (n_steps < 0) throw ContractError("trajectory: negative step count");
  std::vector<DensityMatrix> out;
  out.reserve(static_cast<std::size_t>(n_steps) + 1);
  out.push_back(rho0);
  if (n_steps == 0) return out;
  const int n = m.n_qubits();
  check_register(n);
  const Eigen::Index dim = Eigen::Index{1} << n;
  if (dim * dim <= kMaxDenseDim) {
    const Eigen::MatrixXcd prop = expm(dense_liouvillian(m) * tau);
    Eigen::VectorXcd v = Eigen::Map<const Eigen::VectorXcd>(rho0.matrix().data(), dim * dim);
    for (int k = 0; k < n_steps; ++k) {
      v = prop * v;
      out.push_back(hermitize(n, unvec_matrix(v, dim)));
    }
  } else {
    for (int k = 0; k < n_steps; ++k) out.push_back(evolve_exact(m, out.back(), tau, 0, Method::kRk4));
  }
  return out;
}

SteadyState steady_state(const LindbladModel& m) {
  const Eigen::MatrixXcd sup = dense_liouvillian(m);
  const Eigen::Index dim2 = sup.rows();
  const auto dim = static_cast<Eigen::Index>(std::llround(std::sqrt(static_cast<double>(dim2))));
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(sup, Eigen::ComputeFullV);
  const Eigen::VectorXd& sv = svd.singularValues();  // descending
  const double tol = 1e-9 * std::max(1.0, sv[0]);

  SteadyState out;
  for (Eigen::Index k = 0; k < sv.size(); ++k) {
    if (sv[k] <= tol) ++out.nullity;
  }
  out.degenerate = out.nullity > 1;

  // Among the null vectors prefer the one with the largest trace, so a
  // degenerate generator still yields a normalizable state.
  Eigen::Index pick = dim2 - 1;
  if (out.degenerate) {
    double best = -1.0;
    for (Eigen::Index k = dim2 - out.nullity; k < dim2; ++k) {
      const double tr = std::abs(unvec_matrix(svd.matrixV().col(k), dim).trace());
      if (tr > best) {
        best = tr;
        pick = k;
      }
    }
  }
  Eigen::MatrixXcd rho = unvec_matrix(svd.matrixV().col(pick), dim);
  const cplx tr = rho.trace();
  if (std::abs(tr) < 1e-12) throw StepSizeError("steady_state: null vector has zero trace");
  rho /= tr;
  rho = 0.5 * (rho + rho.adjoint());
  out.residual = (sup * Eigen::Map<const Eigen::VectorXcd>(rho.data(), dim2)).norm();
  out.rho = DensityMatrix(m.n_qubits(), std::move(rho));
  return out;
}

StateVector dense_apply(const Eigen::MatrixXcd& op, const StateVector& v) {
  if (op.cols() != static_cast<Eigen::Index>(v.dim()) || op.rows() != op.cols()) {
    throw SizeError("dense_apply: dimension mismatch");
  }
  check_dense_dim(op.rows());
  return StateVector(v.n_qubits(), op * v.amplitudes());
}

StateVector dense_apply(const PauliSum& op, const StateVector& v) {
  if (op.n_qubits() != v.n_qubits()) throw SizeError("dense_apply: qubit counts differ");
  return dense_apply(to_dense(op), v);
}

StateVector dense_expm_apply(const Eigen::MatrixXcd& op, double tau, const StateVector& v) {
  if (op.cols() != static_cast<Eigen::Index>(v.dim()) || op.rows() != op.cols()) {
    throw SizeError("dense_expm_apply: dimension mismatch");
  }
  check_dense_dim(op.rows());
  return StateVector(v.n_qubits(), expm(tau * op) * v.amplitudes());
}

StateVector dense_expm_apply(const PauliSum& op, double tau, const StateVector& v) {
  if (op.n_qubits() != v.n_qubits()) throw SizeError("dense_expm_apply: qubit counts differ");
  return dense_expm_apply(to_dense(op), tau, v);
}

}  // namespace lindqite::oracle
