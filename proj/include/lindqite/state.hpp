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
#include <complex>
#include <cstdint>
#include <span>
#include <string_view>

#include "lindqite/pauli.hpp"

namespace lindqite {

inline constexpr int kMaxStateQubits = 24;

/// 2^n complex amplitudes, qubit 0 in the least significant index bit.
class StateVector {
 public:
  StateVector() = default;
  explicit StateVector(int n_qubits);  // |0...0>
  StateVector(int n_qubits, Eigen::VectorXcd amplitudes);

  static StateVector basis(int n_qubits, std::uint64_t index);
  /// Basis state from a bit-string such as "10" (rightmost is qubit 0).
  static StateVector basis(std::string_view bits);

  int n_qubits() const { return n_qubits_; }
  std::size_t dim() const { return static_cast<std::size_t>(amps_.size()); }
  const Eigen::VectorXcd& amplitudes() const { return amps_; }
  Eigen::VectorXcd& amplitudes() { return amps_; }
  std::span<const cplx> span() const { return {amps_.data(), dim()}; }
  std::span<cplx> span() { return {amps_.data(), dim()}; }
  cplx operator[](std::size_t i) const { return amps_[static_cast<Eigen::Index>(i)]; }

  double norm() const { return amps_.norm(); }
  /// Throws ContractError when the norm is zero or not finite.
  StateVector normalized() const;
  bool is_normalized(double tol = 1e-10) const;

 private:
  int n_qubits_ = 0;
  Eigen::VectorXcd amps_;
};

/// 2^n x 2^n density operator (dense; used by the exact oracle and tests).
class DensityMatrix {
 public:
  DensityMatrix() = default;
  DensityMatrix(int n_qubits, Eigen::MatrixXcd entries);

  static DensityMatrix pure(const StateVector& psi);
  /// sum_k w_k |b_k><b_k| for bit-strings b_k.
  static DensityMatrix diagonal(int n_qubits, std::span<const std::pair<std::uint64_t, double>> weights);

  int n_qubits() const { return n_qubits_; }
  std::size_t dim() const { return static_cast<std::size_t>(rho_.rows()); }
  const Eigen::MatrixXcd& matrix() const { return rho_; }
  cplx operator()(std::size_t i, std::size_t j) const {
    return rho_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  }

  cplx trace() const { return rho_.trace(); }
  double purity() const { return (rho_ * rho_).trace().real(); }
  bool is_hermitian(double tol = 1e-10) const { return (rho_ - rho_.adjoint()).norm() <= tol; }
  /// Tr(O rho) for a Pauli sum.
  cplx expectation(const PauliSum& o) const;

 private:
  int n_qubits_ = 0;
  Eigen::MatrixXcd rho_;
};

/// SplitMix64 used as a counter-based generator: draw k returns
/// mix(seed + k * golden_gamma), so any draw can be recomputed from
/// (seed, k) alone.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed = 0) : seed_(seed) {}
  std::uint64_t next_u64();
  /// Uniform in [0, 1) with 53 random bits.
  double next_uniform();
  std::uint64_t counter() const { return counter_; }

 private:
  std::uint64_t seed_;
  std::uint64_t counter_ = 0;
};

/// Shot-noise emulation. shots == 0 means exact expectation values.
/// Draw order: one uniform per sampled Pauli term, in term order, consumed by
/// binomial inversion; estimates are therefore a pure function of
/// (seed, call sequence). Not safe to share between concurrent samplers.
class ShotModel {
 public:
  ShotModel() = default;
  ShotModel(std::uint64_t shots, std::uint64_t seed, bool local_shortcut = true)
      : shots_(shots), seed_(seed), local_shortcut_(local_shortcut), rng_(seed) {}

  static ShotModel exact() { return {}; }

  std::uint64_t shots() const { return shots_; }
  std::uint64_t seed() const { return seed_; }
  bool is_exact() const { return shots_ == 0; }
  bool local_shortcut() const { return local_shortcut_; }
  /// Number of Pauli terms sampled so far.
  std::uint64_t draws() const { return rng_.counter(); }

  /// Mean of `shots` +/-1 outcomes whose +1 probability is (1 + e) / 2.
  double sample_mean(double expectation);

 private:
  std::uint64_t shots_ = 0;
  std::uint64_t seed_ = 0;
  bool local_shortcut_ = true;
  CounterRng rng_;
};

/// Number of successes of Binomial(trials, p) by inversion of one uniform u.
std::uint64_t binomial_inverse(std::uint64_t trials, double p, double u);

cplx inner(const StateVector& phi, const StateVector& psi);
StateVector apply_string(const PauliString& p, const StateVector& psi);
/// exp(-i theta sigma) psi, exact.
StateVector pauli_rotation(const StateVector& psi, const PauliString& sigma, double theta);
void pauli_rotation_inplace(StateVector& psi, const PauliString& sigma, double theta);

/// <psi|s|psi>. With shots, each term's <sigma_j> is replaced by a sampled
/// mean; psi must then be normalized.
cplx expectation(const StateVector& psi, const PauliSum& s, ShotModel& shot);
cplx expectation(const StateVector& psi, const PauliSum& s);
/// <psi|sigma|psi> for a single string (always real).
double expectation(const StateVector& psi, const PauliString& sigma);

/// <phi_x|s|phi_y>. With shots, the real and imaginary part of every term
/// come from the four superposition states (phi_x +- phi_y)/sqrt2 and
/// (phi_x -+ i phi_y)/sqrt2, each sampled independently.
cplx matrix_element(const StateVector& phi_x, const StateVector& phi_y, const PauliSum& s, ShotModel& shot);
cplx matrix_element(const StateVector& phi_x, const StateVector& phi_y, const PauliSum& s);
cplx matrix_element(const StateVector& phi_x, const StateVector& phi_y, const PauliString& sigma);

/// <phi|psi> for arbitrary (unnormalized) states. With shots, the real and
/// imaginary parts of the normalized overlap are each estimated from +/-1
/// outcomes as a Hadamard test would produce them, then rescaled by the norms.
cplx overlap(const StateVector& phi, const StateVector& psi, ShotModel& shot);

/// Exact <phi_x|s|phi_y> evaluated only through diagonal expectations of the
/// superposition states; equals matrix_element() up to rounding.
cplx matrix_element_via_superpositions(const StateVector& phi_x, const StateVector& phi_y, const PauliSum& s);

}  // namespace lindqite
