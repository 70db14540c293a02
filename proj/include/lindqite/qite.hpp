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
#include <cstdint>
#include <string>
#include <vector>

#include "lindqite/pauli.hpp"
#include "lindqite/state.hpp"

namespace lindqite {

/// Ordered set of Pauli strings spanning the QITE generator. The order is
/// part of the result: rotations are applied in this sequence.
class PauliBasis {
 public:
  enum class Origin { kExplicit, kRandom, kFull };

  /// Validates equal register size and absence of duplicates.
  static PauliBasis explicit_strings(std::vector<PauliString> strings);
  /// Uniform sample without replacement from the 4^n - 1 non-identity
  /// strings (partial Fisher-Yates driven by CounterRng(seed)), kept in draw
  /// order.
  static PauliBasis random(int n_qubits, int count, std::uint64_t seed);
  /// Every non-identity string on the register.
  static PauliBasis full(int n_qubits);

  const std::vector<PauliString>& strings() const { return strings_; }
  std::size_t size() const { return strings_.size(); }
  int n_qubits() const { return strings_.empty() ? 0 : strings_.front().n_qubits(); }
  Origin origin() const { return origin_; }
  std::uint64_t seed() const { return seed_; }
  /// Human-readable provenance, e.g. "random(count=16,seed=7)".
  std::string describe() const;

 private:
  std::vector<PauliString> strings_;
  Origin origin_ = Origin::kExplicit;
  std::uint64_t seed_ = 0;
};

/// Real least-squares system S a = b of one QITE step, with the norm
/// estimate c used to scale b.
struct QiteSystem {
  Eigen::MatrixXd s;
  Eigen::VectorXd b;
  double c = 1.0;
};

/// Solution of a QITE system.
struct QiteStep {
  Eigen::VectorXd a;
  double residual = 0.0;  // ||S a - b||
  double c_norm = 1.0;
};

enum class NormEstimate {
  kFirstOrder,  // c = 1 - 2 tau <h>, measurable
  kExact,       // c = ||exp(-tau h) psi||^2 from the dense oracle (tests)
};

/// Smallest first-order norm estimate accepted before the step is rejected.
inline constexpr double kMinNormEstimate = 0.1;

/// Builds the real system whose solution a gives
///   prod_j exp(-i tau a_j sigma_j) psi  ~  exp(-tau h) psi / sqrt(c):
///   S_ij = Re <psi|sigma_i sigma_j|psi>,  b_i = Im <psi|sigma_i h|psi> / sqrt(c).
/// Each distinct Pauli string is measured once per call.
QiteSystem build_system(const StateVector& psi, const PauliSum& h, double tau, const PauliBasis& basis,
                        ShotModel& shot, NormEstimate norm = NormEstimate::kFirstOrder);

/// (S + reg I) a = b by complete orthogonal decomposition (minimum-norm
/// least squares for rank-deficient S).
QiteStep solve_regularized(const Eigen::MatrixXd& s, const Eigen::VectorXd& b, double reg);

/// exp(-i tau a_j sigma_j) in basis order, then renormalized. `raw_norm`
/// receives the norm before renormalization.
StateVector apply_step(const StateVector& psi, const PauliBasis& basis, const QiteStep& step, double tau,
                       double* raw_norm = nullptr);

struct NonunitaryResult {
  StateVector state;
  QiteStep step;
  double raw_norm = 1.0;
};

/// One normalized imaginary-time step exp(-tau h) realized as Pauli
/// rotations: build_system -> solve_regularized -> apply_step.
NonunitaryResult nonunitary_step(const StateVector& psi, const PauliSum& h, double tau, const PauliBasis& basis,
                                 double reg, ShotModel& shot, NormEstimate norm = NormEstimate::kFirstOrder);

}  // namespace lindqite
