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

// Purification-ansatz propagation: rho = sum_x p_x U|x><x|U^dagger is carried as
// weights p_x and branches phi_x = U|x>. Dissipative factors update the
// weights directly and rotate every branch by the same exp(+iA).

#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "lindqite/lindblad.hpp"
#include "lindqite/qite.hpp"
#include "lindqite/trajectory.hpp"

namespace lindqite::ansatz {

/// Weight below which a branch counts as negative.
inline constexpr double kNegativeWeightTol = 1e-9;

struct AnsatzState {
  int n_qubits = 0;
  std::vector<std::uint64_t> index_set;
  std::vector<double> p;
  std::vector<StateVector> phi;
  double dropped_mass = 0.0;  // cumulative weight removed from the index set
  double raw_weight = 1.0;    // sum of p before the last renormalization

  std::size_t size() const { return index_set.size(); }
  std::string label(std::size_t j) const;
};

enum class DissipatorOrder {
  kCombined,    // V and W of one jump assembled at the same state, one solve
  kSequential,  // V solve, then W solve
};

struct Config {
  double tau = 0.05;
  int n_steps = 0;
  PauliBasis basis;  // on n qubits; empty means full
  double reg = 0.0;
  ShotModel shot;
  double prune_threshold = 0.0;
  DissipatorOrder order = DissipatorOrder::kCombined;
};

/// Parses an n-bit string, rightmost character is qubit 0.
std::uint64_t parse_bits(std::string_view bits);
std::string format_bits(std::uint64_t index, int n_qubits);

AnsatzState init_ansatz(std::span<const std::pair<std::string, double>> weights, int n_qubits);
/// Every bit-string on n qubits, weight concentrated on `occupied`.
AnsatzState init_all(int n_qubits, std::uint64_t occupied);

AnsatzState unitary_step(const AnsatzState& s, const PauliSum& h, double tau);

/// Weight shifts and least-squares system for one dissipative factor.
struct Update {
  Eigen::VectorXd q;
  Eigen::MatrixXd s;
  Eigen::VectorXd b;
};

/// Elements <phi_x|sigma|phi_y>, each sampled at most once per state.
class ElementCache {
 public:
  ElementCache(const AnsatzState& s, ShotModel& shot) : state_(s), shot_(shot) {}
  cplx operator()(const PauliString& sigma, std::size_t x, std::size_t y);
  /// <phi_x|op|phi_y> assembled from string elements.
  cplx operator()(const PauliSum& op, std::size_t x, std::size_t y);
  std::size_t evaluations() const { return evaluations_; }

 private:
  struct Key {
    PauliString sigma;
    std::size_t x;
    std::size_t y;
    auto operator<=>(const Key&) const = default;
  };
  const AnsatzState& state_;
  ShotModel& shot_;
  std::map<Key, cplx> cache_;
  std::size_t evaluations_ = 0;
};

Eigen::MatrixXd assemble_s(const AnsatzState& s, const PauliBasis& basis, ElementCache& e);
/// exp(-tau L^T Lbar / 2) (x) exp(-tau L^dagger L / 2) to first order.
Update assemble_v(const AnsatzState& s, const PauliSum& l, double tau, const PauliBasis& basis, ElementCache& e);
/// exp(tau Lbar (x) L) to first order.
Update assemble_w(const AnsatzState& s, const PauliSum& l, double tau, const PauliBasis& basis, ElementCache& e);

/// p <- p + q, phi <- exp(+iA) phi with (S + reg) a = b. Mass that a partial
/// index set cannot hold is moved into dropped_mass.
AnsatzState apply_update(const AnsatzState& s, const Update& u, const PauliBasis& basis, double reg,
                         QiteStep* solved = nullptr);

AnsatzState vk_step(const AnsatzState& s, const PauliSum& l, double tau, const PauliBasis& basis, double reg,
                    ShotModel& shot);
AnsatzState wk_step(const AnsatzState& s, const PauliSum& l, double tau, const PauliBasis& basis, double reg,
                    ShotModel& shot);
/// Both factors of one jump from a single assembly.
AnsatzState jump_step(const AnsatzState& s, const PauliSum& l, double tau, const PauliBasis& basis, double reg,
                      ShotModel& shot);

AnsatzState step(const AnsatzState& s, const LindbladModel& m, Config& cfg, long* solves = nullptr);

double observe(const AnsatzState& s, const PauliSum& o);
double observe(const AnsatzState& s, const PauliSum& o, ShotModel& shot);

AnsatzState prune(const AnsatzState& s, double threshold);

DensityMatrix reconstruct(const AnsatzState& s);
double weight_sum(const AnsatzState& s);
/// Largest |<phi_j|phi_k> - delta_jk|.
double orthonormality_error(const AnsatzState& s);

Trajectory run(const LindbladModel& m, const AnsatzState& initial, Config cfg,
               std::span<const NamedObservable> observables);

}  // namespace lindqite::ansatz
