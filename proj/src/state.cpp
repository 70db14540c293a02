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

#include "lindqite/state.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "lindqite/errors.hpp"

namespace lindqite {
namespace {

void check_state_qubits(int n) {
  if (n < 1 || n > kMaxStateQubits) throw SizeError("state qubit count " + std::to_string(n) + " out of range");
}

void require_same_dim(const StateVector& a, const StateVector& b, const char* what) {
  if (a.dim() != b.dim()) throw SizeError(std::string(what) + ": dimension mismatch");
}

void require_register(const StateVector& psi, int n_qubits, const char* what) {
  if (psi.n_qubits() != n_qubits) throw SizeError(std::string(what) + ": operator and state qubit counts differ");
}

// Index of the single nonzero amplitude, if the state is a basis state.
std::optional<std::uint64_t> basis_index(const StateVector& psi) {
  std::optional<std::uint64_t> found;
  for (std::size_t i = 0; i < psi.dim(); ++i) {
    if (psi[i] != cplx(0.0)) {
      if (found) return std::nullopt;
      found = i;
    }
  }
  return found;
}

// Expectation of a Hermitian string on an arbitrary (unnormalized) state,
// optionally replaced by a sampled estimate.
double string_expectation(const StateVector& u, const PauliString& sigma, ShotModel* shot) {
  const double exact = kernels::active().pauli_element(sigma.masks(), u.span(), u.span()).real();
  if (shot == nullptr || shot->is_exact()) return exact;
  const double norm2 = u.amplitudes().squaredNorm();
  if (norm2 == 0.0) return 0.0;
  return norm2 * shot->sample_mean(exact / norm2);
}

cplx decomposed_element(const StateVector& phi_x, const StateVector& phi_y, const PauliString& sigma,
                        ShotModel* shot) {
  const double r = 1.0 / std::sqrt(2.0);
  const cplx i(0.0, 1.0);
  const auto& ax = phi_x.amplitudes();
  const auto& ay = phi_y.amplitudes();
  const int n = phi_x.n_qubits();
  const double e_plus = string_expectation(StateVector(n, r * (ax + ay)), sigma, shot);
  const double e_minus = string_expectation(StateVector(n, r * (ax - ay)), sigma, shot);
  const double f_minus = string_expectation(StateVector(n, r * (ax - i * ay)), sigma, shot);
  const double f_plus = string_expectation(StateVector(n, r * (ax + i * ay)), sigma, shot);
  return {0.5 * (e_plus - e_minus), 0.5 * (f_minus - f_plus)};
}

}  // namespace

// ---------------------------------------------------------------------------

StateVector::StateVector(int n_qubits) : n_qubits_(n_qubits) {
  check_state_qubits(n_qubits);
  amps_ = Eigen::VectorXcd::Zero(Eigen::Index{1} << n_qubits);
  amps_[0] = 1.0;
}

StateVector::StateVector(int n_qubits, Eigen::VectorXcd amplitudes) : n_qubits_(n_qubits), amps_(std::move(amplitudes)) {
  check_state_qubits(n_qubits);
  if (amps_.size() != (Eigen::Index{1} << n_qubits)) throw SizeError("StateVector: amplitude count is not 2^n");
}

StateVector StateVector::basis(int n_qubits, std::uint64_t index) {
  check_state_qubits(n_qubits);
  if (index >= (std::uint64_t{1} << n_qubits)) throw SizeError("basis index out of range");
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(Eigen::Index{1} << n_qubits);
  v[static_cast<Eigen::Index>(index)] = 1.0;
  return StateVector(n_qubits, std::move(v));
}

StateVector StateVector::basis(std::string_view bits) {
  std::uint64_t index = 0;
  for (char c : bits) {
    if (c != '0' && c != '1') throw ConfigError("bit-string must contain only 0 and 1: " + std::string(bits));
    index = (index << 1) | static_cast<std::uint64_t>(c == '1');
  }
  return basis(static_cast<int>(bits.size()), index);
}

StateVector StateVector::normalized() const {
  const double nrm = norm();
  if (!(nrm > 0.0) || !std::isfinite(nrm)) throw ContractError("cannot normalize a zero or non-finite state");
  return StateVector(n_qubits_, amps_ / nrm);
}

bool StateVector::is_normalized(double tol) const { return std::abs(norm() - 1.0) <= tol; }

DensityMatrix::DensityMatrix(int n_qubits, Eigen::MatrixXcd entries) : n_qubits_(n_qubits), rho_(std::move(entries)) {
  check_state_qubits(n_qubits);
  const Eigen::Index dim = Eigen::Index{1} << n_qubits;
  if (rho_.rows() != dim || rho_.cols() != dim) throw SizeError("DensityMatrix: shape is not 2^n x 2^n");
}

DensityMatrix DensityMatrix::pure(const StateVector& psi) {
  return DensityMatrix(psi.n_qubits(), psi.amplitudes() * psi.amplitudes().adjoint());
}

DensityMatrix DensityMatrix::diagonal(int n_qubits, std::span<const std::pair<std::uint64_t, double>> weights) {
  check_state_qubits(n_qubits);
  const Eigen::Index dim = Eigen::Index{1} << n_qubits;
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(dim, dim);
  for (const auto& [index, w] : weights) {
    if (static_cast<Eigen::Index>(index) >= dim) throw SizeError("bit-string index out of range");
    rho(static_cast<Eigen::Index>(index), static_cast<Eigen::Index>(index)) += w;
  }
  return DensityMatrix(n_qubits, std::move(rho));
}

cplx DensityMatrix::expectation(const PauliSum& o) const {
  if (o.n_qubits() != n_qubits_) throw SizeError("DensityMatrix::expectation: qubit counts differ");
  return (to_dense(o) * rho_).trace();
}

// ---------------------------------------------------------------------------

std::uint64_t CounterRng::next_u64() {
  ++counter_;
  std::uint64_t z = seed_ + counter_ * 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

double CounterRng::next_uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

std::uint64_t binomial_inverse(std::uint64_t trials, double p, double u) {
  if (trials == 0 || p <= 0.0) return 0;
  if (p >= 1.0) return trials;
  const double n = static_cast<double>(trials);
  const auto mode = static_cast<std::uint64_t>(std::min(n, std::floor((n + 1.0) * p)));
  // Mass beyond 12 standard deviations is far below double resolution.
  const double sd = std::sqrt(n * p * (1.0 - p));
  const auto half = static_cast<std::uint64_t>(std::ceil(12.0 * sd)) + 12;
  const std::uint64_t lo = mode > half ? mode - half : 0;
  const std::uint64_t hi = std::min(trials, mode + half);

  std::vector<double> pmf(hi - lo + 1);
  const double odds = p / (1.0 - p);
  pmf[mode - lo] = 1.0;  // relative weights; normalized below
  for (std::uint64_t k = mode; k < hi; ++k) {
    pmf[k + 1 - lo] = pmf[k - lo] * (n - static_cast<double>(k)) / static_cast<double>(k + 1) * odds;
  }
  for (std::uint64_t k = mode; k > lo; --k) {
    pmf[k - 1 - lo] = pmf[k - lo] * static_cast<double>(k) / (n - static_cast<double>(k) + 1.0) / odds;
  }
  double total = 0.0;
  for (double w : pmf) total += w;
  const double target = u * total;
  double acc = 0.0;
  for (std::uint64_t k = lo; k <= hi; ++k) {
    acc += pmf[k - lo];
    if (acc > target) return k;
  }
  return hi;
}

double ShotModel::sample_mean(double expectation) {
  if (shots_ == 0) return expectation;
  const double e = std::clamp(expectation, -1.0, 1.0);
  const std::uint64_t plus = binomial_inverse(shots_, 0.5 * (1.0 + e), rng_.next_uniform());
  return (2.0 * static_cast<double>(plus) - static_cast<double>(shots_)) / static_cast<double>(shots_);
}

// ---------------------------------------------------------------------------

cplx inner(const StateVector& phi, const StateVector& psi) {
  require_same_dim(phi, psi, "inner");
  return kernels::active().inner(phi.span(), psi.span());
}

StateVector apply_string(const PauliString& p, const StateVector& psi) {
  require_register(psi, p.n_qubits(), "apply_string");
  StateVector out(psi.n_qubits(), Eigen::VectorXcd(psi.amplitudes().size()));
  kernels::active().apply_pauli(p.masks(), psi.span(), out.span());
  return out;
}

void pauli_rotation_inplace(StateVector& psi, const PauliString& sigma, double theta) {
  require_register(psi, sigma.n_qubits(), "pauli_rotation");
  if (theta == 0.0) return;
  kernels::active().pauli_rotation(sigma.masks(), std::cos(theta), std::sin(theta), psi.span());
}

StateVector pauli_rotation(const StateVector& psi, const PauliString& sigma, double theta) {
  StateVector out = psi;
  pauli_rotation_inplace(out, sigma, theta);
  return out;
}

double expectation(const StateVector& psi, const PauliString& sigma) {
  require_register(psi, sigma.n_qubits(), "expectation");
  return kernels::active().pauli_element(sigma.masks(), psi.span(), psi.span()).real();
}

cplx expectation(const StateVector& psi, const PauliSum& s) {
  ShotModel exact;
  return expectation(psi, s, exact);
}

cplx expectation(const StateVector& psi, const PauliSum& s, ShotModel& shot) {
  if (s.empty()) return 0.0;
  require_register(psi, s.n_qubits(), "expectation");
  if (!shot.is_exact() && !psi.is_normalized()) {
    throw ContractError("expectation: shot sampling requires a normalized state");
  }
  cplx acc{0.0, 0.0};
  for (const auto& t : s.terms()) acc += t.coeff * shot.sample_mean(expectation(psi, t.string));
  return acc;
}

cplx matrix_element(const StateVector& phi_x, const StateVector& phi_y, const PauliString& sigma) {
  require_same_dim(phi_x, phi_y, "matrix_element");
  require_register(phi_x, sigma.n_qubits(), "matrix_element");
  return kernels::active().pauli_element(sigma.masks(), phi_x.span(), phi_y.span());
}

cplx matrix_element(const StateVector& phi_x, const StateVector& phi_y, const PauliSum& s) {
  cplx acc{0.0, 0.0};
  for (const auto& t : s.terms()) acc += t.coeff * matrix_element(phi_x, phi_y, t.string);
  return acc;
}

cplx matrix_element(const StateVector& phi_x, const StateVector& phi_y, const PauliSum& s, ShotModel& shot) {
  if (shot.is_exact()) return matrix_element(phi_x, phi_y, s);
  require_same_dim(phi_x, phi_y, "matrix_element");
  if (!phi_x.is_normalized() || !phi_y.is_normalized()) {
    throw ContractError("matrix_element: shot sampling requires normalized states");
  }
  if (phi_x.amplitudes() == phi_y.amplitudes()) return expectation(phi_x, s, shot);

  // Computational-basis pairs: a term can only connect x and y when they agree
  // outside its support, so other terms are known zeros and cost no shots.
  std::optional<std::uint64_t> bx;
  std::optional<std::uint64_t> by;
  if (shot.local_shortcut()) {
    bx = basis_index(phi_x);
    by = basis_index(phi_y);
  }
  cplx acc{0.0, 0.0};
  for (const auto& t : s.terms()) {
    if (bx && by && ((*bx ^ *by) & ~t.string.support()) != 0) continue;
    acc += t.coeff * decomposed_element(phi_x, phi_y, t.string, &shot);
  }
  return acc;
}

cplx overlap(const StateVector& phi, const StateVector& psi, ShotModel& shot) {
  const cplx exact = inner(phi, psi);
  if (shot.is_exact()) return exact;
  const double scale = phi.norm() * psi.norm();
  if (scale == 0.0) return 0.0;
  const cplx unit = exact / scale;
  return scale * cplx(shot.sample_mean(unit.real()), shot.sample_mean(unit.imag()));
}

cplx matrix_element_via_superpositions(const StateVector& phi_x, const StateVector& phi_y, const PauliSum& s) {
  require_same_dim(phi_x, phi_y, "matrix_element");
  cplx acc{0.0, 0.0};
  for (const auto& t : s.terms()) acc += t.coeff * decomposed_element(phi_x, phi_y, t.string, nullptr);
  return acc;
}

}  // namespace lindqite
