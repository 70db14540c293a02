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

#include "lindqite/qite.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>

#include "lindqite/errors.hpp"
#include "lindqite/oracle.hpp"

namespace lindqite {

PauliBasis PauliBasis::explicit_strings(std::vector<PauliString> strings) {
  if (strings.empty()) throw ConfigError("Pauli basis is empty");
  std::set<PauliString> seen;
  for (const auto& s : strings) {
    if (s.n_qubits() != strings.front().n_qubits()) throw ConfigError("Pauli basis strings differ in length");
    if (!seen.insert(s).second) throw ConfigError("duplicate Pauli string in basis: " + s.to_string());
  }
  PauliBasis b;
  b.strings_ = std::move(strings);
  b.origin_ = Origin::kExplicit;
  return b;
}

PauliBasis PauliBasis::random(int n_qubits, int count, std::uint64_t seed) {
  std::vector<PauliString> pool = all_strings(n_qubits);
  pool.erase(pool.begin());  // identity
  if (count < 1 || static_cast<std::size_t>(count) > pool.size()) {
    throw ConfigError("random basis: count must be in [1, " + std::to_string(pool.size()) + "]");
  }
  CounterRng rng(seed);
  for (std::size_t k = 0; k < static_cast<std::size_t>(count); ++k) {
    const std::size_t remaining = pool.size() - k;
    const auto offset = static_cast<std::size_t>(rng.next_uniform() * static_cast<double>(remaining));
    std::swap(pool[k], pool[k + std::min(offset, remaining - 1)]);
  }
  pool.resize(static_cast<std::size_t>(count));
  PauliBasis b;
  b.strings_ = std::move(pool);
  b.origin_ = Origin::kRandom;
  b.seed_ = seed;
  return b;
}

PauliBasis PauliBasis::full(int n_qubits) {
  std::vector<PauliString> pool = all_strings(n_qubits);
  pool.erase(pool.begin());
  PauliBasis b;
  b.strings_ = std::move(pool);
  b.origin_ = Origin::kFull;
  return b;
}

std::string PauliBasis::describe() const {
  std::ostringstream os;
  switch (origin_) {
    case Origin::kFull:
      os << "full(n=" << n_qubits() << ")";
      break;
    case Origin::kRandom:
      os << "random(count=" << size() << ",seed=" << seed_ << ")";
      break;
    case Origin::kExplicit:
      os << "explicit";
      break;
  }
  os << '[';
  for (std::size_t k = 0; k < strings_.size(); ++k) os << (k ? " " : "") << strings_[k].to_string();
  os << ']';
  return os.str();
}

// ---------------------------------------------------------------------------

namespace {

// Expectation values of Hermitian strings, each measured at most once.
class ExpectationCache {
 public:
  ExpectationCache(const StateVector& psi, ShotModel& shot) : psi_(psi), shot_(shot) {}

  double operator()(const PauliString& s) {
    if (s.is_identity()) return 1.0;
    auto [it, inserted] = cache_.try_emplace(s, 0.0);
    if (inserted) it->second = shot_.sample_mean(expectation(psi_, s));
    return it->second;
  }

 private:
  const StateVector& psi_;
  ShotModel& shot_;
  std::map<PauliString, double> cache_;
};

}  // namespace

QiteSystem build_system(const StateVector& psi, const PauliSum& h, double tau, const PauliBasis& basis,
                        ShotModel& shot, NormEstimate norm) {
  if (!psi.is_normalized()) throw ContractError("build_system: state must be normalized");
  if (!h.is_hermitian()) throw ContractError("build_system: generator must be Hermitian");
  if (!h.empty() && h.n_qubits() != psi.n_qubits()) throw SizeError("build_system: generator and state registers differ");
  if (basis.n_qubits() != psi.n_qubits()) throw SizeError("build_system: basis and state registers differ");

  ExpectationCache measure(psi, shot);
  const auto& strings = basis.strings();
  const auto m = static_cast<Eigen::Index>(strings.size());

  QiteSystem sys;
  if (norm == NormEstimate::kExact) {
    sys.c = oracle::dense_expm_apply(h * cplx(-1.0), tau, psi).amplitudes().squaredNorm();
  } else {
    double mean_h = 0.0;
    for (const auto& t : h.terms()) mean_h += t.coeff.real() * measure(t.string);
    sys.c = 1.0 - 2.0 * tau * mean_h;
    if (!(sys.c > kMinNormEstimate)) {
      throw StepSizeError("QITE norm estimate c = " + std::to_string(sys.c) + " <= " +
                          std::to_string(kMinNormEstimate) + "; reduce the time step");
    }
  }

  sys.s = Eigen::MatrixXd::Identity(m, m);
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = i + 1; j < m; ++j) {
      auto [phase, r] = multiply(strings[static_cast<std::size_t>(i)], strings[static_cast<std::size_t>(j)]);
      // Anticommuting pairs have a purely imaginary product phase.
      const double value = phase.real() == 0.0 ? 0.0 : phase.real() * measure(r);
      sys.s(i, j) = value;
      sys.s(j, i) = value;
    }
  }

  const double scale = 1.0 / std::sqrt(sys.c);
  sys.b = Eigen::VectorXd::Zero(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    double acc = 0.0;
    for (const auto& t : h.terms()) {
      auto [phase, r] = multiply(strings[static_cast<std::size_t>(i)], t.string);
      if (phase.imag() != 0.0) acc += t.coeff.real() * phase.imag() * measure(r);
    }
    sys.b[i] = acc * scale;
  }
  return sys;
}

QiteStep solve_regularized(const Eigen::MatrixXd& s, const Eigen::VectorXd& b, double reg) {
  if (s.rows() != s.cols() || s.rows() != b.size()) throw SizeError("solve_regularized: shape mismatch");
  if (!(reg >= 0.0)) throw ContractError("solve_regularized: regularizer must be non-negative");
  if (!s.allFinite() || !b.allFinite()) throw StepSizeError("solve_regularized: non-finite linear system");
  QiteStep out;
  if (s.rows() == 0) return out;
  Eigen::MatrixXd lhs = s;
  lhs.diagonal().array() += reg;
  Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod;
  cod.setThreshold(1e-10);
  cod.compute(lhs);
  out.a = cod.solve(b);
  if (!out.a.allFinite()) throw StepSizeError("solve_regularized: solution is not finite");
  out.residual = (s * out.a - b).norm();
  return out;
}

StateVector apply_step(const StateVector& psi, const PauliBasis& basis, const QiteStep& step, double tau,
                       double* raw_norm) {
  if (static_cast<std::size_t>(step.a.size()) != basis.size()) throw SizeError("apply_step: coefficient count mismatch");
  StateVector out = psi;
  const auto& strings = basis.strings();
  for (std::size_t j = 0; j < strings.size(); ++j) {
    pauli_rotation_inplace(out, strings[j], tau * step.a[static_cast<Eigen::Index>(j)]);
  }
  const double nrm = out.norm();
  if (raw_norm != nullptr) *raw_norm = nrm;
  return out.normalized();
}

NonunitaryResult nonunitary_step(const StateVector& psi, const PauliSum& h, double tau, const PauliBasis& basis,
                                 double reg, ShotModel& shot, NormEstimate norm) {
  const QiteSystem sys = build_system(psi, h, tau, basis, shot, norm);
  NonunitaryResult out;
  out.step = solve_regularized(sys.s, sys.b, reg);
  out.step.c_norm = sys.c;
  out.state = apply_step(psi, basis, out.step, tau, &out.raw_norm);
  return out;
}

}  // namespace lindqite
