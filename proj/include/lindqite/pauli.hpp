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
#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lindqite/kernels.hpp"

namespace lindqite {

using cplx = std::complex<double>;

inline constexpr int kMaxPauliQubits = 62;

/// Pauli string stored as X and Z bit masks, qubit 0 in the least significant
/// bit. The represented matrix is prod_q i^(x_q z_q) X^x_q Z^z_q, so a qubit
/// with both bits set is Y and every string is Hermitian. Phases produced by
/// products are returned separately and never stored here.
class PauliString {
 public:
  PauliString() = default;
  PauliString(int n_qubits, std::uint64_t x_mask, std::uint64_t z_mask);

  static PauliString identity(int n_qubits) { return PauliString(n_qubits, 0, 0); }
  /// Single-qubit Pauli `op` in {'I','X','Y','Z'} on `qubit`.
  static PauliString single(int n_qubits, int qubit, char op);
  /// Text form over {I,X,Y,Z}; the rightmost character is qubit 0.
  static PauliString parse(std::string_view text);

  int n_qubits() const { return n_qubits_; }
  std::uint64_t x_mask() const { return x_; }
  std::uint64_t z_mask() const { return z_; }
  std::uint64_t support() const { return x_ | z_; }
  bool is_identity() const { return (x_ | z_) == 0; }
  int weight() const;
  /// Number of Y factors.
  int y_count() const;
  char op_at(int qubit) const;
  std::string to_string() const;

  /// i^(number of Y factors): the canonical phase applied on top of X^x Z^z.
  cplx canonical_phase() const;
  kernels::PauliMasks masks() const { return {x_, z_, canonical_phase()}; }

  friend bool operator==(const PauliString&, const PauliString&) = default;
  friend auto operator<=>(const PauliString& a, const PauliString& b) {
    if (auto c = a.n_qubits_ <=> b.n_qubits_; c != 0) return c;
    if (auto c = a.x_ <=> b.x_; c != 0) return c;
    return a.z_ <=> b.z_;
  }

 private:
  int n_qubits_ = 0;
  std::uint64_t x_ = 0;
  std::uint64_t z_ = 0;
};

/// p * q = phase * r with phase in {1, i, -1, -i}.
std::pair<cplx, PauliString> multiply(const PauliString& p, const PauliString& q);

/// out = matrix(p) * in; O(2^n).
void apply_string(const PauliString& p, std::span<const cplx> in, std::span<cplx> out);

/// Dense 2^n x 2^n matrix of a single string.
Eigen::MatrixXcd to_dense(const PauliString& p);

enum class Transform { kConjugate, kTranspose, kAdjoint };

struct PauliTerm {
  cplx coeff;
  PauliString string;
};

/// Complex-weighted sum of Pauli strings. Always normalized: terms sorted by
/// string, equal strings merged, |coeff| < kDropThreshold removed.
class PauliSum {
 public:
  static constexpr double kDropThreshold = 1e-14;

  PauliSum() = default;
  explicit PauliSum(int n_qubits) : n_qubits_(n_qubits) {}
  PauliSum(int n_qubits, std::vector<PauliTerm> terms);
  PauliSum(cplx coeff, const PauliString& s);

  static PauliSum identity(int n_qubits, cplx coeff = 1.0) {
    return PauliSum(coeff, PauliString::identity(n_qubits));
  }
  /// Parses "0.5*II - 0.5*ZZ + (0,1)*XY". A coefficient is a real number or a
  /// parenthesized (re,im) pair and defaults to 1.
  static PauliSum parse(std::string_view text);

  int n_qubits() const { return n_qubits_; }
  std::span<const PauliTerm> terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }
  /// Coefficient of `s`, zero when absent.
  cplx coeff(const PauliString& s) const;

  bool is_hermitian(double tol = 1e-12) const;
  /// Sum of |coeff|; bounds the operator norm.
  double one_norm() const;
  std::string to_string() const;

  PauliSum& operator+=(const PauliSum& other);
  PauliSum& operator-=(const PauliSum& other);
  PauliSum& operator*=(cplx scale);

  friend PauliSum operator+(PauliSum a, const PauliSum& b) { return a += b; }
  friend PauliSum operator-(PauliSum a, const PauliSum& b) { return a -= b; }
  friend PauliSum operator*(PauliSum a, cplx s) { return a *= s; }
  friend PauliSum operator*(cplx s, PauliSum a) { return a *= s; }
  friend PauliSum operator*(const PauliSum& a, const PauliSum& b);
  friend bool operator==(const PauliSum& a, const PauliSum& b);

 private:
  void normalize();

  int n_qubits_ = 0;
  std::vector<PauliTerm> terms_;
};

PauliSum transform(const PauliSum& s, Transform mode);
inline PauliSum adjoint(const PauliSum& s) { return transform(s, Transform::kAdjoint); }

/// Kronecker product with `left` on the most significant qubits.
PauliSum tensor(const PauliSum& left, const PauliSum& right);

/// Zero-padded embedding of `s` into a register of `n_total` qubits on its
/// low-order qubits (i.e. tensor(I, s)).
PauliSum embed_low(const PauliSum& s, int n_total);

Eigen::MatrixXcd to_dense(const PauliSum& s);

/// (X + iY)/2 = |0><1| on `qubit`: lowers the excited state |1> to |0>.
PauliSum sigma_minus(int n_qubits, int qubit);
/// (X - iY)/2 = |1><0| on `qubit`.
PauliSum sigma_plus(int n_qubits, int qubit);

/// All 4^n strings on n qubits in mask order, identity first.
std::vector<PauliString> all_strings(int n_qubits);

}  // namespace lindqite
