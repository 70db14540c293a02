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

#include <gtest/gtest.h>

#include <random>

#include "lindqite/errors.hpp"
#include "lindqite/pauli.hpp"
#include "lindqite/state.hpp"
#include "test_util.hpp"

namespace lindqite {
namespace {

using testing::random_state;
using testing::random_sum;

Eigen::MatrixXcd single_dense(char op) {
  Eigen::MatrixXcd m(2, 2);
  const cplx i(0.0, 1.0);
  switch (op) {
    case 'X':
      m << 0, 1, 1, 0;
      break;
    case 'Y':
      m << 0, -i, i, 0;
      break;
    case 'Z':
      m << 1, 0, 0, -1;
      break;
    default:
      m = Eigen::MatrixXcd::Identity(2, 2);
  }
  return m;
}

// Kronecker product of textbook single-qubit matrices, leftmost character on
// the most significant bit.
Eigen::MatrixXcd textbook(const std::string& text) {
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Identity(1, 1);
  for (char c : text) {
    const Eigen::MatrixXcd s = single_dense(c);
    Eigen::MatrixXcd next(out.rows() * 2, out.cols() * 2);
    for (Eigen::Index a = 0; a < out.rows(); ++a) {
      for (Eigen::Index b = 0; b < out.cols(); ++b) next.block(2 * a, 2 * b, 2, 2) = out(a, b) * s;
    }
    out = next;
  }
  return out;
}

Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  }
  return out;
}

TEST(PauliString, TextFormPutsQubitZeroRightmost) {
  const PauliString p = PauliString::parse("XZ");
  EXPECT_EQ(p.op_at(1), 'X');
  EXPECT_EQ(p.op_at(0), 'Z');
  EXPECT_EQ(p.x_mask(), 0b10U);
  EXPECT_EQ(p.z_mask(), 0b01U);
  EXPECT_EQ(p.to_string(), "XZ");
  EXPECT_EQ(PauliString::parse("IYI").y_count(), 1);
  EXPECT_TRUE(PauliString::parse("III").is_identity());
  EXPECT_THROW(PauliString::parse("XQ"), ConfigError);
  EXPECT_THROW(PauliString::parse(""), ConfigError);
}

TEST(PauliString, CanonicalMatricesMatchTextbookPaulis) {
  for (int n = 1; n <= 3; ++n) {
    for (const auto& p : all_strings(n)) {
      EXPECT_TRUE(to_dense(p).isApprox(textbook(p.to_string()), 1e-14)) << p.to_string();
    }
  }
}

TEST(PauliString, MultiplyExamples) {
  auto [p1, r1] = multiply(PauliString::parse("X"), PauliString::parse("X"));
  EXPECT_EQ(p1, cplx(1.0));
  EXPECT_TRUE(r1.is_identity());
  auto [p2, r2] = multiply(PauliString::parse("X"), PauliString::parse("Y"));
  EXPECT_EQ(p2, cplx(0.0, 1.0));
  EXPECT_EQ(r2.to_string(), "Z");
  auto [p3, r3] = multiply(PauliString::parse("XZ"), PauliString::parse("YZ"));
  EXPECT_EQ(p3, cplx(0.0, 1.0));
  EXPECT_EQ(r3.to_string(), "ZI");
  EXPECT_THROW(multiply(PauliString::parse("X"), PauliString::parse("XX")), SizeError);
}

TEST(PauliString, MultiplyMatchesDenseProductExhaustively) {
  for (int n = 1; n <= 3; ++n) {
    const auto strings = all_strings(n);
    for (const auto& p : strings) {
      for (const auto& q : strings) {
        auto [phase, r] = multiply(p, q);
        EXPECT_NEAR(std::abs(phase), 1.0, 0.0);
        EXPECT_TRUE(phase.real() == 0.0 || phase.imag() == 0.0);
        EXPECT_TRUE((phase * to_dense(r)).isApprox(to_dense(p) * to_dense(q), 1e-14));
      }
      auto [sq_phase, sq] = multiply(p, p);
      EXPECT_EQ(sq_phase, cplx(1.0));
      EXPECT_TRUE(sq.is_identity());
    }
  }
}

TEST(PauliString, HermitianUnitaryAndTraceOrthogonal) {
  for (int n = 1; n <= 3; ++n) {
    const auto strings = all_strings(n);
    const double dim = static_cast<double>(1 << n);
    for (const auto& p : strings) {
      const Eigen::MatrixXcd m = to_dense(p);
      EXPECT_TRUE(m.isApprox(m.adjoint()));
      EXPECT_TRUE((m * m).isApprox(Eigen::MatrixXcd::Identity(m.rows(), m.cols())));
      for (const auto& q : strings) {
        const cplx tr = (m * to_dense(q)).trace();
        EXPECT_NEAR(std::abs(tr - (p == q ? dim : 0.0)), 0.0, 1e-12);
      }
    }
  }
}

TEST(PauliString, ApplyMatchesDenseExhaustively) {
  std::mt19937_64 rng(11);
  for (int n = 1; n <= 3; ++n) {
    const StateVector psi = random_state(n, rng);
    for (const auto& p : all_strings(n)) {
      const StateVector out = apply_string(p, psi);
      EXPECT_TRUE(out.amplitudes().isApprox(to_dense(p) * psi.amplitudes(), 1e-13)) << p.to_string();
    }
  }
  EXPECT_TRUE(apply_string(PauliString::parse("X"), StateVector::basis("0")).amplitudes().isApprox(
      StateVector::basis("1").amplitudes()));
  EXPECT_TRUE(apply_string(PauliString::parse("Z"), StateVector::basis("1")).amplitudes().isApprox(
      -StateVector::basis("1").amplitudes()));
}

TEST(PauliSum, NormalizationMergesAndDrops) {
  const PauliSum s = PauliSum::parse("0.5*XZ + 0.25*XZ - 0.75*XZ + 2*ZZ + 1e-16*XX");
  ASSERT_EQ(s.size(), 1U);
  EXPECT_EQ(s.coeff(PauliString::parse("ZZ")), cplx(2.0));
  EXPECT_EQ(s.coeff(PauliString::parse("XX")), cplx(0.0));
  EXPECT_TRUE(PauliSum::parse("0.5*II - 0.5*ZZ").is_hermitian());
  EXPECT_FALSE(PauliSum::parse("(0,1)*XY").is_hermitian());
  EXPECT_EQ(PauliSum::parse("(0,1)*XY").coeff(PauliString::parse("XY")), cplx(0.0, 1.0));
  EXPECT_THROW(PauliSum::parse("0.5*X + 0.5*XX"), std::exception);
  EXPECT_THROW(PauliSum::parse("0.5*"), ConfigError);
}

TEST(PauliSum, TextRoundTrip) {
  std::mt19937_64 rng(3);
  for (int k = 0; k < 20; ++k) {
    const PauliSum s = random_sum(3, 5, k % 2 == 0, rng);
    EXPECT_EQ(PauliSum::parse(s.to_string()), s) << s.to_string();
  }
}

TEST(PauliSum, TransformExamples) {
  EXPECT_EQ(transform(PauliSum::parse("Y"), Transform::kTranspose), PauliSum::parse("-1*Y"));
  EXPECT_EQ(transform(PauliSum::parse("(0,1)*X"), Transform::kConjugate), PauliSum::parse("(0,-1)*X"));
  EXPECT_EQ(adjoint(sigma_minus(1, 0)), sigma_plus(1, 0));
  EXPECT_EQ(sigma_minus(1, 0), PauliSum::parse("0.5*X + (0,0.5)*Y"));
  // sigma_minus lowers the excited state |1> to |0>.
  Eigen::MatrixXcd lower = Eigen::MatrixXcd::Zero(2, 2);
  lower(0, 1) = 1.0;
  EXPECT_TRUE(to_dense(sigma_minus(1, 0)).isApprox(lower));
}

TEST(PauliSum, TransformsMatchDenseAndCompose) {
  std::mt19937_64 rng(5);
  for (int k = 0; k < 30; ++k) {
    const int n = 1 + k % 3;
    const PauliSum s = random_sum(n, 6, false, rng);
    const Eigen::MatrixXcd m = to_dense(s);
    EXPECT_TRUE(to_dense(transform(s, Transform::kConjugate)).isApprox(m.conjugate(), 1e-13));
    EXPECT_TRUE(to_dense(transform(s, Transform::kTranspose)).isApprox(m.transpose(), 1e-13));
    EXPECT_TRUE(to_dense(adjoint(s)).isApprox(m.adjoint(), 1e-13));
    EXPECT_EQ(adjoint(adjoint(s)), s);
    EXPECT_EQ(adjoint(s), transform(transform(s, Transform::kTranspose), Transform::kConjugate));
  }
}

TEST(PauliSum, ProductMatchesDense) {
  std::mt19937_64 rng(9);
  for (int k = 0; k < 20; ++k) {
    const PauliSum a = random_sum(2, 4, false, rng);
    const PauliSum b = random_sum(2, 4, false, rng);
    EXPECT_TRUE(to_dense(a * b).isApprox(to_dense(a) * to_dense(b), 1e-12));
    EXPECT_TRUE(to_dense(a + b).isApprox(to_dense(a) + to_dense(b), 1e-12));
    EXPECT_TRUE(to_dense(a - b).isApprox(to_dense(a) - to_dense(b), 1e-12));
  }
}

TEST(PauliSum, TensorPlacesLeftOnHighBits) {
  const PauliSum h = PauliSum::parse("0.3*X + 0.7*Z");
  const PauliSum ih = tensor(PauliSum::identity(1), h);
  for (const auto& t : ih.terms()) EXPECT_EQ(t.string.support() & 0b10U, 0U);

  const PauliSum sm = sigma_minus(1, 0);
  const PauliSum smsm = tensor(sm, sm);
  EXPECT_EQ(smsm.size(), 4U);
  EXPECT_TRUE(to_dense(smsm).isApprox(kron(to_dense(sm), to_dense(sm)), 1e-14));

  std::mt19937_64 rng(13);
  for (int k = 0; k < 10; ++k) {
    const PauliSum a = random_sum(1, 3, false, rng);
    const PauliSum b = random_sum(2, 3, false, rng);
    EXPECT_TRUE(to_dense(tensor(a, b)).isApprox(kron(to_dense(a), to_dense(b)), 1e-13));
    const Eigen::MatrixXcd left = to_dense(tensor(a, PauliSum::identity(2)));
    const Eigen::MatrixXcd right = to_dense(tensor(PauliSum::identity(1), b));
    EXPECT_TRUE((left * right).isApprox(right * left, 1e-13));
  }
}

TEST(PauliSum, EmbedLowAndAllStrings) {
  const PauliSum z = PauliSum::parse("Z");
  EXPECT_EQ(embed_low(z, 3), PauliSum::parse("IIZ"));
  const auto strings = all_strings(2);
  ASSERT_EQ(strings.size(), 16U);
  EXPECT_TRUE(strings.front().is_identity());
}

}  // namespace
}  // namespace lindqite
