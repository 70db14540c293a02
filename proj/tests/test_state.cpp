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

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "lindqite/errors.hpp"
#include "lindqite/state.hpp"
#include "test_util.hpp"

namespace lindqite {
namespace {

using testing::random_state;
using testing::random_string;
using testing::random_sum;

StateVector plus_state() {
  Eigen::VectorXcd v(2);
  v << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
  return StateVector(1, v);
}

TEST(StateVector, BasisConstruction) {
  const auto s = StateVector::basis("10");
  EXPECT_EQ(s.n_qubits(), 2);
  EXPECT_EQ(s[2], cplx(1.0));
  EXPECT_EQ(StateVector(3)[0], cplx(1.0));
  EXPECT_THROW(StateVector(2, Eigen::VectorXcd::Zero(4)).normalized(), ContractError);
}

TEST(Inner, Examples) {
  EXPECT_EQ(inner(StateVector::basis(1, 0), StateVector::basis(1, 0)), cplx(1.0));
  EXPECT_EQ(inner(StateVector::basis(1, 0), StateVector::basis(1, 1)), cplx(0.0));
  EXPECT_THROW(inner(StateVector(1), StateVector(2)), SizeError);
}

TEST(Inner, MatchesDenseAndIsConjugateLinear) {
  std::mt19937_64 rng(10);
  for (int trial = 0; trial < 20; ++trial) {
    const auto a = random_state(3, rng);
    const auto b = random_state(3, rng);
    EXPECT_NEAR(std::abs(inner(a, b) - a.amplitudes().dot(b.amplitudes())), 0.0, 1e-13);
    const cplx c(0.3, -1.2);
    const StateVector ca(3, c * a.amplitudes());
    EXPECT_NEAR(std::abs(inner(ca, b) - std::conj(c) * inner(a, b)), 0.0, 1e-13);
  }
}

TEST(Expectation, Examples) {
  const auto z = PauliSum::parse("Z");
  EXPECT_NEAR(std::abs(expectation(StateVector::basis(1, 0), z) - 1.0), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(expectation(plus_state(), z)), 0.0, 1e-15);
}

TEST(Expectation, MatchesDense) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const auto psi = random_state(3, rng);
    const auto s = random_sum(3, 6, trial % 2 == 0, rng);
    const cplx dense = psi.amplitudes().dot(to_dense(s) * psi.amplitudes());
    EXPECT_NEAR(std::abs(expectation(psi, s) - dense), 0.0, 1e-12);
  }
}

TEST(Expectation, ShotsRequireNormalizedState) {
  ShotModel shot(100, 1);
  const StateVector psi(1, Eigen::VectorXcd::Constant(2, 1.0));
  EXPECT_THROW(expectation(psi, PauliSum::parse("Z"), shot), ContractError);
}

TEST(MatrixElement, Examples) {
  const auto x = PauliSum::parse("X");
  EXPECT_NEAR(std::abs(matrix_element(StateVector::basis(1, 0), StateVector::basis(1, 1), x) - 1.0), 0.0, 1e-15);
  std::mt19937_64 rng(12);
  const auto phi = random_state(2, rng);
  const auto s = random_sum(2, 4, false, rng);
  EXPECT_NEAR(std::abs(matrix_element(phi, phi, s) - expectation(phi, s)), 0.0, 1e-13);
}

TEST(MatrixElement, MatchesDenseForYZ) {
  std::mt19937_64 rng(13);
  const auto yz = PauliSum::parse("YZ");
  const Eigen::MatrixXcd m = to_dense(yz);
  for (int trial = 0; trial < 20; ++trial) {
    const auto a = random_state(2, rng);
    const auto b = random_state(2, rng);
    const cplx dense = a.amplitudes().dot(m * b.amplitudes());
    EXPECT_NEAR(std::abs(matrix_element(a, b, yz) - dense), 0.0, 1e-13);
  }
}

TEST(MatrixElement, ConjugateSymmetry) {
  std::mt19937_64 rng(14);
  for (int trial = 0; trial < 30; ++trial) {
    const auto a = random_state(3, rng);
    const auto b = random_state(3, rng);
    const auto s = random_sum(3, 5, false, rng);
    EXPECT_NEAR(std::abs(matrix_element(a, b, s) - std::conj(matrix_element(b, a, adjoint(s)))), 0.0, 1e-12);
  }
}

TEST(MatrixElement, SuperpositionIdentity) {
  std::mt19937_64 rng(15);
  for (int trial = 0; trial < 50; ++trial) {
    const auto a = random_state(2, rng);
    const auto b = random_state(2, rng);
    const auto s = random_sum(2, 4, false, rng);
    EXPECT_NEAR(std::abs(matrix_element_via_superpositions(a, b, s) - matrix_element(a, b, s)), 0.0, 1e-10);
  }
}

TEST(PauliRotation, Examples) {
  std::mt19937_64 rng(16);
  const auto psi = random_state(2, rng);
  const auto xi = PauliString::parse("XI");
  EXPECT_EQ(pauli_rotation(psi, xi, 0.0).amplitudes(), psi.amplitudes());
  const auto r = pauli_rotation(StateVector::basis(1, 0), PauliString::parse("X"), std::numbers::pi / 2);
  EXPECT_NEAR(std::abs(r[0]), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(r[1] - cplx(0.0, -1.0)), 0.0, 1e-15);
}

TEST(PauliRotation, MatchesDenseExpmAndPreservesNorm) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> angle(-10.0, 10.0);
  for (int trial = 0; trial < 40; ++trial) {
    const auto psi = random_state(3, rng);
    const auto sigma = random_string(3, rng);
    const double theta = angle(rng);
    const Eigen::MatrixXcd u = testing::dense_expm_hermitian(to_dense(sigma), cplx(0.0, -theta));
    const auto out = pauli_rotation(psi, sigma, theta);
    EXPECT_LE((out.amplitudes() - u * psi.amplitudes()).norm(), 1e-12);
    EXPECT_NEAR(out.norm(), 1.0, 1e-12);
  }
}

TEST(ShotModel, DeterministicGivenSeed) {
  ShotModel a(512, 99);
  ShotModel b(512, 99);
  ShotModel c(512, 100);
  const auto s = PauliSum::parse("0.5*Z + 0.25*X");
  const auto psi = plus_state();
  std::vector<cplx> ra;
  std::vector<cplx> rb;
  std::vector<cplx> rc;
  for (int k = 0; k < 10; ++k) {
    ra.push_back(expectation(psi, s, a));
    rb.push_back(expectation(psi, s, b));
    rc.push_back(expectation(psi, s, c));
  }
  EXPECT_EQ(ra, rb);
  EXPECT_NE(ra, rc);
  EXPECT_EQ(a.draws(), 20u);
}

TEST(ShotModel, CounterRngIsAddressable) {
  CounterRng a(7);
  std::vector<std::uint64_t> seq;
  for (int k = 0; k < 5; ++k) seq.push_back(a.next_u64());
  CounterRng b(7);
  for (int k = 0; k < 5; ++k) EXPECT_EQ(b.next_u64(), seq[static_cast<std::size_t>(k)]);
  for (int k = 0; k < 1000; ++k) {
    const double u = a.next_uniform();
    EXPECT_GE(u, 0.0);
    EXPECT_LT(u, 1.0);
  }
}

TEST(ShotModel, BinomialInverseMatchesCdf) {
  // Median of Binomial(n, 1/2) is n/2; extreme uniforms map to the tails.
  EXPECT_EQ(binomial_inverse(100, 0.5, 0.5), 50u);
  EXPECT_EQ(binomial_inverse(100, 0.5, 0.0), 0u);
  EXPECT_EQ(binomial_inverse(100, 1.0, 0.3), 100u);
  EXPECT_EQ(binomial_inverse(100, 0.0, 0.3), 0u);
  // P(X = 0) for Binomial(3, 0.5) is 1/8.
  EXPECT_EQ(binomial_inverse(3, 0.5, 0.12), 0u);
  EXPECT_EQ(binomial_inverse(3, 0.5, 0.13), 1u);
}

TEST(ShotModel, UnbiasedOnPlusState) {
  const auto z = PauliSum::parse("Z");
  const auto psi = plus_state();
  const int seeds = 100;
  double sum = 0.0;
  double sum2 = 0.0;
  for (int seed = 0; seed < seeds; ++seed) {
    ShotModel shot(512, static_cast<std::uint64_t>(seed));
    const double e = expectation(psi, z, shot).real();
    sum += e;
    sum2 += e * e;
  }
  const double mean = sum / seeds;
  const double sem = std::sqrt(1.0 / 512.0 / seeds);
  EXPECT_LE(std::abs(mean), 4.0 * sem);
  const double var = sum2 / seeds - mean * mean;
  EXPECT_NEAR(std::sqrt(var), 1.0 / std::sqrt(512.0), 0.3 / std::sqrt(512.0));
}

TEST(ShotModel, StandardErrorAt8192Shots) {
  const auto z = PauliSum::parse("Z");
  const auto psi = plus_state();
  const int seeds = 400;
  double sum2 = 0.0;
  for (int seed = 0; seed < seeds; ++seed) {
    ShotModel shot(8192, static_cast<std::uint64_t>(seed) + 1000);
    const double e = expectation(psi, z, shot).real();
    sum2 += e * e;
  }
  EXPECT_NEAR(std::sqrt(sum2 / seeds), 1.0 / std::sqrt(8192.0), 0.15 / std::sqrt(8192.0));
}

TEST(ShotModel, SampledMatrixElementWithinNoise) {
  std::mt19937_64 rng(18);
  const auto a = random_state(2, rng);
  const auto b = random_state(2, rng);
  const auto s = PauliSum::parse("YZ");
  const cplx exact = matrix_element(a, b, s);
  const int seeds = 200;
  cplx sum{0.0, 0.0};
  for (int seed = 0; seed < seeds; ++seed) {
    ShotModel shot(1024, static_cast<std::uint64_t>(seed));
    sum += matrix_element(a, b, s, shot);
  }
  // Each part combines two sampled means with weight 1/2: std <= 1/sqrt(2*1024).
  const double sem = 1.0 / std::sqrt(2.0 * 1024.0 * seeds);
  EXPECT_LE(std::abs((sum / static_cast<double>(seeds)).real() - exact.real()), 5.0 * sem);
  EXPECT_LE(std::abs((sum / static_cast<double>(seeds)).imag() - exact.imag()), 5.0 * sem);
}

TEST(ShotModel, LocalShortcutSkipsDisconnectedTerms) {
  const auto x = StateVector::basis("001");
  const auto y = StateVector::basis("011");
  // Only terms with X or Y on qubit 1 connect x and y: IXZ gives -1, IXI gives 3.
  const auto s = PauliSum::parse("XII + IXZ + ZZI + 3*IXI");
  ShotModel with(256, 5, true);
  ShotModel without(256, 5, false);
  const cplx a = matrix_element(x, y, s, with);
  const cplx b = matrix_element(x, y, s, without);
  EXPECT_LT(with.draws(), without.draws());
  const cplx exact = matrix_element(x, y, s);
  EXPECT_NEAR(std::abs(exact - 2.0), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(a - exact), 0.0, 0.5);
  EXPECT_NEAR(std::abs(b - exact), 0.0, 0.5);
}

TEST(Overlap, ExactAndSampled) {
  std::mt19937_64 rng(19);
  const StateVector a(2, 3.0 * random_state(2, rng).amplitudes());
  const auto b = random_state(2, rng);
  ShotModel exact;
  EXPECT_NEAR(std::abs(overlap(a, b, exact) - inner(a, b)), 0.0, 1e-14);
  cplx sum{0.0, 0.0};
  const int seeds = 200;
  for (int seed = 0; seed < seeds; ++seed) {
    ShotModel shot(2048, static_cast<std::uint64_t>(seed));
    sum += overlap(a, b, shot);
  }
  const double sem = 3.0 / std::sqrt(2048.0 * seeds);
  EXPECT_LE(std::abs(sum / static_cast<double>(seeds) - inner(a, b)), 6.0 * sem);
}

TEST(DensityMatrix, PureAndDiagonal) {
  std::mt19937_64 rng(20);
  const auto psi = random_state(2, rng);
  const auto rho = DensityMatrix::pure(psi);
  EXPECT_NEAR(rho.purity(), 1.0, 1e-12);
  EXPECT_TRUE(rho.is_hermitian());
  const auto s = random_sum(2, 4, true, rng);
  EXPECT_NEAR(std::abs(rho.expectation(s) - expectation(psi, s)), 0.0, 1e-12);
  const std::pair<std::uint64_t, double> w[] = {{0, 0.25}, {3, 0.75}};
  const auto d = DensityMatrix::diagonal(2, w);
  EXPECT_NEAR(d.purity(), 0.625, 1e-15);
  EXPECT_NEAR(std::abs(d.trace() - 1.0), 0.0, 1e-15);
}

}  // namespace
}  // namespace lindqite
