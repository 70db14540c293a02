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

#include <algorithm>
#include <cmath>
#include <random>

#include <unsupported/Eigen/KroneckerProduct>

#include "lindqite/ansatz.hpp"
#include "lindqite/errors.hpp"
#include "lindqite/oracle.hpp"
#include "ansatz_oracle.hpp"
#include "test_util.hpp"

namespace lindqite::ansatz {
namespace {

using lindqite::testing::random_sum;

using testing::dense_fit;
using testing::dense_v_increment;
using testing::dense_w_increment;
using testing::random_ansatz;
using testing::random_jump;

TEST(Bits, ParseAndFormat) {
  EXPECT_EQ(parse_bits("10"), 2u);
  EXPECT_EQ(parse_bits("001"), 1u);
  EXPECT_EQ(format_bits(2, 3), "010");
  EXPECT_THROW(parse_bits("12"), ConfigError);
}

TEST(Init, Examples) {
  const std::pair<std::string, double> tls[] = {{"1", 1.0}};
  const auto a = init_ansatz(tls, 1);
  EXPECT_EQ(a.index_set, std::vector<std::uint64_t>{1});
  EXPECT_EQ(a.phi[0].amplitudes(), StateVector::basis(1, 1).amplitudes());
  const std::pair<std::string, double> tfim[] = {{"11", 1.0}};
  EXPECT_EQ(init_ansatz(tfim, 2).label(0), "11");
  const auto all = init_all(2, 3);
  EXPECT_EQ(all.size(), 4u);
  EXPECT_EQ(all.p[3], 1.0);

  const std::pair<std::string, double> dup[] = {{"1", 0.5}, {"1", 0.5}};
  EXPECT_THROW(init_ansatz(dup, 1), ConfigError);
  const std::pair<std::string, double> neg[] = {{"0", 1.5}, {"1", -0.5}};
  EXPECT_THROW(init_ansatz(neg, 1), ConfigError);
  const std::pair<std::string, double> sum[] = {{"0", 0.5}, {"1", 0.4}};
  EXPECT_THROW(init_ansatz(sum, 1), ConfigError);
  const std::pair<std::string, double> len[] = {{"01", 1.0}};
  EXPECT_THROW(init_ansatz(len, 1), ConfigError);
}

TEST(Init, MaximallyMixedIsStationaryUnderHamiltonian) {
  const std::pair<std::string, double> uniform[] = {{"00", 0.25}, {"01", 0.25}, {"10", 0.25}, {"11", 0.25}};
  const auto s = init_ansatz(uniform, 2);
  const auto m = tfim_model(2, 1, 1, 0);
  Config cfg;
  cfg.tau = 0.05;
  cfg.n_steps = 20;
  const std::vector<NamedObservable> obs = {{"mag", average_magnetization(2)}};
  const auto traj = run(m, s, cfg, obs);
  for (const auto& r : traj.records) {
    EXPECT_NEAR(r.values[0], 0.0, 1e-12);
    EXPECT_NEAR(r.purity, 0.25, 1e-15);
  }
}

TEST(UnitaryStep, Examples) {
  std::mt19937_64 rng(70);
  const auto s = random_ansatz(2, rng);
  const auto same = unitary_step(s, PauliSum(2), 0.3);
  for (std::size_t x = 0; x < s.size(); ++x) EXPECT_EQ(same.phi[x].amplitudes(), s.phi[x].amplitudes());
  const auto moved = unitary_step(s, random_sum(2, 4, true, rng), 0.3);
  EXPECT_EQ(moved.p, s.p);
  EXPECT_LE(orthonormality_error(moved), 1e-12);
}

TEST(UnitaryStep, ClosedRunMatchesBranchTrotter) {
  const auto m = tfim_model(2, 1, 1, 0);
  const auto init = init_all(2, 3);
  Config cfg;
  cfg.tau = 0.05;
  cfg.n_steps = 40;
  const std::vector<NamedObservable> obs = {{"mag", average_magnetization(2)}};
  const auto traj = run(m, init, cfg, obs);
  EXPECT_EQ(traj.linear_solves, 0);
  StateVector psi = StateVector::basis("11");
  for (int k = 1; k <= cfg.n_steps; ++k) {
    for (const auto& t : m.hamiltonian().terms()) pauli_rotation_inplace(psi, t.string, t.coeff.real() * cfg.tau);
    EXPECT_NEAR(traj.records[static_cast<std::size_t>(k)].values[0],
                expectation(psi, average_magnetization(2)).real(), 1e-12);
  }
  // Against the exact unitary the first-order Trotter error stays O(tau).
  const auto exact = oracle::dense_expm_apply(cplx(0.0, -1.0) * m.hamiltonian(), 2.0, StateVector::basis("11"));
  EXPECT_NEAR(traj.series("mag").back(), expectation(exact, average_magnetization(2)).real(), 0.1);
}

TEST(VkStep, ProportionalToIdentity) {
  const double gamma = 0.8;
  const double tau = 0.01;
  const auto l = std::sqrt(gamma) * PauliSum::parse("X");
  std::mt19937_64 rng(71);
  const auto s = random_ansatz(1, rng);
  ShotModel exact;
  ElementCache e(s, exact);
  const auto u = assemble_v(s, l, tau, PauliBasis::full(1), e);
  for (std::size_t x = 0; x < s.size(); ++x) EXPECT_NEAR(u.q[static_cast<Eigen::Index>(x)], -tau * gamma * s.p[x], 1e-15);
  EXPECT_LE(u.b.norm(), 1e-15);
  QiteStep st;
  apply_update(s, u, PauliBasis::full(1), 0.0, &st);
  EXPECT_LE(st.a.norm(), 1e-12);
}

TEST(VkStep, TlsWeights) {
  const double gamma = 1.0;
  const double tau = 0.05;
  const auto l = tls_model(0, 0, gamma).jumps()[0];
  auto s = init_all(1, 1);
  s.p = {0.3, 0.7};
  ShotModel exact;
  ElementCache e(s, exact);
  const auto v = assemble_v(s, l, tau, PauliBasis::full(1), e);
  EXPECT_NEAR(v.q[0], 0.0, 1e-15);
  EXPECT_NEAR(v.q[1], -tau * gamma * 0.7, 1e-15);
  const auto w = assemble_w(s, l, tau, PauliBasis::full(1), e);
  EXPECT_NEAR(w.q[0], tau * gamma * 0.7, 1e-15);
  EXPECT_NEAR(w.q[1], 0.0, 1e-15);
  // The combined update is the classical rate equation dp1 = -gamma p1 dt.
  const auto next = jump_step(s, l, tau, PauliBasis::full(1), 0.0, exact);
  EXPECT_NEAR(next.p[1], 0.7 * (1.0 - gamma * tau), 1e-14);
  EXPECT_NEAR(next.p[0], 0.3 + 0.7 * gamma * tau, 1e-14);
}

TEST(VkStep, HalfFactorEquivalence) {
  // q_x = -tau p_x Re<M> equals the two-sided form -tau p_x (<B> + conj<B>) with B = M / 2.
  std::mt19937_64 rng(72);
  for (int trial = 0; trial < 10; ++trial) {
    const auto s = random_ansatz(2, rng);
    const auto l = random_jump(2, rng);
    const PauliSum b = 0.5 * (adjoint(l) * l);
    ShotModel exact;
    ElementCache e(s, exact);
    const auto u = assemble_v(s, l, 0.01, PauliBasis::full(2), e);
    for (std::size_t x = 0; x < s.size(); ++x) {
      const cplx eb = expectation(s.phi[x], b);
      EXPECT_NEAR(u.q[static_cast<Eigen::Index>(x)], -0.01 * s.p[x] * (eb + std::conj(eb)).real(), 1e-14);
    }
  }
}

TEST(Assembly, SMatchesDenseGram) {
  std::mt19937_64 rng(73);
  for (int n = 1; n <= 2; ++n) {
    const auto basis = PauliBasis::full(n);
    for (int trial = 0; trial < 10; ++trial) {
      const auto s = random_ansatz(n, rng);
      ShotModel exact;
      ElementCache e(s, exact);
      const auto fit = dense_fit(s, Eigen::MatrixXcd::Zero(1 << n, 1 << n), basis);
      EXPECT_LE((assemble_s(s, basis, e) - fit.s).norm(), 1e-12);
    }
  }
}

TEST(Assembly, MatchesDensePropagatorToSecondOrder) {
  std::mt19937_64 rng(74);
  for (int n = 1; n <= 2; ++n) {
    const auto basis = PauliBasis::full(n);
    for (int trial = 0; trial < 10; ++trial) {
      const auto s = random_ansatz(n, rng);
      const auto l = random_jump(n, rng);
      const Eigen::MatrixXcd rho = reconstruct(s).matrix();
      double residual[2] = {0.0, 0.0};
      const double taus[2] = {1e-2, 1e-3};
      for (int k = 0; k < 2; ++k) {
        const double tau = taus[k];
        ShotModel exact;
        ElementCache e(s, exact);
        const auto v = assemble_v(s, l, tau, basis, e);
        const auto w = assemble_w(s, l, tau, basis, e);
        const auto fv = dense_fit(s, dense_v_increment(rho, l, tau), basis);
        const auto fw = dense_fit(s, dense_w_increment(n, rho, l, tau), basis);
        EXPECT_LE((v.s - fv.s).norm(), 1e-12);
        residual[k] = std::max({(v.q - fv.q).cwiseAbs().maxCoeff(), (v.b - fv.b).cwiseAbs().maxCoeff(),
                                (w.q - fw.q).cwiseAbs().maxCoeff(), (w.b - fw.b).cwiseAbs().maxCoeff()});
      }
      EXPECT_LE(residual[1], 10.0 * taus[1] * taus[1]);
      // Second order: a tenfold smaller step shrinks the residual about a hundredfold.
      EXPECT_GT(residual[0] / residual[1], 50.0);
    }
  }
}

TEST(Assembly, CombinedWeightShiftSumsToZero) {
  std::mt19937_64 rng(75);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 1 + trial % 2;
    const auto s = random_ansatz(n, rng);
    const auto l = random_jump(n, rng);
    ShotModel exact;
    ElementCache e(s, exact);
    const auto v = assemble_v(s, l, 0.05, PauliBasis::full(n), e);
    const auto w = assemble_w(s, l, 0.05, PauliBasis::full(n), e);
    EXPECT_LT(std::abs((v.q + w.q).sum()), 1e-9);
  }
  for (const auto& m : {tls_model(1, 1, 1), tfim_model(2, 1, 1, 0.1)}) {
    auto s = init_all(m.n_qubits(), (std::uint64_t{1} << m.n_qubits()) - 1);
    Config cfg;
    cfg.tau = 0.05;
    cfg.reg = 1e-3;
    cfg.basis = PauliBasis::full(m.n_qubits());
    for (int k = 0; k < 40; ++k) {
      for (const auto& l : m.jumps()) {
        ShotModel exact;
        ElementCache e(s, exact);
        const auto v = assemble_v(s, l, cfg.tau, cfg.basis, e);
        const auto w = assemble_w(s, l, cfg.tau, cfg.basis, e);
        EXPECT_LT(std::abs((v.q + w.q).sum()), 1e-9);
      }
      s = step(s, m, cfg);
    }
  }
}

TEST(Step, InvariantsAlongTrajectory) {
  std::mt19937_64 rng(76);
  for (int trial = 0; trial < 5; ++trial) {
    const auto m = lindqite::testing::random_model(2, 2, rng);
    auto s = init_all(2, 3);
    Config cfg;
    cfg.tau = 0.01;
    cfg.reg = 1e-3;
    for (int k = 0; k < 50; ++k) {
      s = step(s, m, cfg);
      EXPECT_NEAR(weight_sum(s), 1.0, 1e-8);
      EXPECT_LE(orthonormality_error(s), 1e-8);
      for (double w : s.p) EXPECT_GE(w, -kNegativeWeightTol);
    }
  }
}

TEST(Step, NegativeWeightIsAnError) {
  // A step of tau gamma > 1 drains more than the excited weight.
  const auto m = tls_model(0, 0, 1);
  auto s = init_all(1, 1);
  Config cfg;
  cfg.tau = 1.5;
  try {
    step(s, m, cfg);
    FAIL() << "expected a step-size error";
  } catch (const StepSizeError& e) {
    EXPECT_NE(std::string(e.what()).find("bit-string 1 "), std::string::npos) << e.what();
  }
}

TEST(Step, SequentialOrderLeaksAtSecondOrder) {
  const auto m = tls_model(1, 1, 1);
  Config cfg;
  cfg.tau = 0.05;
  cfg.reg = 1e-3;
  cfg.order = DissipatorOrder::kSequential;
  auto s = init_all(1, 1);
  long solves = 0;
  for (int k = 0; k < 10; ++k) s = step(s, m, cfg, &solves);
  EXPECT_EQ(solves, 20);
  EXPECT_NEAR(weight_sum(s), 1.0, 1e-12);
}

TEST(Observe, Examples) {
  const std::pair<std::string, double> uniform[] = {{"0", 0.5}, {"1", 0.5}};
  const auto mixed = init_ansatz(uniform, 1);
  EXPECT_NEAR(observe(mixed, PauliSum::parse("0.3*X + Z - 2*Y")), 0.0, 1e-15);
  std::mt19937_64 rng(77);
  auto single = init_all(2, 1);
  single = unitary_step(single, random_sum(2, 5, true, rng), 0.4);
  const auto o = random_sum(2, 4, true, rng);
  EXPECT_NEAR(observe(single, o), expectation(single.phi[1], o).real(), 1e-14);
}

TEST(Observe, MatchesReconstructionMidTrajectory) {
  const auto m = tls_model(1, 1, 1);
  Config cfg;
  cfg.tau = 0.05;
  cfg.reg = 1e-3;
  auto s = init_all(1, 1);
  for (int k = 0; k < 30; ++k) s = step(s, m, cfg);
  const auto rho = reconstruct(s);
  std::mt19937_64 rng(78);
  for (int trial = 0; trial < 5; ++trial) {
    const auto o = random_sum(1, 3, true, rng);
    EXPECT_NEAR(observe(s, o), rho.expectation(o).real(), 1e-10);
  }
}

TEST(Observe, ShotModeIsUnbiased) {
  std::mt19937_64 rng(79);
  const auto s = random_ansatz(2, rng);
  const auto o = average_magnetization(2);
  const double exact = observe(s, o);
  const int seeds = 200;
  double sum = 0.0;
  double sum2 = 0.0;
  for (int seed = 0; seed < seeds; ++seed) {
    ShotModel shot(2048, static_cast<std::uint64_t>(seed));
    const double v = observe(s, o, shot);
    sum += v;
    sum2 += v * v;
  }
  const double mean = sum / seeds;
  const double sem = std::sqrt((sum2 / seeds - mean * mean) / (seeds - 1));
  EXPECT_LE(std::abs(mean - exact), 5.0 * sem);
}

TEST(Prune, Examples) {
  auto s = init_all(2, 3);
  const auto same = prune(s, 0.0);
  EXPECT_EQ(same.size(), 4u);
  s.p = {0.0, 0.2, 0.3, 0.5};
  const auto one = prune(s, 1e-12);
  EXPECT_EQ(one.size(), 3u);
  EXPECT_EQ(one.p, (std::vector<double>{0.2, 0.3, 0.5}));
  EXPECT_EQ(one.dropped_mass, 0.0);
  const auto two = prune(s, 0.25);
  EXPECT_EQ(two.size(), 2u);
  EXPECT_NEAR(two.dropped_mass, 0.2, 1e-15);
  EXPECT_NEAR(weight_sum(two), 1.0, 1e-15);
  EXPECT_THROW(prune(s, 0.9), StepSizeError);
  EXPECT_THROW(prune(s, -1.0), ContractError);
}

TEST(Prune, DroppedMassBookkeeping) {
  // Late-time TLS with pruning: the reported dropped mass is exactly the weight removed.
  const auto m = tls_model(0, 0, 1);
  Config cfg;
  cfg.tau = 0.05;
  cfg.reg = 1e-3;
  cfg.prune_threshold = 0.02;
  auto s = init_all(1, 1);
  s.p = {0.5, 0.5};
  double removed = 0.0;
  for (int k = 0; k < 120; ++k) {
    Config plain = cfg;
    plain.prune_threshold = 0.0;
    const auto before = step(s, m, plain);
    for (std::size_t x = 0; x < before.size(); ++x) {
      if (before.p[x] < cfg.prune_threshold) removed += before.p[x];
    }
    s = step(s, m, cfg);
    EXPECT_NEAR(s.dropped_mass, removed, 1e-14);
  }
  EXPECT_EQ(s.size(), 1u);
  EXPECT_GT(s.dropped_mass, 0.0);
}

TEST(Run, TlsTracksOracle) {
  const auto m = tls_model(1, 1, 1);
  const auto rho0 = DensityMatrix::pure(StateVector::basis(1, 1));
  std::vector<double> errors;
  for (double tau : {0.05, 0.025}) {
    Config cfg;
    cfg.tau = tau;
    cfg.n_steps = static_cast<int>(std::lround(6.0 / tau));
    cfg.reg = 1e-3;
    const std::vector<NamedObservable> obs = {{"excited", excited_population(1)}};
    const auto traj = run(m, init_all(1, 1), cfg, obs);
    const auto exact = oracle::trajectory(m, rho0, tau, cfg.n_steps);
    double worst = 0.0;
    for (std::size_t k = 0; k < exact.size(); ++k) {
      worst = std::max(worst, std::abs(traj.records[k].values[0] - exact[k](1, 1).real()));
      EXPECT_NEAR(traj.records[k].dropped_mass, 0.0, 1e-15);
    }
    errors.push_back(worst);
  }
  EXPECT_LE(errors[0], 0.02);
  EXPECT_NEAR(errors[0] / errors[1], 2.0, 0.5);
}

TEST(Run, PartialIndexSetRecordsLeakedMass) {
  const auto m = tls_model(1, 1, 1);
  const std::pair<std::string, double> only[] = {{"1", 1.0}};
  Config cfg;
  cfg.tau = 0.05;
  cfg.n_steps = 10;
  cfg.reg = 1e-3;
  const std::vector<NamedObservable> obs = {{"excited", excited_population(1)}};
  const auto traj = run(m, init_ansatz(only, 1), cfg, obs);
  EXPECT_GT(traj.records.back().dropped_mass, 0.0);
  for (std::size_t k = 1; k < traj.records.size(); ++k) {
    EXPECT_GE(traj.records[k].dropped_mass, traj.records[k - 1].dropped_mass);
  }
}

}  // namespace
}  // namespace lindqite::ansatz
