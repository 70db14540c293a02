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

#include <span>

#include "lindqite/lindblad.hpp"
#include "lindqite/qite.hpp"
#include "lindqite/trajectory.hpp"

// Vectorized-density-operator integrator: alternating exp(-i h1 tau) Pauli
// rotations and QITE steps for exp(-h2 tau) on the 2n-qubit state vec(rho).

namespace lindqite::vectorized {

struct Config {
  double tau = 0.05;
  int n_steps = 0;
  PauliBasis basis;  // on 2n qubits
  double reg = 0.0;
  ShotModel shot;
  int trotter_substeps = 1;
};

/// Normalized vec(rho) plus the purity of the initial rho.
struct State {
  StateVector v;
  double purity0 = 1.0;
};

struct StepReport {
  double raw_norm = 1.0;  // <v|v>^(1/2) after the rotations, before renormalization
  double qite_residual = 0.0;
  bool qite_invoked = false;
};

State init(const DensityMatrix& rho0);

/// One first-order Trotter step. Mutates `cfg.shot` when sampling.
State step(const State& s, const VectorizedGenerator& g, Config& cfg, StepReport* report = nullptr);

/// Tr(O rho) / Tr(rho) from <vec(O^+)|v> / <vec(I)|v>.
/// Tr(O rho) / Tr(rho) from overlaps with vec(O^dagger) and vec(I). With
/// shots, every Pauli term of O and the trace are estimated separately.
double observe(const State& s, const PauliSum& o);
double observe(const State& s, const PauliSum& o, ShotModel& shot);

struct Purity {
  double normalized = 1.0;  // Tr(rho^2) / Tr(rho)^2 for rho ~ unvec(v)
  double raw = 1.0;         // <v|v> * purity0, the conserved quantity
};
Purity purity(const State& s);

/// Tr(unvec(v)); the trace surrogate in units of the normalized vector.
cplx trace(const State& s);

/// ||R - R^dagger||_F / ||R||_F for R = unvec(v).
double hermiticity_drift(const State& s);

Trajectory run(const LindbladModel& m, const DensityMatrix& rho0, Config cfg,
               std::span<const NamedObservable> observables);

}  // namespace lindqite::vectorized
