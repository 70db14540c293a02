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

#include <cstdint>
#include <string>
#include <vector>

#include "lindqite/pauli.hpp"

namespace lindqite {

struct NamedObservable {
  std::string name;
  PauliSum op;
};

/// One time point of a simulated trajectory.
struct TrajectoryRecord {
  double t = 0.0;
  std::vector<double> values;  // aligned with Trajectory::observables
  double raw_norm = 1.0;       // algorithm-specific conserved quantity before renormalization
  double purity = 1.0;         // Tr(rho^2) / Tr(rho)^2
  double dropped_mass = 0.0;   // cumulative weight removed by pruning
};

struct Trajectory {
  std::string algorithm;
  std::uint64_t seed = 0;
  std::vector<std::string> observables;
  std::vector<TrajectoryRecord> records;
  long linear_solves = 0;
  double wall_seconds = 0.0;

  /// Column of one observable over time.
  std::vector<double> series(const std::string& name) const;
  std::vector<double> times() const;
};

}  // namespace lindqite
