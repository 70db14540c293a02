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

#include "lindqite/trajectory.hpp"

#include <algorithm>

#include "lindqite/errors.hpp"

namespace lindqite {

std::vector<double> Trajectory::series(const std::string& name) const {
  const auto it = std::find(observables.begin(), observables.end(), name);
  if (it == observables.end()) throw ContractError("series: unknown observable '" + name + "'");
  const auto col = static_cast<std::size_t>(it - observables.begin());
  std::vector<double> out;
  out.reserve(records.size());
  for (const auto& r : records) out.push_back(r.values.at(col));
  return out;
}

std::vector<double> Trajectory::times() const {
  std::vector<double> out;
  out.reserve(records.size());
  for (const auto& r : records) out.push_back(r.t);
  return out;
}

}  // namespace lindqite
