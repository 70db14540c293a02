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

#include "lindqite/kernels.hpp"

#include <bit>
#include <cstddef>

namespace lindqite::kernels {
namespace {

inline double parity_sign(std::uint64_t v) { return (std::popcount(v) & 1) ? -1.0 : 1.0; }

void apply_pauli_scalar(const PauliMasks& p, std::span<const cplx> in, std::span<cplx> out) {
  const std::size_t dim = in.size();
  for (std::size_t c = 0; c < dim; ++c) {
    out[c ^ p.x] = p.phase * (parity_sign(c & p.z) * in[c]);
  }
}

void pauli_rotation_scalar(const PauliMasks& p, double cos_t, double sin_t, std::span<cplx> psi) {
  const std::size_t dim = psi.size();
  const cplx w = cplx(0.0, -sin_t) * p.phase;
  if (p.x == 0) {
    for (std::size_t c = 0; c < dim; ++c) psi[c] *= cos_t + w * parity_sign(c & p.z);
    return;
  }
  const std::uint64_t top = std::uint64_t{1} << (std::bit_width(p.x) - 1);
  for (std::size_t c = 0; c < dim; ++c) {
    if (c & top) continue;
    const std::size_t d = c ^ p.x;
    const cplx a = psi[c];
    const cplx b = psi[d];
    psi[c] = cos_t * a + w * (parity_sign(d & p.z) * b);
    psi[d] = cos_t * b + w * (parity_sign(c & p.z) * a);
  }
}

cplx inner_scalar(std::span<const cplx> a, std::span<const cplx> b) {
  cplx acc{0.0, 0.0};
  for (std::size_t c = 0; c < a.size(); ++c) acc += std::conj(a[c]) * b[c];
  return acc;
}

cplx pauli_element_scalar(const PauliMasks& p, std::span<const cplx> bra, std::span<const cplx> ket) {
  cplx acc{0.0, 0.0};
  for (std::size_t c = 0; c < bra.size(); ++c) {
    const std::size_t d = c ^ p.x;
    acc += std::conj(bra[c]) * (parity_sign(d & p.z) * ket[d]);
  }
  return p.phase * acc;
}

}  // namespace

const KernelTable& scalar_table() {
  static const KernelTable table{Isa::kScalar, "scalar", apply_pauli_scalar, pauli_rotation_scalar,
                                 inner_scalar, pauli_element_scalar};
  return table;
}

}  // namespace lindqite::kernels
