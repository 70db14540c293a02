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

#include <complex>
#include <cstdint>
#include <span>
#include <string_view>

// Statevector inner loops. Every kernel has a scalar reference
// implementation; wider variants are selected once at runtime and must agree
// with the reference to rounding (see tests/test_kernels.cpp).

namespace lindqite::kernels {

using cplx = std::complex<double>;

/// A Pauli string reduced to what the kernels need. Acting on a basis state,
/// P|c> = phase * (-1)^popcount(c & z) |c ^ x>.
struct PauliMasks {
  std::uint64_t x = 0;
  std::uint64_t z = 0;
  cplx phase{1.0, 0.0};
};

enum class Isa { kScalar, kAvx2 };

struct KernelTable {
  Isa isa;
  const char* name;
  // out = P * in. `out` must not alias `in`.
  void (*apply_pauli)(const PauliMasks& p, std::span<const cplx> in, std::span<cplx> out);
  // psi <- cos_t * psi - i * sin_t * P psi, in place.
  void (*pauli_rotation)(const PauliMasks& p, double cos_t, double sin_t, std::span<cplx> psi);
  // <a|b>, conjugate-linear in a.
  cplx (*inner)(std::span<const cplx> a, std::span<const cplx> b);
  // <bra|P|ket>
  cplx (*pauli_element)(const PauliMasks& p, std::span<const cplx> bra, std::span<const cplx> ket);
};

const KernelTable& scalar_table();

/// nullptr when the variant was not compiled in or the CPU lacks the ISA.
const KernelTable* avx2_table();

/// Table used by the library. Chosen on first use: the widest supported ISA,
/// unless LINDQITE_FORCE_SCALAR is set to a non-empty value other than "0".
const KernelTable& active();

/// Overrides the active table. Returns false (and leaves the selection
/// unchanged) when the requested ISA is unavailable.
bool select(Isa isa);

std::string_view isa_name(Isa isa);

}  // namespace lindqite::kernels
