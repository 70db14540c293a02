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

// AVX2/FMA variants. This translation unit is compiled with -mavx2 -mfma and
// is only entered after the dispatcher has confirmed CPU support.
// A 256-bit register holds two complex doubles, so every loop walks the basis
// in even/odd index pairs (c, c + 1).

#include <immintrin.h>

#include <bit>
#include <cstddef>

#include "lindqite/kernels.hpp"

namespace lindqite::kernels {
namespace {

inline double parity_sign(std::uint64_t v) { return (std::popcount(v) & 1) ? -1.0 : 1.0; }

inline __m256d load2(const cplx* p) { return _mm256_loadu_pd(reinterpret_cast<const double*>(p)); }
inline void store2(cplx* p, __m256d v) { _mm256_storeu_pd(reinterpret_cast<double*>(p), v); }
inline __m256d swap_halves(__m256d v) { return _mm256_permute2f128_pd(v, v, 0x01); }
inline __m256d swap_re_im(__m256d v) { return _mm256_permute_pd(v, 0b0101); }
inline __m256d lane_signs(double s0, double s1) { return _mm256_setr_pd(s0, s0, s1, s1); }

// v * w for a broadcast complex w.
inline __m256d cmul(__m256d v, cplx w) {
  const __m256d t1 = _mm256_mul_pd(v, _mm256_set1_pd(w.real()));
  const __m256d t2 = _mm256_mul_pd(swap_re_im(v), _mm256_set1_pd(w.imag()));
  return _mm256_addsub_pd(t1, t2);
}

// Lane-wise complex product.
inline __m256d cmul(__m256d v, __m256d f) {
  const __m256d fr = _mm256_movedup_pd(f);
  const __m256d fi = _mm256_permute_pd(f, 0b1111);
  return _mm256_addsub_pd(_mm256_mul_pd(v, fr), _mm256_mul_pd(swap_re_im(v), fi));
}

// [ket[c ^ x], ket[(c + 1) ^ x]] for even c.
inline __m256d load_partner(const cplx* ket, std::size_t c, std::uint64_t x) {
  const std::size_t d = c ^ x;
  if (x & 1) return swap_halves(load2(ket + d - 1));
  return load2(ket + d);
}

inline __m256d partner_signs(std::size_t c, const PauliMasks& p) {
  return lane_signs(parity_sign((c ^ p.x) & p.z), parity_sign(((c + 1) ^ p.x) & p.z));
}

// Finishes sum_c conj(a_c) b_c from the two accumulators of accumulate().
inline cplx reduce(__m256d acc_direct, __m256d acc_swapped) {
  alignas(32) double d[4];
  alignas(32) double s[4];
  _mm256_store_pd(d, acc_direct);
  _mm256_store_pd(s, acc_swapped);
  return {d[0] + d[1] + d[2] + d[3], (s[0] - s[1]) + (s[2] - s[3])};
}

inline void accumulate(__m256d a, __m256d b, __m256d& acc_direct, __m256d& acc_swapped) {
  acc_direct = _mm256_fmadd_pd(a, b, acc_direct);
  acc_swapped = _mm256_fmadd_pd(a, swap_re_im(b), acc_swapped);
}

void apply_pauli_avx2(const PauliMasks& p, std::span<const cplx> in, std::span<cplx> out) {
  const std::size_t dim = in.size();
  if (dim < 2) {
    scalar_table().apply_pauli(p, in, out);
    return;
  }
  for (std::size_t c = 0; c < dim; c += 2) {
    const __m256d v = _mm256_mul_pd(load_partner(in.data(), c, p.x), partner_signs(c, p));
    store2(out.data() + c, cmul(v, p.phase));
  }
}

void pauli_rotation_avx2(const PauliMasks& p, double cos_t, double sin_t, std::span<cplx> psi) {
  const std::size_t dim = psi.size();
  if (dim < 2) {
    scalar_table().pauli_rotation(p, cos_t, sin_t, psi);
    return;
  }
  const cplx w = cplx(0.0, -sin_t) * p.phase;
  const __m256d cosv = _mm256_set1_pd(cos_t);
  cplx* data = psi.data();

  if (p.x == 0) {
    for (std::size_t c = 0; c < dim; c += 2) {
      const cplx f0 = cos_t + w * parity_sign(c & p.z);
      const cplx f1 = cos_t + w * parity_sign((c + 1) & p.z);
      const __m256d f = _mm256_setr_pd(f0.real(), f0.imag(), f1.real(), f1.imag());
      store2(data + c, cmul(load2(data + c), f));
    }
    return;
  }

  if (p.x == 1) {
    for (std::size_t c = 0; c < dim; c += 2) {
      const __m256d v = load2(data + c);
      const __m256d partner = _mm256_mul_pd(swap_halves(v), partner_signs(c, p));
      store2(data + c, _mm256_fmadd_pd(cosv, v, cmul(partner, w)));
    }
    return;
  }

  const std::size_t top = std::size_t{1} << (std::bit_width(p.x) - 1);
  for (std::size_t base = 0; base < dim; base += 2 * top) {
    for (std::size_t off = 0; off < top; off += 2) {
      const std::size_t c = base + off;
      const std::size_t d = c ^ p.x;
      const __m256d v = load2(data + c);
      const __m256d vp = load_partner(data, c, p.x);
      const __m256d new_c =
          _mm256_fmadd_pd(cosv, v, cmul(_mm256_mul_pd(vp, partner_signs(c, p)), w));
      const __m256d own_signs = lane_signs(parity_sign(c & p.z), parity_sign((c + 1) & p.z));
      const __m256d new_d = _mm256_fmadd_pd(cosv, vp, cmul(_mm256_mul_pd(v, own_signs), w));
      store2(data + c, new_c);
      if (p.x & 1) {
        store2(data + d - 1, swap_halves(new_d));
      } else {
        store2(data + d, new_d);
      }
    }
  }
}

cplx inner_avx2(std::span<const cplx> a, std::span<const cplx> b) {
  const std::size_t dim = a.size();
  __m256d acc_direct = _mm256_setzero_pd();
  __m256d acc_swapped = _mm256_setzero_pd();
  std::size_t c = 0;
  for (; c + 2 <= dim; c += 2) accumulate(load2(a.data() + c), load2(b.data() + c), acc_direct, acc_swapped);
  cplx acc = reduce(acc_direct, acc_swapped);
  for (; c < dim; ++c) acc += std::conj(a[c]) * b[c];
  return acc;
}

cplx pauli_element_avx2(const PauliMasks& p, std::span<const cplx> bra, std::span<const cplx> ket) {
  const std::size_t dim = bra.size();
  if (dim < 2) return scalar_table().pauli_element(p, bra, ket);
  __m256d acc_direct = _mm256_setzero_pd();
  __m256d acc_swapped = _mm256_setzero_pd();
  for (std::size_t c = 0; c < dim; c += 2) {
    const __m256d t = _mm256_mul_pd(load_partner(ket.data(), c, p.x), partner_signs(c, p));
    accumulate(load2(bra.data() + c), t, acc_direct, acc_swapped);
  }
  return p.phase * reduce(acc_direct, acc_swapped);
}

}  // namespace

const KernelTable& avx2_table_unchecked() {
  static const KernelTable table{Isa::kAvx2, "avx2", apply_pauli_avx2, pauli_rotation_avx2, inner_avx2,
                                 pauli_element_avx2};
  return table;
}

}  // namespace lindqite::kernels
