// Copyright 2026 The qnc-butterfly Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#if defined(QNC_HAVE_AVX2)

#include <immintrin.h>

#include "qnc/kernels.hpp"
#include "qnc/rng.hpp"

namespace qnc {

namespace {

// Four trials per pass, one per 64-bit lane. All double arithmetic
// matches the scalar kernel operation for operation, so per-trial
// results are bit-identical.

inline __m256i mullo64(__m256i a, __m256i b) {
  const __m256i lo = _mm256_mul_epu32(a, b);
  const __m256i ahi = _mm256_srli_epi64(a, 32);
  const __m256i bhi = _mm256_srli_epi64(b, 32);
  const __m256i cross =
      _mm256_add_epi64(_mm256_mul_epu32(ahi, b), _mm256_mul_epu32(a, bhi));
  return _mm256_add_epi64(lo, _mm256_slli_epi64(cross, 32));
}

inline __m256i splitmix_output_vec(__m256i state) {
  __m256i z = state;
  z = mullo64(_mm256_xor_si256(z, _mm256_srli_epi64(z, 30)),
              _mm256_set1_epi64x(static_cast<int64_t>(0xBF58476D1CE4E5B9ull)));
  z = mullo64(_mm256_xor_si256(z, _mm256_srli_epi64(z, 27)),
              _mm256_set1_epi64x(static_cast<int64_t>(0x94D049BB133111EBull)));
  return _mm256_xor_si256(z, _mm256_srli_epi64(z, 31));
}

// Exact u64 >> 11 -> double, identical to the scalar cast (the 53-bit
// integer is split into 32+21 bits, each converted exactly).
inline __m256d unit_from_u64(__m256i v) {
  const __m256i mant = _mm256_srli_epi64(v, 11);
  const __m256i magic = _mm256_set1_epi64x(0x4330000000000000ll);  // 2^52
  const __m256d bias = _mm256_set1_pd(0x1.0p52);
  const __m256i lo = _mm256_and_si256(mant, _mm256_set1_epi64x(0xFFFFFFFFll));
  const __m256i hi = _mm256_srli_epi64(mant, 32);
  const __m256d dlo =
      _mm256_sub_pd(_mm256_castsi256_pd(_mm256_or_si256(lo, magic)), bias);
  const __m256d dhi =
      _mm256_sub_pd(_mm256_castsi256_pd(_mm256_or_si256(hi, magic)), bias);
  const __m256d d = _mm256_add_pd(_mm256_mul_pd(dhi, _mm256_set1_pd(0x1.0p32)), dlo);
  return _mm256_mul_pd(d, _mm256_set1_pd(0x1.0p-53));
}

inline __m256i shl(__m256i v, uint8_t count) {
  return _mm256_sll_epi64(v, _mm_cvtsi32_si128(count));
}

inline __m256i shr(__m256i v, uint8_t count) {
  return _mm256_srl_epi64(v, _mm_cvtsi32_si128(count));
}

inline __m256i bit_at(__m256i v, uint8_t pos) {
  return _mm256_and_si256(shr(v, pos), _mm256_set1_epi64x(1));
}

// idx in 0..3 per 32-bit element: the (x, z) bits of the indexed Pauli.
inline __m128i pauli_x_bit(__m128i idx) {
  return _mm_and_si128(_mm_srli_epi32(_mm_add_epi32(idx, _mm_set1_epi32(1)), 1),
                       _mm_set1_epi32(1));
}

inline __m128i pauli_z_bit(__m128i idx) {
  return _mm_and_si128(_mm_srli_epi32(idx, 1), _mm_set1_epi32(1));
}

inline __m256i parity_bit(__m256i v) {
  v = _mm256_xor_si256(v, _mm256_srli_epi64(v, 16));
  v = _mm256_xor_si256(v, _mm256_srli_epi64(v, 8));
  v = _mm256_xor_si256(v, _mm256_srli_epi64(v, 4));
  v = _mm256_xor_si256(v, _mm256_srli_epi64(v, 2));
  v = _mm256_xor_si256(v, _mm256_srli_epi64(v, 1));
  return _mm256_and_si256(v, _mm256_set1_epi64x(1));
}

}  // namespace

void run_batch_avx2(const CompiledProgram& prog, uint64_t seed, uint64_t first_trial,
                    uint64_t n, uint64_t* counts16, uint8_t* codes) {
  const uint64_t groups = n / 4;
  const __m256i gamma = _mm256_set1_epi64x(static_cast<int64_t>(kSplitmixGamma));
  const __m256i one = _mm256_set1_epi64x(1);

  for (uint64_t g = 0; g < groups; ++g) {
    const uint64_t base = first_trial + 4 * g;
    __m256i state = _mm256_set_epi64x(
        static_cast<int64_t>(trial_stream_state(seed, base + 3)),
        static_cast<int64_t>(trial_stream_state(seed, base + 2)),
        static_cast<int64_t>(trial_stream_state(seed, base + 1)),
        static_cast<int64_t>(trial_stream_state(seed, base + 0)));
    auto next_u64 = [&] {
      state = _mm256_add_epi64(state, gamma);
      return splitmix_output_vec(state);
    };

    __m256i trial_code = _mm256_setzero_si256();
    int slot = 0;
    for (int rep = 0; rep < prog.repetitions; ++rep) {
      __m256i fx = _mm256_setzero_si256();
      __m256i fz = _mm256_setzero_si256();
      __m256i flips = _mm256_setzero_si256();
      for (const ProgOp& op : prog.ops) {
        switch (op.code) {
          case OpCode::H: {
            const __m256i diff =
                shl(_mm256_and_si256(_mm256_xor_si256(shr(fx, op.a), shr(fz, op.a)), one),
                    op.a);
            fx = _mm256_xor_si256(fx, diff);
            fz = _mm256_xor_si256(fz, diff);
            break;
          }
          case OpCode::Cnot:
            fx = _mm256_xor_si256(fx, shl(bit_at(fx, op.a), op.b));
            fz = _mm256_xor_si256(fz, shl(bit_at(fz, op.b), op.a));
            break;
          case OpCode::MeasZ:
          case OpCode::MeasX: {
            state = _mm256_add_epi64(state, gamma);  // consume the outcome draw
            const __m256i flip = op.code == OpCode::MeasZ ? bit_at(fx, op.a) : bit_at(fz, op.a);
            flips = _mm256_or_si256(flips, shl(flip, op.reg));
            const __m256i keep =
                _mm256_xor_si256(shl(one, op.a), _mm256_set1_epi64x(-1));
            fx = _mm256_and_si256(fx, keep);
            fz = _mm256_and_si256(fz, keep);
            break;
          }
          case OpCode::CorrX:
          case OpCode::CorrZ: {
            const __m256i parity = parity_bit(
                _mm256_and_si256(flips, _mm256_set1_epi64x(static_cast<int64_t>(op.mask))));
            if (op.code == OpCode::CorrX) {
              fx = _mm256_xor_si256(fx, shl(parity, op.a));
            } else {
              fz = _mm256_xor_si256(fz, shl(parity, op.a));
            }
            break;
          }
          case OpCode::Err1: {
            const __m256d u = unit_from_u64(next_u64());
            const __m256i hit =
                _mm256_castpd_si256(_mm256_cmp_pd(u, _mm256_set1_pd(op.p), _CMP_LT_OQ));
            const __m128i k = _mm_min_epu32(
                _mm256_cvttpd_epi32(_mm256_mul_pd(u, _mm256_set1_pd(op.scale))),
                _mm_set1_epi32(2));
            const __m128i idx = _mm_add_epi32(k, _mm_set1_epi32(1));
            const __m256i xb = _mm256_cvtepu32_epi64(pauli_x_bit(idx));
            const __m256i zb = _mm256_cvtepu32_epi64(pauli_z_bit(idx));
            fx = _mm256_xor_si256(fx, _mm256_and_si256(shl(xb, op.a), hit));
            fz = _mm256_xor_si256(fz, _mm256_and_si256(shl(zb, op.a), hit));
            break;
          }
          case OpCode::Err2: {
            const __m256d u = unit_from_u64(next_u64());
            const __m256i hit =
                _mm256_castpd_si256(_mm256_cmp_pd(u, _mm256_set1_pd(op.p), _CMP_LT_OQ));
            const __m128i k = _mm_min_epu32(
                _mm256_cvttpd_epi32(_mm256_mul_pd(u, _mm256_set1_pd(op.scale))),
                _mm_set1_epi32(14));
            const __m128i code = _mm_add_epi32(k, _mm_set1_epi32(1));
            const __m128i ia = _mm_srli_epi32(code, 2);
            const __m128i ib = _mm_and_si128(code, _mm_set1_epi32(3));
            const __m256i xmask = _mm256_or_si256(
                shl(_mm256_cvtepu32_epi64(pauli_x_bit(ia)), op.a),
                shl(_mm256_cvtepu32_epi64(pauli_x_bit(ib)), op.b));
            const __m256i zmask = _mm256_or_si256(
                shl(_mm256_cvtepu32_epi64(pauli_z_bit(ia)), op.a),
                shl(_mm256_cvtepu32_epi64(pauli_z_bit(ib)), op.b));
            fx = _mm256_xor_si256(fx, _mm256_and_si256(xmask, hit));
            fz = _mm256_xor_si256(fz, _mm256_and_si256(zmask, hit));
            break;
          }
          case OpCode::ErrZ1:
          case OpCode::ErrX1: {
            const __m256d u = unit_from_u64(next_u64());
            const __m256i hit =
                _mm256_castpd_si256(_mm256_cmp_pd(u, _mm256_set1_pd(op.p), _CMP_LT_OQ));
            const __m256i bit = _mm256_and_si256(shl(one, op.a), hit);
            if (op.code == OpCode::ErrZ1) {
              fz = _mm256_xor_si256(fz, bit);
            } else {
              fx = _mm256_xor_si256(fx, bit);
            }
            break;
          }
          case OpCode::ErrNull:
            state = _mm256_add_epi64(state, gamma);
            break;
        }
      }
      for (auto [a, b] : prog.final_pairs) {
        const __m256i xp =
            _mm256_and_si256(_mm256_xor_si256(shr(fx, a), shr(fx, b)), one);
        const __m256i zp =
            _mm256_and_si256(_mm256_xor_si256(shr(fz, a), shr(fz, b)), one);
        const __m256i bell = _mm256_or_si256(xp, _mm256_slli_epi64(zp, 1));
        trial_code = _mm256_or_si256(trial_code, shl(bell, 2 * (1 - slot)));
        ++slot;
      }
    }

    alignas(32) uint64_t lane_codes[4];
    _mm256_store_si256(reinterpret_cast<__m256i*>(lane_codes), trial_code);
    for (int lane = 0; lane < 4; ++lane) {
      ++counts16[lane_codes[lane]];
      if (codes) codes[4 * g + lane] = static_cast<uint8_t>(lane_codes[lane]);
    }
  }

  const uint64_t done = 4 * groups;
  if (done < n) {
    run_batch_scalar(prog, seed, first_trial + done, n - done, counts16,
                     codes ? codes + done : nullptr);
  }
}

}  // namespace qnc

#endif  // QNC_HAVE_AVX2
