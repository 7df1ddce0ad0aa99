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

#include <algorithm>
#include <bit>

#include "qnc/kernels.hpp"
#include "qnc/rng.hpp"

namespace qnc {

void run_batch_scalar(const CompiledProgram& prog, uint64_t seed, uint64_t first_trial,
                      uint64_t n, uint64_t* counts16, uint8_t* codes) {
  for (uint64_t t = 0; t < n; ++t) {
    TrialRng rng(seed, first_trial + t);
    unsigned trial_code = 0;
    int slot = 0;
    for (int rep = 0; rep < prog.repetitions; ++rep) {
      uint32_t fx = 0, fz = 0;
      uint32_t flips = 0;
      for (const ProgOp& op : prog.ops) {
        switch (op.code) {
          case OpCode::H: {
            const uint32_t diff = ((fx >> op.a) ^ (fz >> op.a)) & 1u;
            fx ^= diff << op.a;
            fz ^= diff << op.a;
            break;
          }
          case OpCode::Cnot:
            fx ^= ((fx >> op.a) & 1u) << op.b;
            fz ^= ((fz >> op.b) & 1u) << op.a;
            break;
          case OpCode::MeasZ:
          case OpCode::MeasX: {
            (void)rng.next_u64();  // the branch's ideal outcome
            const uint32_t flip =
                (op.code == OpCode::MeasZ ? fx >> op.a : fz >> op.a) & 1u;
            flips |= flip << op.reg;
            const uint32_t keep = ~(1u << op.a);
            fx &= keep;
            fz &= keep;
            break;
          }
          case OpCode::CorrX:
          case OpCode::CorrZ: {
            const uint32_t parity =
                static_cast<uint32_t>(std::popcount(flips & op.mask)) & 1u;
            if (op.code == OpCode::CorrX) {
              fx ^= parity << op.a;
            } else {
              fz ^= parity << op.a;
            }
            break;
          }
          case OpCode::Err1: {
            const double u = rng.next_unit();
            if (u < op.p) {
              const unsigned k = std::min(2u, static_cast<unsigned>(u * op.scale));
              const unsigned idx = k + 1;
              fx ^= (((idx + 1) >> 1) & 1u) << op.a;
              fz ^= ((idx >> 1) & 1u) << op.a;
            }
            break;
          }
          case OpCode::Err2: {
            const double u = rng.next_unit();
            if (u < op.p) {
              const unsigned k = std::min(14u, static_cast<unsigned>(u * op.scale));
              const unsigned ia = (k + 1) >> 2;
              const unsigned ib = (k + 1) & 3u;
              fx ^= ((((ia + 1) >> 1) & 1u) << op.a) | ((((ib + 1) >> 1) & 1u) << op.b);
              fz ^= (((ia >> 1) & 1u) << op.a) | (((ib >> 1) & 1u) << op.b);
            }
            break;
          }
          case OpCode::ErrZ1: {
            const double u = rng.next_unit();
            if (u < op.p) fz ^= 1u << op.a;
            break;
          }
          case OpCode::ErrX1: {
            const double u = rng.next_unit();
            if (u < op.p) fx ^= 1u << op.a;
            break;
          }
          case OpCode::ErrNull:
            (void)rng.next_unit();
            break;
        }
      }
      for (auto [a, b] : prog.final_pairs) {
        const unsigned xp = ((fx >> a) ^ (fx >> b)) & 1u;
        const unsigned zp = ((fz >> a) ^ (fz >> b)) & 1u;
        trial_code |= (xp | (zp << 1)) << (2 * (1 - slot));
        ++slot;
      }
    }
    ++counts16[trial_code];
    if (codes) codes[t] = static_cast<uint8_t>(trial_code);
  }
}

}  // namespace qnc
