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

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qnc/circuit.hpp"

namespace qnc {

// Flat batch program. A circuit plus error model compiles to a straight
// sequence of ops with all probabilities and inverse-probability scales
// baked in; the batch kernels then run many trials without touching the
// variant-based IR. Op order equals the circuit's flat step order, so
// the per-trial uniform/u64 draw sequence is identical to execute().
enum class OpCode : uint8_t {
  H,         // a
  Cnot,      // a control, b target
  MeasZ,     // a qubit, reg; consumes one u64
  MeasX,     // a qubit, reg; consumes one u64
  CorrX,     // a qubit, mask = register parity
  CorrZ,     // a qubit, mask
  Err1,      // single-qubit depolarizing(p) on a; consumes one uniform
  Err2,      // correlated two-qubit channel(p) on (a,b); one uniform
  ErrZ1,     // Z on a with probability p; one uniform
  ErrX1,     // X on a with probability p; one uniform
  ErrNull,   // zero-probability slot; consumes one uniform
};

struct ProgOp {
  OpCode code;
  uint8_t a = 0;
  uint8_t b = 0;
  uint8_t reg = 0;
  uint32_t mask = 0;
  double p = 0.0;
  double scale = 0.0;  // 3/p (Err1) or 15/p (Err2)
};

struct CompiledProgram {
  std::vector<ProgOp> ops;  // one repetition
  int repetitions = 1;
  // (a, b) qubit indices classified at the end of each repetition.
  std::vector<std::pair<uint8_t, uint8_t>> final_pairs;
  int pair_slots = 0;  // final_pairs.size() * repetitions, <= 2
};

CompiledProgram compile(const Circuit& circuit, const ErrorModel& model);

// Runs trials [first_trial, first_trial + n) of the given master seed.
// counts16 accumulates outcome codes (bell0 * 4 + bell1); codes, when
// non-null, additionally receives the per-trial code (n bytes). All
// kernels produce bit-identical per-trial results.
using BatchFn = void (*)(const CompiledProgram& prog, uint64_t seed, uint64_t first_trial,
                         uint64_t n, uint64_t* counts16, uint8_t* codes);

void run_batch_scalar(const CompiledProgram& prog, uint64_t seed, uint64_t first_trial,
                      uint64_t n, uint64_t* counts16, uint8_t* codes);

#if defined(QNC_HAVE_AVX2)
// Four trials per pass in 64-bit lanes; tail handled by the scalar path.
void run_batch_avx2(const CompiledProgram& prog, uint64_t seed, uint64_t first_trial,
                    uint64_t n, uint64_t* counts16, uint8_t* codes);
#endif

struct BatchKernel {
  BatchFn fn;
  std::string name;  // "scalar" or "avx2"
};

// Best kernel the current CPU supports.
BatchKernel select_batch_kernel();
// By name, for --kernel overrides and equivalence tests; throws if the
// name is unknown or unsupported on this CPU.
BatchKernel select_batch_kernel(const std::string& name);
std::vector<std::string> available_kernels();

}  // namespace qnc
