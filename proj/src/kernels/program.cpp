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

#include "qnc/kernels.hpp"

namespace qnc {

namespace {

ProgOp error_op(OpCode code, uint8_t a, uint8_t b, double p, double weights) {
  ProgOp op;
  if (p == 0.0) {
    op.code = OpCode::ErrNull;
    return op;
  }
  op.code = code;
  op.a = a;
  op.b = b;
  op.p = p;
  op.scale = weights / p;
  return op;
}

}  // namespace

CompiledProgram compile(const Circuit& circuit, const ErrorModel& model) {
  model.validate();
  circuit.validate();
  CompiledProgram prog;
  prog.repetitions = circuit.repetitions;
  for (auto [a, b] : circuit.final_pairs) {
    prog.final_pairs.emplace_back(index_of(a), index_of(b));
  }
  prog.pair_slots = static_cast<int>(prog.final_pairs.size()) * prog.repetitions;

  for (const auto& slice : circuit.slices) {
    for (const auto& step : slice.steps) {
      std::visit(
          [&](const auto& s) {
            using T = std::decay_t<decltype(s)>;
            ProgOp op;
            if constexpr (std::is_same_v<T, Hadamard>) {
              op.code = OpCode::H;
              op.a = index_of(s.q);
            } else if constexpr (std::is_same_v<T, Cnot>) {
              op.code = OpCode::Cnot;
              op.a = index_of(s.control);
              op.b = index_of(s.target);
            } else if constexpr (std::is_same_v<T, MeasureZ> || std::is_same_v<T, MeasureX>) {
              op.code = std::is_same_v<T, MeasureZ> ? OpCode::MeasZ : OpCode::MeasX;
              op.a = index_of(s.q);
              op.reg = s.reg;
            } else if constexpr (std::is_same_v<T, CondX> || std::is_same_v<T, CondZ>) {
              op.code = std::is_same_v<T, CondX> ? OpCode::CorrX : OpCode::CorrZ;
              op.a = index_of(s.q);
              op.mask = s.reg_mask;
            } else if constexpr (std::is_same_v<T, ErrorSlot>) {
              const uint8_t a = index_of(s.a);
              const uint8_t b = index_of(s.b);
              switch (s.kind) {
                case SlotKind::InitPair:
                  switch (model.initial_kind) {
                    case InitialKind::None:
                      op = error_op(OpCode::ErrNull, a, b, 0.0, 0.0);
                      break;
                    case InitialKind::ZOnly:
                      op = error_op(OpCode::ErrZ1, b, b, model.p_init, 0.0);
                      break;
                    case InitialKind::XOnly:
                      op = error_op(OpCode::ErrX1, b, b, model.p_init, 0.0);
                      break;
                    case InitialKind::GeneralPauli:
                      op = error_op(OpCode::Err2, a, b, model.p_init, 15.0);
                      break;
                  }
                  break;
                case SlotKind::GateCnot:
                  op = error_op(OpCode::Err2, a, b, model.p_gate, 15.0);
                  break;
                case SlotKind::GateSingle:
                case SlotKind::Measure:
                  op = error_op(OpCode::Err1, a, a, model.p_gate, 3.0);
                  break;
                case SlotKind::Memory:
                  op = error_op(OpCode::Err1, a, a, model.p_memory, 3.0);
                  break;
              }
            }
            prog.ops.push_back(op);
          },
          step);
    }
  }
  return prog;
}

}  // namespace qnc
