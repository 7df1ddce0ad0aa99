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

#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "qnc/error_models.hpp"
#include "qnc/pauli.hpp"
#include "qnc/rng.hpp"

namespace qnc {

enum class Protocol : uint8_t { Qnc, TwoEs };

const char* protocol_name(Protocol p);
Protocol protocol_from_name(const std::string& s);

// Which channel an error slot resolves to at run time. InitPair slots
// use the model's initial_kind/p_init; GateCnot and GateSingle use
// p_gate; Measure uses p_gate and is placed before the measurement it
// decorates; Memory uses p_memory.
enum class SlotKind : uint8_t { InitPair, GateCnot, GateSingle, Measure, Memory };

const char* slot_kind_name(SlotKind k);

struct Hadamard {
  Qubit q;
  bool operator==(const Hadamard&) const = default;
};
struct Cnot {
  Qubit control, target;
  bool operator==(const Cnot&) const = default;
};
struct MeasureZ {
  Qubit q;
  uint8_t reg;
  bool operator==(const MeasureZ&) const = default;
};
struct MeasureX {
  Qubit q;
  uint8_t reg;
  bool operator==(const MeasureX&) const = default;
};
// Classically conditioned correction: fires on odd parity of the
// referenced registers.
struct CondX {
  Qubit q;
  uint32_t reg_mask;
  bool operator==(const CondX&) const = default;
};
struct CondZ {
  Qubit q;
  uint32_t reg_mask;
  bool operator==(const CondZ&) const = default;
};
struct ErrorSlot {
  SlotKind kind;
  Qubit a;
  Qubit b;  // second qubit for InitPair/GateCnot, else == a
  bool operator==(const ErrorSlot&) const = default;
};

using GateStep =
    std::variant<Hadamard, Cnot, MeasureZ, MeasureX, CondX, CondZ, ErrorSlot>;

// One time slice: steps on disjoint qubits, executed in listed order.
// step_label is the numbered protocol step (0 = pair creation) and
// drives the per-step memory-error schedule.
struct Slice {
  int step_label = 0;
  std::vector<GateStep> steps;
  bool operator==(const Slice&) const = default;
};

struct Circuit {
  Protocol protocol = Protocol::Qnc;
  std::vector<Slice> slices;
  std::vector<std::string> registers;
  std::vector<std::pair<Qubit, Qubit>> initial_pairs;
  // One entry per repetition for 2ES, two entries (AF, BE) for QNC.
  std::vector<std::pair<Qubit, Qubit>> final_pairs;
  int repetitions = 1;

  bool operator==(const Circuit&) const = default;

  int measurement_count() const;  // per repetition
  size_t flat_step_count() const;

  // Flat index (slice-major, step order) of the given ideal CNOT;
  // throws if absent. Used to place gate-error injections in tests.
  int find_cnot(Qubit control, Qubit target) const;
  // Flat index of the last step of the pair-creation stage; initial
  // Bell-pair error injections apply after this point.
  int init_end() const;

  // Enforces the type invariants: qubit disjointness within a slice,
  // corrections referencing only earlier registers, and no touching of
  // measured-and-removed qubits. Throws std::invalid_argument.
  void validate() const;
};

// The 7-step quantum network coding circuit on the butterfly layout:
// pair creation, two Connections, one Add, one Fanout, the two crossing
// CNOTs, and the five removals with their feedforward corrections.
// Final pairs (A,F) and (B,E).
Circuit build_qnc();

// Double entanglement swapping over pairs CD, IJ, MN, final pair (C,N).
// cycles = 2 repeats the cycle with fresh pairs, modeling the
// bottleneck re-share; cycles must be 1 or 2.
Circuit build_2es(int cycles);

struct TrialOutcome {
  // bell[0] is AF (QNC) or the first cycle's CN (2ES); bell[1] is BE or
  // the second cycle's CN. Unused entries stay PsiPlus.
  std::array<BellIndex, 2> bell{BellIndex::PsiPlus, BellIndex::PsiPlus};
  int pair_count = 0;
  // Recorded measurement outcomes, flat order, repetitions concatenated.
  uint32_t outcome_bits = 0;
  bool m = false;  // any error on the first final pair
  bool n = false;  // any error on the second final pair

  uint8_t outcome_code() const {
    return static_cast<uint8_t>((static_cast<unsigned>(bell[0]) << 2) |
                                static_cast<unsigned>(bell[1]));
  }
};

// A Pauli frame composed onto the tracked frame immediately after the
// flat step at `after_flat_pos` (use init_end() for initial-pair
// errors, find_cnot(..) for gate errors).
struct Injection {
  int after_flat_pos;
  PauliFrame frame;
};

// Stochastic single-trial execution. Ideal outcomes are drawn uniformly
// at random; each recorded outcome is the ideal outcome XOR the frame's
// measurement flip; corrections track the flip parity on the frame.
// Draw discipline: one uniform per error slot (even when its
// probability is zero) and one per measurement, in flat order -- the
// batch kernels consume the identical stream.
TrialOutcome execute(const Circuit& circuit, const ErrorModel& model, TrialRng& rng);

// Deterministic propagation with explicit injections and no stochastic
// errors. branch_bits fixes the ideal outcome of measurement i (flat
// order) to bit i; the canonical branch is all zeros.
TrialOutcome propagate(const Circuit& circuit, std::span<const Injection> injections,
                       uint32_t branch_bits = 0);

TrialOutcome propagate(const Circuit& circuit, const PauliFrame& initial_error,
                       uint32_t branch_bits = 0);

// Runs every measurement-outcome branch with the same injected frame
// and null stochastic errors; true iff all branches agree on the final
// Bell indices.
bool validate_branch_independence(const Circuit& circuit, const PauliFrame& injected);

// Line-oriented text serialization, one slice per line, steps
// semicolon-separated. parse(emit(c)) == c.
std::string dump_text(const Circuit& circuit);
Circuit parse_text(const std::string& text);

// Structured JSON form with fields {protocol, repetitions, registers,
// initial_pairs, final_pairs, slices, error_slots}.
std::string dump_json(const Circuit& circuit);
Circuit parse_json(const std::string& text);

}  // namespace qnc
