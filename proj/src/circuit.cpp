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

#include "qnc/circuit.hpp"

#include <algorithm>
#include <bit>
#include <set>

namespace qnc {

const char* protocol_name(Protocol p) {
  return p == Protocol::Qnc ? "qnc" : "2es";
}

Protocol protocol_from_name(const std::string& s) {
  if (s == "qnc") return Protocol::Qnc;
  if (s == "2es") return Protocol::TwoEs;
  throw std::invalid_argument("unknown protocol: " + s);
}

const char* slot_kind_name(SlotKind k) {
  switch (k) {
    case SlotKind::InitPair: return "init";
    case SlotKind::GateCnot: return "cnot";
    case SlotKind::GateSingle: return "gate";
    case SlotKind::Measure: return "meas";
    case SlotKind::Memory: return "mem";
  }
  return "?";
}

namespace {

// Qubits a step acts on, for slice-disjointness and liveness checks.
void visit_qubits(const GateStep& step, auto&& fn) {
  std::visit(
      [&](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Hadamard>) {
          fn(s.q);
        } else if constexpr (std::is_same_v<T, Cnot>) {
          fn(s.control);
          fn(s.target);
        } else if constexpr (std::is_same_v<T, MeasureZ> || std::is_same_v<T, MeasureX>) {
          fn(s.q);
        } else if constexpr (std::is_same_v<T, CondX> || std::is_same_v<T, CondZ>) {
          fn(s.q);
        } else if constexpr (std::is_same_v<T, ErrorSlot>) {
          fn(s.a);
          if (s.b != s.a) fn(s.b);
        }
      },
      step);
}

// Incremental builder keeping track of registers, liveness, and the
// per-step memory schedule.
class CircuitBuilder {
 public:
  explicit CircuitBuilder(Protocol protocol) { c_.protocol = protocol; }

  void begin_step(int label) { step_ = label; }

  // Each call opens a new slice; steps passed together share one slice.
  void slice(std::initializer_list<GateStep> steps) {
    Slice s;
    s.step_label = step_;
    s.steps = steps;
    for (const auto& st : s.steps) {
      visit_qubits(st, [&](Qubit q) { acted_.insert(q); });
      if (const auto* m = std::get_if<MeasureZ>(&st)) measured_.insert(m->q);
      if (const auto* m = std::get_if<MeasureX>(&st)) measured_.insert(m->q);
    }
    c_.slices.push_back(std::move(s));
  }

  uint8_t reg(Qubit q) {
    c_.registers.push_back(std::string("m") + label_of(q));
    return static_cast<uint8_t>(c_.registers.size() - 1);
  }

  void create_pair(Qubit a, Qubit b) {
    c_.initial_pairs.emplace_back(a, b);
    alive_.insert(a);
    alive_.insert(b);
  }

  // Memory slots for qubits alive through the step and idle in it.
  void end_step_with_memory() {
    Slice s;
    s.step_label = step_;
    for (Qubit q : alive_) {
      if (!acted_.contains(q)) s.steps.push_back(ErrorSlot{SlotKind::Memory, q, q});
    }
    if (!s.steps.empty()) c_.slices.push_back(std::move(s));
    for (Qubit q : measured_) alive_.erase(q);
    acted_.clear();
    measured_.clear();
  }

  Circuit finish(std::vector<std::pair<Qubit, Qubit>> final_pairs, int repetitions) {
    c_.final_pairs = std::move(final_pairs);
    c_.repetitions = repetitions;
    c_.validate();
    return std::move(c_);
  }

 private:
  Circuit c_;
  int step_ = 0;
  std::set<Qubit> alive_;
  std::set<Qubit> acted_;
  std::set<Qubit> measured_;
};

}  // namespace

int Circuit::measurement_count() const {
  int n = 0;
  for (const auto& slice : slices) {
    for (const auto& step : slice.steps) {
      if (std::holds_alternative<MeasureZ>(step) || std::holds_alternative<MeasureX>(step)) ++n;
    }
  }
  return n;
}

size_t Circuit::flat_step_count() const {
  size_t n = 0;
  for (const auto& slice : slices) n += slice.steps.size();
  return n;
}

int Circuit::find_cnot(Qubit control, Qubit target) const {
  int pos = 0;
  for (const auto& slice : slices) {
    for (const auto& step : slice.steps) {
      if (const auto* g = std::get_if<Cnot>(&step)) {
        if (g->control == control && g->target == target) return pos;
      }
      ++pos;
    }
  }
  throw std::invalid_argument(std::string("no CNOT ") + label_of(control) + " " +
                              label_of(target) + " in circuit");
}

int Circuit::init_end() const {
  int pos = -1, i = 0;
  for (const auto& slice : slices) {
    for (const auto& step : slice.steps) {
      (void)step;
      if (slice.step_label == 0) pos = i;
      ++i;
    }
  }
  if (pos < 0) throw std::invalid_argument("circuit has no pair-creation stage");
  return pos;
}

void Circuit::validate() const {
  if (repetitions < 1) throw std::invalid_argument("repetitions must be >= 1");
  std::set<Qubit> measured;
  uint32_t regs_written = 0;
  for (const auto& slice : slices) {
    std::set<Qubit> used;
    for (const auto& step : slice.steps) {
      visit_qubits(step, [&](Qubit q) {
        if (measured.contains(q)) {
          throw std::invalid_argument(std::string("qubit ") + label_of(q) +
                                      " used after measurement");
        }
        if (!used.insert(q).second) {
          throw std::invalid_argument(std::string("qubit ") + label_of(q) +
                                      " appears twice in one slice");
        }
      });
      if (const auto* g = std::get_if<Cnot>(&step)) {
        if (g->control == g->target) {
          throw std::invalid_argument("CNOT control and target must differ");
        }
      }
      auto check_reg = [&](uint8_t r) {
        if (r >= registers.size()) throw std::invalid_argument("register index out of range");
      };
      auto check_mask = [&](uint32_t mask) {
        if (mask == 0) throw std::invalid_argument("conditioned correction with empty parity");
        if ((mask & ~regs_written) != 0) {
          throw std::invalid_argument("correction references a register not yet written");
        }
      };
      if (const auto* m = std::get_if<MeasureZ>(&step)) check_reg(m->reg);
      if (const auto* m = std::get_if<MeasureX>(&step)) check_reg(m->reg);
      if (const auto* cx = std::get_if<CondX>(&step)) check_mask(cx->reg_mask);
      if (const auto* cz = std::get_if<CondZ>(&step)) check_mask(cz->reg_mask);
    }
    // register writes and removals become visible at slice end
    for (const auto& step : slice.steps) {
      if (const auto* m = std::get_if<MeasureZ>(&step)) {
        measured.insert(m->q);
        regs_written |= 1u << m->reg;
      }
      if (const auto* m = std::get_if<MeasureX>(&step)) {
        measured.insert(m->q);
        regs_written |= 1u << m->reg;
      }
    }
  }
  if (final_pairs.empty()) throw std::invalid_argument("circuit has no final pairs");
  if (final_pairs.size() * static_cast<size_t>(repetitions) > 2) {
    throw std::invalid_argument("at most two classified pairs are supported");
  }
  for (auto [a, b] : final_pairs) {
    if (measured.contains(a) || measured.contains(b)) {
      throw std::invalid_argument("final pair member was measured");
    }
  }
}

Circuit build_qnc() {
  CircuitBuilder b(Protocol::Qnc);

  // Step 0: seven Bell pairs, H then CNOT, init-tagged slots.
  b.begin_step(0);
  for (auto [a, q] : kBellPairs) b.create_pair(a, q);
  b.slice({Hadamard{Qubit::A}, Hadamard{Qubit::C}, Hadamard{Qubit::E}, Hadamard{Qubit::G},
           Hadamard{Qubit::I}, Hadamard{Qubit::K}, Hadamard{Qubit::M}});
  b.slice({Cnot{Qubit::A, Qubit::B}, Cnot{Qubit::C, Qubit::D}, Cnot{Qubit::E, Qubit::F},
           Cnot{Qubit::G, Qubit::H}, Cnot{Qubit::I, Qubit::J}, Cnot{Qubit::K, Qubit::L},
           Cnot{Qubit::M, Qubit::N}});
  b.slice({ErrorSlot{SlotKind::InitPair, Qubit::A, Qubit::B},
           ErrorSlot{SlotKind::InitPair, Qubit::C, Qubit::D},
           ErrorSlot{SlotKind::InitPair, Qubit::E, Qubit::F},
           ErrorSlot{SlotKind::InitPair, Qubit::G, Qubit::H},
           ErrorSlot{SlotKind::InitPair, Qubit::I, Qubit::J},
           ErrorSlot{SlotKind::InitPair, Qubit::K, Qubit::L},
           ErrorSlot{SlotKind::InitPair, Qubit::M, Qubit::N}});
  b.end_step_with_memory();

  // Step 1: Con^A_{C->D} and Con^E_{G->H}.
  b.begin_step(1);
  b.slice({Cnot{Qubit::A, Qubit::C}, Cnot{Qubit::E, Qubit::G}});
  b.slice({ErrorSlot{SlotKind::GateCnot, Qubit::A, Qubit::C},
           ErrorSlot{SlotKind::GateCnot, Qubit::E, Qubit::G}});
  b.slice({ErrorSlot{SlotKind::Measure, Qubit::C, Qubit::C},
           ErrorSlot{SlotKind::Measure, Qubit::G, Qubit::G}});
  const uint8_t mC = b.reg(Qubit::C);
  const uint8_t mG = b.reg(Qubit::G);
  b.slice({MeasureZ{Qubit::C, mC}, MeasureZ{Qubit::G, mG}});
  b.slice({CondX{Qubit::D, 1u << mC}, CondX{Qubit::H, 1u << mG}});
  b.slice({ErrorSlot{SlotKind::GateSingle, Qubit::D, Qubit::D},
           ErrorSlot{SlotKind::GateSingle, Qubit::H, Qubit::H}});
  b.end_step_with_memory();

  // Step 2: Add^{D,H}_{I->J}.
  b.begin_step(2);
  b.slice({Cnot{Qubit::D, Qubit::I}});
  b.slice({ErrorSlot{SlotKind::GateCnot, Qubit::D, Qubit::I}});
  b.slice({Cnot{Qubit::H, Qubit::I}});
  b.slice({ErrorSlot{SlotKind::GateCnot, Qubit::H, Qubit::I}});
  b.slice({ErrorSlot{SlotKind::Measure, Qubit::I, Qubit::I}});
  const uint8_t mI = b.reg(Qubit::I);
  b.slice({MeasureZ{Qubit::I, mI}});
  b.slice({CondX{Qubit::J, 1u << mI}});
  b.slice({ErrorSlot{SlotKind::GateSingle, Qubit::J, Qubit::J}});
  b.end_step_with_memory();

  // Step 3: Fanout^J_{K->L, M->N}.
  b.begin_step(3);
  b.slice({Cnot{Qubit::J, Qubit::K}});
  b.slice({ErrorSlot{SlotKind::GateCnot, Qubit::J, Qubit::K}});
  b.slice({Cnot{Qubit::J, Qubit::M}});
  b.slice({ErrorSlot{SlotKind::GateCnot, Qubit::J, Qubit::M}});
  b.slice({ErrorSlot{SlotKind::Measure, Qubit::K, Qubit::K},
           ErrorSlot{SlotKind::Measure, Qubit::M, Qubit::M}});
  const uint8_t mK = b.reg(Qubit::K);
  const uint8_t mM = b.reg(Qubit::M);
  b.slice({MeasureZ{Qubit::K, mK}, MeasureZ{Qubit::M, mM}});
  b.slice({CondX{Qubit::L, 1u << mK}, CondX{Qubit::N, 1u << mM}});
  b.slice({ErrorSlot{SlotKind::GateSingle, Qubit::L, Qubit::L},
           ErrorSlot{SlotKind::GateSingle, Qubit::N, Qubit::N}});
  b.end_step_with_memory();

  // Step 4: the crossing CNOTs.
  b.begin_step(4);
  b.slice({Cnot{Qubit::L, Qubit::B}, Cnot{Qubit::N, Qubit::F}});
  b.slice({ErrorSlot{SlotKind::GateCnot, Qubit::L, Qubit::B},
           ErrorSlot{SlotKind::GateCnot, Qubit::N, Qubit::F}});
  b.end_step_with_memory();

  // Step 5: Rem_{L->J} and Rem_{N->J}.
  b.begin_step(5);
  b.slice({ErrorSlot{SlotKind::Measure, Qubit::L, Qubit::L},
           ErrorSlot{SlotKind::Measure, Qubit::N, Qubit::N}});
  const uint8_t mL = b.reg(Qubit::L);
  const uint8_t mN = b.reg(Qubit::N);
  b.slice({MeasureX{Qubit::L, mL}, MeasureX{Qubit::N, mN}});
  b.slice({CondZ{Qubit::J, 1u << mL}});
  b.slice({ErrorSlot{SlotKind::GateSingle, Qubit::J, Qubit::J}});
  b.slice({CondZ{Qubit::J, 1u << mN}});
  b.slice({ErrorSlot{SlotKind::GateSingle, Qubit::J, Qubit::J}});
  b.end_step_with_memory();

  // Step 6: RemAdd_{J->D,H}.
  b.begin_step(6);
  b.slice({ErrorSlot{SlotKind::Measure, Qubit::J, Qubit::J}});
  const uint8_t mJ = b.reg(Qubit::J);
  b.slice({MeasureX{Qubit::J, mJ}});
  b.slice({CondZ{Qubit::D, 1u << mJ}, CondZ{Qubit::H, 1u << mJ}});
  b.slice({ErrorSlot{SlotKind::GateSingle, Qubit::D, Qubit::D},
           ErrorSlot{SlotKind::GateSingle, Qubit::H, Qubit::H}});
  b.end_step_with_memory();

  // Step 7: Rem_{D->A} and Rem_{H->E}.
  b.begin_step(7);
  b.slice({ErrorSlot{SlotKind::Measure, Qubit::D, Qubit::D},
           ErrorSlot{SlotKind::Measure, Qubit::H, Qubit::H}});
  const uint8_t mD = b.reg(Qubit::D);
  const uint8_t mH = b.reg(Qubit::H);
  b.slice({MeasureX{Qubit::D, mD}, MeasureX{Qubit::H, mH}});
  b.slice({CondZ{Qubit::A, 1u << mD}, CondZ{Qubit::E, 1u << mH}});
  b.slice({ErrorSlot{SlotKind::GateSingle, Qubit::A, Qubit::A},
           ErrorSlot{SlotKind::GateSingle, Qubit::E, Qubit::E}});
  b.end_step_with_memory();

  return b.finish({{Qubit::A, Qubit::F}, {Qubit::B, Qubit::E}}, 1);
}

Circuit build_2es(int cycles) {
  if (cycles != 1 && cycles != 2) {
    throw std::invalid_argument("2ES cycles must be 1 or 2");
  }
  CircuitBuilder b(Protocol::TwoEs);

  b.begin_step(0);
  b.create_pair(Qubit::C, Qubit::D);
  b.create_pair(Qubit::I, Qubit::J);
  b.create_pair(Qubit::M, Qubit::N);
  b.slice({Hadamard{Qubit::C}, Hadamard{Qubit::I}, Hadamard{Qubit::M}});
  b.slice({Cnot{Qubit::C, Qubit::D}, Cnot{Qubit::I, Qubit::J}, Cnot{Qubit::M, Qubit::N}});
  b.slice({ErrorSlot{SlotKind::InitPair, Qubit::C, Qubit::D},
           ErrorSlot{SlotKind::InitPair, Qubit::I, Qubit::J},
           ErrorSlot{SlotKind::InitPair, Qubit::M, Qubit::N}});
  b.end_step_with_memory();

  // ES^{(C,D)}_{(I,J)} = Rem_{D->C} Con^D_{I->J}. Each constituent
  // operator occupies one time step, matching the per-operator step
  // granularity of the seven-step protocol.
  b.begin_step(1);
  b.slice({Cnot{Qubit::D, Qubit::I}});
  b.slice({ErrorSlot{SlotKind::GateCnot, Qubit::D, Qubit::I}});
  b.slice({ErrorSlot{SlotKind::Measure, Qubit::I, Qubit::I}});
  const uint8_t mI = b.reg(Qubit::I);
  b.slice({MeasureZ{Qubit::I, mI}});
  b.slice({CondX{Qubit::J, 1u << mI}});
  b.slice({ErrorSlot{SlotKind::GateSingle, Qubit::J, Qubit::J}});
  b.end_step_with_memory();

  b.begin_step(2);
  b.slice({ErrorSlot{SlotKind::Measure, Qubit::D, Qubit::D}});
  const uint8_t mD = b.reg(Qubit::D);
  b.slice({MeasureX{Qubit::D, mD}});
  b.slice({CondZ{Qubit::C, 1u << mD}});
  b.slice({ErrorSlot{SlotKind::GateSingle, Qubit::C, Qubit::C}});
  b.end_step_with_memory();

  // ES^{(C,J)}_{(M,N)} = Rem_{J->C} Con^J_{M->N}.
  b.begin_step(3);
  b.slice({Cnot{Qubit::J, Qubit::M}});
  b.slice({ErrorSlot{SlotKind::GateCnot, Qubit::J, Qubit::M}});
  b.slice({ErrorSlot{SlotKind::Measure, Qubit::M, Qubit::M}});
  const uint8_t mM = b.reg(Qubit::M);
  b.slice({MeasureZ{Qubit::M, mM}});
  b.slice({CondX{Qubit::N, 1u << mM}});
  b.slice({ErrorSlot{SlotKind::GateSingle, Qubit::N, Qubit::N}});
  b.end_step_with_memory();

  b.begin_step(4);
  b.slice({ErrorSlot{SlotKind::Measure, Qubit::J, Qubit::J}});
  const uint8_t mJ = b.reg(Qubit::J);
  b.slice({MeasureX{Qubit::J, mJ}});
  b.slice({CondZ{Qubit::C, 1u << mJ}});
  b.slice({ErrorSlot{SlotKind::GateSingle, Qubit::C, Qubit::C}});
  b.end_step_with_memory();

  return b.finish({{Qubit::C, Qubit::N}}, cycles);
}

namespace {

// Shared single-trial interpreter. `draw_unit`/`draw_bit` supply the
// stochastic inputs; propagate() wires them to constants.
template <typename DrawUnit, typename DrawBit>
TrialOutcome run_trial(const Circuit& circuit, const ErrorModel& model,
                       std::span<const Injection> injections, DrawUnit&& draw_unit,
                       DrawBit&& draw_bit) {
  TrialOutcome out;
  int meas_index = 0;
  int pair_slot = 0;
  for (int rep = 0; rep < circuit.repetitions; ++rep) {
    PauliFrame frame;
    uint32_t flips = 0;
    int flat = -1;
    auto inject_after = [&](int pos) {
      for (const auto& inj : injections) {
        if (inj.after_flat_pos == pos) frame = frame.composed(inj.frame);
      }
    };
    if (rep == 0) inject_after(-1);
    for (const auto& slice : circuit.slices) {
      for (const auto& step : slice.steps) {
        ++flat;
        std::visit(
            [&](const auto& s) {
              using T = std::decay_t<decltype(s)>;
              if constexpr (std::is_same_v<T, Hadamard>) {
                conjugate_h(frame, s.q);
              } else if constexpr (std::is_same_v<T, Cnot>) {
                conjugate_cnot(frame, s.control, s.target);
              } else if constexpr (std::is_same_v<T, MeasureZ> || std::is_same_v<T, MeasureX>) {
                constexpr Basis basis = std::is_same_v<T, MeasureZ> ? Basis::Z : Basis::X;
                const bool flip = measurement_flips(frame, s.q, basis);
                const bool ideal = draw_bit(meas_index);
                const bool recorded = ideal ^ flip;
                if (flip) flips |= 1u << s.reg;
                if (recorded) out.outcome_bits |= 1u << meas_index;
                frame.clear(s.q);
                ++meas_index;
              } else if constexpr (std::is_same_v<T, CondX> || std::is_same_v<T, CondZ>) {
                // Relative to the branch's ideal execution, the frame
                // picks up the correction exactly when the flip parity
                // of the referenced outcomes is odd.
                if (std::popcount(flips & s.reg_mask) & 1) {
                  frame.apply(std::is_same_v<T, CondX> ? Pauli::X : Pauli::Z, s.q);
                }
              } else if constexpr (std::is_same_v<T, ErrorSlot>) {
                const double u = draw_unit();
                switch (s.kind) {
                  case SlotKind::InitPair:
                    switch (model.initial_kind) {
                      case InitialKind::None:
                        break;
                      case InitialKind::ZOnly:
                        if (u < model.p_init) frame.apply(Pauli::Z, s.b);
                        break;
                      case InitialKind::XOnly:
                        if (u < model.p_init) frame.apply(Pauli::X, s.b);
                        break;
                      case InitialKind::GeneralPauli: {
                        auto [pa, pb] = cnot_error_from_unit(model.p_init, u);
                        frame.apply(pa, s.a);
                        frame.apply(pb, s.b);
                        break;
                      }
                    }
                    break;
                  case SlotKind::GateCnot: {
                    auto [pa, pb] = cnot_error_from_unit(model.p_gate, u);
                    frame.apply(pa, s.a);
                    frame.apply(pb, s.b);
                    break;
                  }
                  case SlotKind::GateSingle:
                  case SlotKind::Measure:
                    frame.apply(local_error_from_unit(model.p_gate, u), s.a);
                    break;
                  case SlotKind::Memory:
                    frame.apply(local_error_from_unit(model.p_memory, u), s.a);
                    break;
                }
              }
            },
            step);
        if (rep == 0) inject_after(flat);
      }
    }
    for (auto [a, bq] : circuit.final_pairs) {
      out.bell[pair_slot++] = classify_pair(frame, a, bq);
    }
  }
  out.pair_count = pair_slot;
  out.m = out.pair_count > 0 && out.bell[0] != BellIndex::PsiPlus;
  out.n = out.pair_count > 1 && out.bell[1] != BellIndex::PsiPlus;
  return out;
}

}  // namespace

TrialOutcome execute(const Circuit& circuit, const ErrorModel& model, TrialRng& rng) {
  model.validate();
  return run_trial(
      circuit, model, {}, [&] { return rng.next_unit(); },
      [&](int) { return (rng.next_u64() >> 63) != 0; });
}

TrialOutcome propagate(const Circuit& circuit, std::span<const Injection> injections,
                       uint32_t branch_bits) {
  return run_trial(
      circuit, ErrorModel::null_model(), injections, [] { return 1.0; },
      [&](int i) { return ((branch_bits >> i) & 1u) != 0; });
}

TrialOutcome propagate(const Circuit& circuit, const PauliFrame& initial_error,
                       uint32_t branch_bits) {
  const Injection inj{circuit.init_end(), initial_error};
  return propagate(circuit, std::span(&inj, 1), branch_bits);
}

bool validate_branch_independence(const Circuit& circuit, const PauliFrame& injected) {
  const int m = circuit.measurement_count() * circuit.repetitions;
  if (m > 20) throw std::invalid_argument("too many measurement branches to enumerate");
  const TrialOutcome ref = propagate(circuit, injected, 0);
  for (uint32_t branch = 1; branch < (1u << m); ++branch) {
    const TrialOutcome got = propagate(circuit, injected, branch);
    if (got.bell != ref.bell) return false;
  }
  return true;
}

}  // namespace qnc
