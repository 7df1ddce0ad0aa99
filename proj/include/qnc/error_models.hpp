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

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qnc/pauli.hpp"
#include "qnc/rng.hpp"

namespace qnc {

// Which error channel decorates the initial Bell pairs.
//
// ZOnly / XOnly place one potential flip per pair on the pair's CNOT
// target member with probability p_init (the choice of member is
// irrelevant by pair symmetry). GeneralPauli applies the correlated
// two-qubit Pauli channel of the pair-creation CNOT with p = p_init:
// the identity pair with probability 1 - p, each of the 15 non-identity
// Pauli pairs with probability p/15.
enum class InitialKind : uint8_t { None, ZOnly, XOnly, GeneralPauli };

const char* initial_kind_name(InitialKind k);
InitialKind initial_kind_from_name(const std::string& s);

struct ErrorModel {
  InitialKind initial_kind = InitialKind::None;
  double p_init = 0.0;
  double p_gate = 0.0;
  double p_memory = 0.0;

  // Channel fidelity convention: p = 1 - F throughout.
  static ErrorModel initial_only(InitialKind kind, double fidelity);
  static ErrorModel null_model() { return {}; }

  ErrorModel& with_gate_fidelity(double fidelity);

  // Resulting fidelity of one initial pair under GeneralPauli, 1 - 4p/5.
  double pair_fidelity() const { return 1.0 - 4.0 * p_init / 5.0; }

  // Throws std::invalid_argument naming the offending field.
  void validate() const;
};

struct WeightedFrame {
  PauliFrame frame;
  double probability = 0.0;
};

// Bell-state weights of one initial pair after the correlated CNOT
// channel with parameter p, indexed by BellIndex:
// PsiPlus 1 - 4p/5, each other state 4p/15.
std::array<double, 4> bell_pair_mixture(double p);

// Exhaustive enumeration of the initial-error mixture over the given
// Bell pairs (frames are relative to the ideal post-creation state).
// ZOnly/XOnly yield 2^n entries with weight-w probability
// F^(n-w) (1-F)^w; GeneralPauli yields 4^n entries from the per-pair
// Bell mixture, realized as one of {I,X,Y,Z} on each pair's target
// member. Probabilities sum to 1 within 1e-12.
std::vector<WeightedFrame> enumerate_initial(
    const ErrorModel& model,
    std::span<const std::pair<Qubit, Qubit>> pairs);

// QNC default: all seven pairs.
std::vector<WeightedFrame> enumerate_initial(const ErrorModel& model);

// Index order used when slicing one uniform into Pauli choices:
// 0 I, 1 X, 2 Y, 3 Z.
constexpr Pauli pauli_from_index(unsigned i) {
  return pauli_from_bits(((i + 1) >> 1) & 1u, (i >> 1) & 1u);
}

// Deterministic mapping from one uniform in [0,1) to a channel outcome.
// The SIMD kernels evaluate the identical double arithmetic, so the
// mapping is the single source of truth for cross-kernel equivalence.
Pauli local_error_from_unit(double p, double u);
std::pair<Pauli, Pauli> cnot_error_from_unit(double p, double u);

// Single-qubit depolarizing draw: I with probability 1 - p, otherwise
// X, Y, Z uniformly. Consumes exactly one uniform.
Pauli sample_local_error(double p, TrialRng& rng);

// Correlated two-qubit CNOT channel draw: (I,I) with probability 1 - p,
// otherwise one of the 15 non-identity pairs uniformly. Consumes
// exactly one uniform.
std::pair<Pauli, Pauli> sample_cnot_error(double p, TrialRng& rng);

}  // namespace qnc
