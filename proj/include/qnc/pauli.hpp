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

#include <array>
#include <cstdint>
#include <stdexcept>
#include <utility>

namespace qnc {

// Phase-free Pauli algebra on the fixed 14-qubit butterfly register.
//
// A Pauli is stored as an (x, z) bit pair: I=(0,0), X=(1,0), Y=(1,1),
// Z=(0,1). Multiplication is componentwise XOR; global phases are
// discarded throughout, so the product is commutative at this level.

enum class Pauli : uint8_t { I = 0, X = 1, Y = 3, Z = 2 };

constexpr bool pauli_has_x(Pauli p) { return static_cast<uint8_t>(p) & 1u; }
constexpr bool pauli_has_z(Pauli p) { return static_cast<uint8_t>(p) & 2u; }

constexpr Pauli pauli_from_bits(bool x, bool z) {
  return static_cast<Pauli>((x ? 1u : 0u) | (z ? 2u : 0u));
}

constexpr Pauli pauli_mul(Pauli a, Pauli b) {
  return static_cast<Pauli>(static_cast<uint8_t>(a) ^ static_cast<uint8_t>(b));
}

constexpr char pauli_label(Pauli p) {
  switch (p) {
    case Pauli::I: return 'I';
    case Pauli::X: return 'X';
    case Pauli::Y: return 'Y';
    case Pauli::Z: return 'Z';
  }
  return '?';
}

Pauli pauli_from_label(char c);

// The 14 named qubits of the butterfly layout, A..N. The seven initial
// Bell pairs are the consecutive letter pairs (A,B), (C,D), ..., (M,N).
enum class Qubit : uint8_t { A, B, C, D, E, F, G, H, I, J, K, L, M, N };

inline constexpr int kQubitCount = 14;
inline constexpr int kBellPairCount = 7;

constexpr uint8_t index_of(Qubit q) { return static_cast<uint8_t>(q); }
constexpr char label_of(Qubit q) { return static_cast<char>('A' + index_of(q)); }

Qubit qubit_from_label(char c);

// The fixed pair mate: A<->B, C<->D, ...
constexpr Qubit pair_mate(Qubit q) {
  return static_cast<Qubit>(index_of(q) ^ 1u);
}

inline constexpr std::array<std::pair<Qubit, Qubit>, kBellPairCount>
    kBellPairs = {{{Qubit::A, Qubit::B},
                   {Qubit::C, Qubit::D},
                   {Qubit::E, Qubit::F},
                   {Qubit::G, Qubit::H},
                   {Qubit::I, Qubit::J},
                   {Qubit::K, Qubit::L},
                   {Qubit::M, Qubit::N}}};

enum class Basis : uint8_t { Z, X };

// Bell-state index of a final pair, i.e. the error syndrome of the pair.
// PsiPlus is the error-free correlation (|00>+|11>)/sqrt(2) in the
// naming convention used throughout this project.
enum class BellIndex : uint8_t { PsiPlus = 0, PhiPlus = 1, PsiMinus = 2, PhiMinus = 3 };

const char* bell_name(BellIndex b);

// Accumulated Pauli error on the 14-qubit register, as two bit vectors.
// Frames compose by XOR; conjugation through Clifford gates is O(1).
// Signs are discarded: every observable we care about (measurement
// flips, Bell classification) depends only on commutation.
struct PauliFrame {
  uint16_t x = 0;
  uint16_t z = 0;

  constexpr bool operator==(const PauliFrame&) const = default;

  constexpr bool is_identity() const { return x == 0 && z == 0; }

  constexpr Pauli at(Qubit q) const {
    return pauli_from_bits((x >> index_of(q)) & 1u, (z >> index_of(q)) & 1u);
  }

  constexpr void apply(Pauli p, Qubit q) {
    if (pauli_has_x(p)) x ^= static_cast<uint16_t>(1u << index_of(q));
    if (pauli_has_z(p)) z ^= static_cast<uint16_t>(1u << index_of(q));
  }

  constexpr PauliFrame composed(const PauliFrame& other) const {
    return PauliFrame{static_cast<uint16_t>(x ^ other.x),
                      static_cast<uint16_t>(z ^ other.z)};
  }

  constexpr void clear(Qubit q) {
    const uint16_t mask = static_cast<uint16_t>(~(1u << index_of(q)));
    x &= mask;
    z &= mask;
  }
};

// CNOT conjugation: X on the control propagates to the target, Z on the
// target propagates to the control. Throws on identical qubit ids.
void conjugate_cnot(PauliFrame& frame, Qubit control, Qubit target);

// Hadamard conjugation: swaps the X and Z components on q (Y maps to Y
// up to the discarded phase).
void conjugate_h(PauliFrame& frame, Qubit q);

// True iff the frame anticommutes with the measured observable: a
// Z-basis result flips iff the X component is present, an X-basis
// result flips iff the Z component is present.
bool measurement_flips(const PauliFrame& frame, Qubit q, Basis basis);

// Bell classification of a final pair from the frame parities:
// (x-parity, z-parity) = (0,0) PsiPlus, (1,0) PhiPlus, (0,1) PsiMinus,
// (1,1) PhiMinus. Invariant under applying the same Pauli to both
// members.
BellIndex classify_pair(const PauliFrame& frame, Qubit a, Qubit b);

}  // namespace qnc
