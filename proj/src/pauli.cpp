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

#include "qnc/pauli.hpp"

namespace qnc {

Pauli pauli_from_label(char c) {
  switch (c) {
    case 'I': return Pauli::I;
    case 'X': return Pauli::X;
    case 'Y': return Pauli::Y;
    case 'Z': return Pauli::Z;
    default: throw std::invalid_argument(std::string("not a Pauli label: ") + c);
  }
}

Qubit qubit_from_label(char c) {
  if (c < 'A' || c > 'N') {
    throw std::invalid_argument(std::string("not a qubit label: ") + c);
  }
  return static_cast<Qubit>(c - 'A');
}

const char* bell_name(BellIndex b) {
  switch (b) {
    case BellIndex::PsiPlus: return "PsiPlus";
    case BellIndex::PhiPlus: return "PhiPlus";
    case BellIndex::PsiMinus: return "PsiMinus";
    case BellIndex::PhiMinus: return "PhiMinus";
  }
  return "?";
}

void conjugate_cnot(PauliFrame& frame, Qubit control, Qubit target) {
  if (control == target) {
    throw std::invalid_argument("CNOT control and target must differ");
  }
  const uint16_t cbit = static_cast<uint16_t>(1u << index_of(control));
  const uint16_t tbit = static_cast<uint16_t>(1u << index_of(target));
  if (frame.x & cbit) frame.x ^= tbit;
  if (frame.z & tbit) frame.z ^= cbit;
}

void conjugate_h(PauliFrame& frame, Qubit q) {
  const uint16_t bit = static_cast<uint16_t>(1u << index_of(q));
  const bool xb = frame.x & bit;
  const bool zb = frame.z & bit;
  if (xb != zb) {
    frame.x ^= bit;
    frame.z ^= bit;
  }
}

bool measurement_flips(const PauliFrame& frame, Qubit q, Basis basis) {
  const uint16_t bit = static_cast<uint16_t>(1u << index_of(q));
  return basis == Basis::Z ? (frame.x & bit) != 0 : (frame.z & bit) != 0;
}

BellIndex classify_pair(const PauliFrame& frame, Qubit a, Qubit b) {
  const unsigned xp = ((frame.x >> index_of(a)) ^ (frame.x >> index_of(b))) & 1u;
  const unsigned zp = ((frame.z >> index_of(a)) ^ (frame.z >> index_of(b))) & 1u;
  return static_cast<BellIndex>(xp | (zp << 1));
}

}  // namespace qnc
