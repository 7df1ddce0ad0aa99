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

#include <complex>
#include <vector>

#include "qnc/circuit.hpp"

namespace qnc::testing {

// Brute-force state-vector simulator used as an independent oracle for
// the Pauli-frame tracker. Qubit indices are bit positions; supports up
// to the full 14-qubit register.
class DenseSim {
 public:
  explicit DenseSim(int nqubits);

  int qubit_count() const { return n_; }

  void apply_h(int q);
  void apply_cnot(int control, int target);
  void apply_pauli(Pauli p, int q);
  void apply_frame(const PauliFrame& frame);

  // Projects qubit q onto the given basis outcome and renormalizes;
  // returns the pre-projection probability of that outcome. Throws if
  // the outcome has (near-)zero probability.
  double measure_forced(int q, Basis basis, bool outcome);

  // <psi| P |psi> for a (phase-free) Pauli string; real for stabilizer
  // states of interest.
  std::complex<double> expectation(const PauliFrame& op) const;

  // |<other|this>|, for global-phase-insensitive state comparison.
  double overlap_magnitude(const DenseSim& other) const;

 private:
  int n_;
  std::vector<std::complex<double>> amp_;
};

struct DenseRun {
  DenseSim state;
  uint32_t recorded_bits = 0;
};

// Executes the circuit IR (one repetition) on the dense simulator with
// all measurement outcomes forced to the bits of `branch_bits`, applying
// feedforward corrections from the recorded outcomes and composing each
// injection after its flat position. Error slots are inert.
DenseRun run_dense(const Circuit& circuit, std::span<const Injection> injections,
                   uint32_t branch_bits);

// True iff pair (a,b) of the state is exactly the error-free Bell
// correlation: stabilizers X_a X_b and Z_a Z_b both have expectation 1.
bool is_psi_plus(const DenseSim& sim, Qubit a, Qubit b, double tol = 1e-9);

}  // namespace qnc::testing
