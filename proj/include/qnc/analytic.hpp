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
#include <optional>

#include "qnc/circuit.hpp"
#include "qnc/error_models.hpp"

namespace qnc {

// Exact joint distribution over the two final Bell indices, indexed by
// outcome code bell0 * 4 + bell1 (bell1 = 0 when only one pair exists).
struct JointDistribution {
  std::array<double, 16> probs{};

  double joint_fidelity() const { return probs[0]; }

  // Collapse to the error flags (m, n): m = first pair not PsiPlus,
  // n = second pair not PsiPlus. Returns {P00, P01, P10, P11}.
  std::array<double, 4> collapsed_mn() const;
};

struct CorrelationTable {
  double a, b, c, d;  // joint probabilities (AF ok/err) x (BE ok/err)
  double e, f, g, h;  // marginals: e=a+b, f=c+d, g=a+c, h=b+d
  double phi;         // (ad - bc) / sqrt(efgh)
};

struct StepFidelities {
  double con_z;     // 1 - 2F(1-F)
  double add_z;     // F^3 + (1-F)^3
  double fanout_z;  // F^3
  double fanout_x;  // F^3 - (1-F)^3, as printed; the enumeration
                    // oracle gives F^3 (see docs)
};

// The closed-form polynomials for the butterfly protocol under
// independent single-pair phase flips with probability 1-F, evaluated
// verbatim. Returns {P00, P01, P10, P11}.
std::array<double, 4> qnc_z_joint(double F);

// Double-swap chain under the same channel: {P0, P1} for one cycle.
std::array<double, 2> es2_single(double F);

StepFidelities step_fidelities(double F);

// Exhaustive-enumeration output distribution for initial-pair errors
// only (requires p_gate = p_memory = 0). Each enumerated error frame is
// pushed through the circuit on the canonical all-zero measurement
// branch; branch independence is verified separately. For the two-swap
// protocol the joint is the independent product of two cycles.
JointDistribution exact_distribution(Protocol protocol, const ErrorModel& model);

// 2x2 correlation of the two final-pair error flags under the phase-
// flip-only model. Throws std::domain_error naming the degenerate
// marginal when any of e, f, g, h vanishes (F = 0 or 1).
CorrelationTable correlation_at(double F);

// Input fidelity at which the joint output fidelity crosses 1/2,
// by bisection on [0.5, 1] to 1e-6. The fidelity axis is the pair
// fidelity: for ZOnly/XOnly this is 1 - p; for GeneralPauli it is
// 1 - 4p/5 (the channel parameter is p = 5(1-F)/4). nullopt when there
// is no crossing.
std::optional<double> find_threshold(Protocol protocol, InitialKind kind);

}  // namespace qnc
