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
#include <vector>

#include "qnc/analytic.hpp"
#include "qnc/circuit.hpp"
#include "qnc/kernels.hpp"

namespace qnc {

struct McConfig {
  Protocol protocol = Protocol::Qnc;
  ErrorModel model;
  uint64_t seed = 0;
  uint64_t target_error_events = 20000;
  uint64_t max_trials = 100000000;
  uint64_t batch_size = 65536;
  int workers = 1;        // 0 = hardware concurrency
  int cycles = 2;         // bottleneck repetitions for the two-swap chain
  std::string kernel = "auto";

  void validate() const;  // throws std::invalid_argument naming the field
};

struct McEstimate {
  uint64_t trials = 0;
  uint64_t error_events = 0;  // any trial with a non-PsiPlus final pair
  double joint_success = 0.0;
  double stderr_est = 0.0;    // sqrt(p(1-p)/trials)
  std::array<uint64_t, 16> outcome_counts{};
  double trials_per_second = 0.0;
  std::string kernel;
};

// Runs trials in batches of batch_size until the end of the first batch
// where error_events >= target_error_events, or trials >= max_trials.
// Trial i draws from a stream derived from (seed, i) alone, so the
// estimate is bit-identical for every worker count and batch schedule.
McEstimate run(const McConfig& config);

struct SweepPoint {
  double gate_fidelity;
  McEstimate estimate;
};

// One independent run per gate-fidelity grid point, seeds derived from
// (config.seed, point index). The config's model supplies the initial
// error channel; its gate/memory probabilities are overridden per point.
std::vector<SweepPoint> sweep_gate_fidelity(const McConfig& config, double gate_f_from,
                                            double gate_f_to, double step);

}  // namespace qnc
