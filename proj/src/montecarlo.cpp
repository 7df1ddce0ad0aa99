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

#include "qnc/montecarlo.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "qnc/rng.hpp"

namespace qnc {

void McConfig::validate() const {
  model.validate();
  if (target_error_events < 1) throw std::invalid_argument("target_error_events must be >= 1");
  if (batch_size < 1) throw std::invalid_argument("batch_size must be >= 1");
  if (max_trials < batch_size) throw std::invalid_argument("max_trials must be >= batch_size");
  if (workers < 0) throw std::invalid_argument("workers must be >= 0");
  if (cycles != 1 && cycles != 2) throw std::invalid_argument("cycles must be 1 or 2");
}

McEstimate run(const McConfig& config) {
  config.validate();
  const Circuit circuit =
      config.protocol == Protocol::Qnc ? build_qnc() : build_2es(config.cycles);
  const CompiledProgram prog = compile(circuit, config.model);
  const BatchKernel kernel = select_batch_kernel(config.kernel);
  const int workers = config.workers == 0
                          ? std::max(1u, std::thread::hardware_concurrency())
                          : config.workers;

  McEstimate est;
  est.kernel = kernel.name;
  const auto t0 = std::chrono::steady_clock::now();

  // The batch sequence on the trial counter is fixed by the config
  // alone. Workers run whole batches in parallel; the stopping decision
  // then folds batch counts in sequence order and discards any batch
  // past the stopping point, so worker count never changes the result.
  bool stop = false;
  while (!stop && est.trials < config.max_trials) {
    std::vector<std::array<uint64_t, 16>> partial;
    std::vector<uint64_t> sizes;
    uint64_t offset = est.trials;
    for (int w = 0; w < workers && offset < config.max_trials; ++w) {
      sizes.push_back(std::min<uint64_t>(config.batch_size, config.max_trials - offset));
      offset += sizes.back();
    }
    partial.assign(sizes.size(), {});
    if (sizes.size() == 1) {
      kernel.fn(prog, config.seed, est.trials, sizes[0], partial[0].data(), nullptr);
    } else {
      std::vector<std::thread> pool;
      uint64_t first = est.trials;
      for (size_t w = 0; w < sizes.size(); ++w) {
        pool.emplace_back([&, w, first, n = sizes[w]] {
          kernel.fn(prog, config.seed, first, n, partial[w].data(), nullptr);
        });
        first += sizes[w];
      }
      for (auto& th : pool) th.join();
    }
    for (size_t w = 0; w < sizes.size() && !stop; ++w) {
      for (int i = 0; i < 16; ++i) est.outcome_counts[i] += partial[w][i];
      est.trials += sizes[w];
      uint64_t errors = 0;
      for (int i = 1; i < 16; ++i) errors += est.outcome_counts[i];
      est.error_events = errors;
      stop = est.error_events >= config.target_error_events;
    }
  }

  const auto t1 = std::chrono::steady_clock::now();
  const double seconds = std::chrono::duration<double>(t1 - t0).count();
  est.joint_success =
      1.0 - static_cast<double>(est.error_events) / static_cast<double>(est.trials);
  est.stderr_est = std::sqrt(est.joint_success * (1.0 - est.joint_success) /
                             static_cast<double>(est.trials));
  est.trials_per_second = seconds > 0 ? static_cast<double>(est.trials) / seconds : 0.0;
  return est;
}

std::vector<SweepPoint> sweep_gate_fidelity(const McConfig& config, double gate_f_from,
                                            double gate_f_to, double step) {
  if (!(gate_f_from >= 0.0 && gate_f_to <= 1.0 && gate_f_from <= gate_f_to)) {
    throw std::invalid_argument("gate fidelity range must satisfy 0 <= from <= to <= 1");
  }
  if (!(step > 0.0)) throw std::invalid_argument("step must be > 0");
  std::vector<SweepPoint> out;
  const int points = static_cast<int>(std::round((gate_f_to - gate_f_from) / step)) + 1;
  for (int i = 0; i < points; ++i) {
    const double gate_f = std::min(gate_f_to, gate_f_from + i * step);
    McConfig point = config;
    point.model.with_gate_fidelity(gate_f);
    point.seed = mix64(config.seed ^ (kSplitmixGamma * static_cast<uint64_t>(i + 1)));
    out.push_back({gate_f, run(point)});
  }
  return out;
}

}  // namespace qnc
