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

namespace qnc {

// Counter-based per-trial randomness: trial i draws from a splitmix64
// stream whose state is derived from (master seed, i) alone, so results
// are reproducible for any batch schedule or worker count. The SIMD
// kernels evaluate the identical integer recurrence lane-wise.

inline constexpr uint64_t kSplitmixGamma = 0x9E3779B97F4A7C15ull;

constexpr uint64_t mix64(uint64_t v) {
  v ^= v >> 33;
  v *= 0xFF51AFD7ED558CCDull;
  v ^= v >> 33;
  v *= 0xC4CEB9FE1A85EC53ull;
  v ^= v >> 33;
  return v;
}

constexpr uint64_t trial_stream_state(uint64_t seed, uint64_t trial) {
  return mix64(seed + kSplitmixGamma * (trial + 1));
}

constexpr uint64_t splitmix_output(uint64_t state) {
  uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

class TrialRng {
 public:
  TrialRng(uint64_t seed, uint64_t trial) : state_(trial_stream_state(seed, trial)) {}

  uint64_t next_u64() {
    state_ += kSplitmixGamma;
    return splitmix_output(state_);
  }

  // Uniform in [0, 1) with 53 significant bits.
  double next_unit() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

 private:
  uint64_t state_;
};

}  // namespace qnc
