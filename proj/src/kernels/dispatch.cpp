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

#include <stdexcept>

#include "qnc/kernels.hpp"

namespace qnc {

namespace {

bool cpu_has_avx2() {
#if defined(QNC_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

}  // namespace

std::vector<std::string> available_kernels() {
  std::vector<std::string> out{"scalar"};
  if (cpu_has_avx2()) out.push_back("avx2");
  return out;
}

BatchKernel select_batch_kernel() {
#if defined(QNC_HAVE_AVX2)
  if (cpu_has_avx2()) return {run_batch_avx2, "avx2"};
#endif
  return {run_batch_scalar, "scalar"};
}

BatchKernel select_batch_kernel(const std::string& name) {
  if (name == "auto") return select_batch_kernel();
  if (name == "scalar") return {run_batch_scalar, "scalar"};
#if defined(QNC_HAVE_AVX2)
  if (name == "avx2") {
    if (!cpu_has_avx2()) throw std::invalid_argument("avx2 kernel unsupported on this CPU");
    return {run_batch_avx2, "avx2"};
  }
#endif
  throw std::invalid_argument("unknown kernel: " + name);
}

}  // namespace qnc
