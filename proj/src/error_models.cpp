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

#include "qnc/error_models.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace qnc {

namespace {

void check_probability(double p, const char* field) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::invalid_argument(std::string(field) + " must be in [0,1]");
  }
}

}  // namespace

const char* initial_kind_name(InitialKind k) {
  switch (k) {
    case InitialKind::None: return "none";
    case InitialKind::ZOnly: return "z";
    case InitialKind::XOnly: return "x";
    case InitialKind::GeneralPauli: return "pauli";
  }
  return "?";
}

InitialKind initial_kind_from_name(const std::string& s) {
  if (s == "none") return InitialKind::None;
  if (s == "z") return InitialKind::ZOnly;
  if (s == "x") return InitialKind::XOnly;
  if (s == "pauli") return InitialKind::GeneralPauli;
  throw std::invalid_argument("unknown error model: " + s);
}

ErrorModel ErrorModel::initial_only(InitialKind kind, double fidelity) {
  check_probability(fidelity, "fidelity");
  ErrorModel m;
  m.initial_kind = kind;
  m.p_init = 1.0 - fidelity;
  return m;
}

ErrorModel& ErrorModel::with_gate_fidelity(double fidelity) {
  check_probability(fidelity, "gate fidelity");
  p_gate = 1.0 - fidelity;
  p_memory = p_gate;
  return *this;
}

void ErrorModel::validate() const {
  check_probability(p_init, "p_init");
  check_probability(p_gate, "p_gate");
  check_probability(p_memory, "p_memory");
}

std::array<double, 4> bell_pair_mixture(double p) {
  check_probability(p, "p");
  std::array<double, 4> w{};
  w[static_cast<size_t>(BellIndex::PsiPlus)] = 1.0 - 4.0 * p / 5.0;
  w[static_cast<size_t>(BellIndex::PhiPlus)] = 4.0 * p / 15.0;
  w[static_cast<size_t>(BellIndex::PsiMinus)] = 4.0 * p / 15.0;
  w[static_cast<size_t>(BellIndex::PhiMinus)] = 4.0 * p / 15.0;
  return w;
}

std::vector<WeightedFrame> enumerate_initial(
    const ErrorModel& model, std::span<const std::pair<Qubit, Qubit>> pairs) {
  model.validate();
  const size_t n = pairs.size();
  std::vector<WeightedFrame> out;

  switch (model.initial_kind) {
    case InitialKind::None:
      throw std::invalid_argument("enumerate_initial requires a non-null initial kind");

    case InitialKind::ZOnly:
    case InitialKind::XOnly: {
      const Pauli flip = model.initial_kind == InitialKind::ZOnly ? Pauli::Z : Pauli::X;
      const double f = 1.0 - model.p_init;
      out.reserve(size_t{1} << n);
      for (size_t bits = 0; bits < (size_t{1} << n); ++bits) {
        WeightedFrame wf;
        wf.probability = 1.0;
        for (size_t i = 0; i < n; ++i) {
          if ((bits >> i) & 1u) {
            wf.frame.apply(flip, pairs[i].second);
            wf.probability *= model.p_init;
          } else {
            wf.probability *= f;
          }
        }
        out.push_back(wf);
      }
      break;
    }

    case InitialKind::GeneralPauli: {
      // One of {I,X,Y,Z} on the target member of each pair, weighted by
      // the per-pair Bell mixture. Equivalent to the two-sided CNOT
      // channel by the pair-symmetry equations.
      const auto mix = bell_pair_mixture(model.p_init);
      const double w_id = mix[static_cast<size_t>(BellIndex::PsiPlus)];
      const double w_err = mix[static_cast<size_t>(BellIndex::PhiPlus)];
      out.reserve(size_t{1} << (2 * n));
      for (size_t code = 0; code < (size_t{1} << (2 * n)); ++code) {
        WeightedFrame wf;
        wf.probability = 1.0;
        for (size_t i = 0; i < n; ++i) {
          const unsigned idx = (code >> (2 * i)) & 3u;
          wf.frame.apply(pauli_from_index(idx), pairs[i].second);
          wf.probability *= idx == 0 ? w_id : w_err;
        }
        out.push_back(wf);
      }
      break;
    }
  }
  return out;
}

std::vector<WeightedFrame> enumerate_initial(const ErrorModel& model) {
  return enumerate_initial(model, std::span(kBellPairs.data(), kBellPairs.size()));
}

Pauli local_error_from_unit(double p, double u) {
  if (!(u < p)) return Pauli::I;
  const unsigned k = std::min(2u, static_cast<unsigned>(u * (3.0 / p)));
  return pauli_from_index(k + 1);
}

std::pair<Pauli, Pauli> cnot_error_from_unit(double p, double u) {
  if (!(u < p)) return {Pauli::I, Pauli::I};
  const unsigned k = std::min(14u, static_cast<unsigned>(u * (15.0 / p)));
  const unsigned code = k + 1;  // 1..15, row-major over (i,j) skipping (0,0)
  return {pauli_from_index(code >> 2), pauli_from_index(code & 3u)};
}

Pauli sample_local_error(double p, TrialRng& rng) {
  return local_error_from_unit(p, rng.next_unit());
}

std::pair<Pauli, Pauli> sample_cnot_error(double p, TrialRng& rng) {
  return cnot_error_from_unit(p, rng.next_unit());
}

}  // namespace qnc
