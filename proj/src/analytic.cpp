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

#include "qnc/analytic.hpp"

#include <cmath>
#include <stdexcept>

namespace qnc {

namespace {

void check_fidelity(double F) {
  if (!(F >= 0.0 && F <= 1.0)) throw std::invalid_argument("F must be in [0,1]");
}

}  // namespace

std::array<double, 4> JointDistribution::collapsed_mn() const {
  std::array<double, 4> p{};
  for (int code = 0; code < 16; ++code) {
    const int m = (code >> 2) != 0;
    const int n = (code & 3) != 0;
    p[2 * m + n] += probs[code];
  }
  return p;
}

std::array<double, 4> qnc_z_joint(double F) {
  check_fidelity(F);
  const double G = 1.0 - F;
  const double P00 = std::pow(F, 7) + 5 * std::pow(F, 5) * G * G +
                     12 * std::pow(F, 4) * std::pow(G, 3) +
                     7 * std::pow(F, 3) * std::pow(G, 4) +
                     4 * F * F * std::pow(G, 5) + 3 * F * std::pow(G, 6);
  const double P01 = 2 * std::pow(F, 6) * G + 6 * std::pow(F, 5) * G * G +
                     8 * std::pow(F, 4) * std::pow(G, 3) +
                     8 * std::pow(F, 3) * std::pow(G, 4) +
                     6 * F * F * std::pow(G, 5) + 2 * F * std::pow(G, 6);
  const double P11 = 3 * std::pow(F, 6) * G + 4 * std::pow(F, 5) * G * G +
                     7 * std::pow(F, 4) * std::pow(G, 3) +
                     12 * std::pow(F, 3) * std::pow(G, 4) +
                     5 * F * F * std::pow(G, 5) + std::pow(G, 7);
  return {P00, P01, P01, P11};
}

std::array<double, 2> es2_single(double F) {
  check_fidelity(F);
  const double G = 1.0 - F;
  return {F * F * F + 3 * F * G * G, 3 * F * F * G + G * G * G};
}

StepFidelities step_fidelities(double F) {
  check_fidelity(F);
  const double G = 1.0 - F;
  return {1.0 - 2.0 * F * G, F * F * F + G * G * G, F * F * F,
          F * F * F - G * G * G};
}

JointDistribution exact_distribution(Protocol protocol, const ErrorModel& model) {
  if (model.p_gate != 0.0 || model.p_memory != 0.0) {
    throw std::invalid_argument("exact_distribution requires p_gate = p_memory = 0");
  }
  const Circuit circuit = protocol == Protocol::Qnc ? build_qnc() : build_2es(1);
  const auto frames = enumerate_initial(
      model, std::span(circuit.initial_pairs.data(), circuit.initial_pairs.size()));
  std::array<double, 16> single{};
  for (const auto& wf : frames) {
    const TrialOutcome out = propagate(circuit, wf.frame);
    single[out.outcome_code()] += wf.probability;
  }
  JointDistribution dist;
  if (protocol == Protocol::Qnc) {
    dist.probs = single;
  } else {
    // Two independent bottleneck cycles: codes bell<<2 -> product joint.
    for (int a = 0; a < 4; ++a) {
      for (int b = 0; b < 4; ++b) {
        dist.probs[a * 4 + b] = single[a << 2] * single[b << 2];
      }
    }
  }
  return dist;
}

CorrelationTable correlation_at(double F) {
  check_fidelity(F);
  const auto p = qnc_z_joint(F);
  CorrelationTable t{};
  t.a = p[0];
  t.b = p[1];
  t.c = p[2];
  t.d = p[3];
  t.e = t.a + t.b;
  t.f = t.c + t.d;
  t.g = t.a + t.c;
  t.h = t.b + t.d;
  auto degenerate = [&](double v, const char* name) {
    if (v <= 0.0) {
      throw std::domain_error(std::string("correlation undefined: marginal ") + name +
                              " is zero");
    }
  };
  degenerate(t.e, "e");
  degenerate(t.f, "f");
  degenerate(t.g, "g");
  degenerate(t.h, "h");
  t.phi = (t.a * t.d - t.b * t.c) / std::sqrt(t.e * t.f * t.g * t.h);
  return t;
}

std::optional<double> find_threshold(Protocol protocol, InitialKind kind) {
  if (kind == InitialKind::None) {
    throw std::invalid_argument("find_threshold requires a non-null error model");
  }
  auto joint = [&](double F) {
    ErrorModel model;
    model.initial_kind = kind;
    // Pair-fidelity axis; for the correlated channel the pair keeps
    // fidelity 1 - 4p/5, so invert that relation.
    model.p_init = kind == InitialKind::GeneralPauli ? 5.0 * (1.0 - F) / 4.0 : 1.0 - F;
    return exact_distribution(protocol, model).joint_fidelity();
  };
  double lo = 0.5, hi = 1.0;
  if (!(joint(lo) < 0.5 && joint(hi) >= 0.5)) return std::nullopt;
  while (hi - lo > 1e-6) {
    const double mid = 0.5 * (lo + hi);
    (joint(mid) < 0.5 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace qnc
