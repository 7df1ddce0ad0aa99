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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qnc/circuit.hpp"
#include "qnc/rng.hpp"
#include "support/dense_sim.hpp"

using namespace qnc;
using qnc::testing::DenseSim;
using qnc::testing::run_dense;

namespace {

constexpr BellIndex PP = BellIndex::PsiPlus;
constexpr BellIndex FP = BellIndex::PhiPlus;
constexpr BellIndex PM = BellIndex::PsiMinus;
constexpr BellIndex FM = BellIndex::PhiMinus;

std::array<BellIndex, 2> bells_for_injection(const Circuit& c, const Injection& inj) {
  const TrialOutcome out = propagate(c, std::span(&inj, 1));
  return out.bell;
}

}  // namespace

TEST_CASE("circuit structure") {
  const Circuit qnc = build_qnc();
  CHECK(qnc.measurement_count() == 10);
  CHECK(qnc.repetitions == 1);
  CHECK(qnc.initial_pairs.size() == 7);
  REQUIRE(qnc.final_pairs.size() == 2);
  CHECK(qnc.final_pairs[0] == std::pair{Qubit::A, Qubit::F});
  CHECK(qnc.final_pairs[1] == std::pair{Qubit::B, Qubit::E});
  CHECK(qnc.registers.size() == 10);

  const Circuit es1 = build_2es(1);
  CHECK(es1.measurement_count() == 4);
  CHECK(es1.repetitions == 1);
  const Circuit es2 = build_2es(2);
  CHECK(es2.measurement_count() == 4);
  CHECK(es2.repetitions == 2);
  CHECK(es2.final_pairs.size() == 1);
  CHECK(es2.final_pairs[0] == std::pair{Qubit::C, Qubit::N});
  CHECK_THROWS_AS(build_2es(3), std::invalid_argument);

  CHECK(qnc.find_cnot(Qubit::A, Qubit::C) > qnc.init_end());
  CHECK_THROWS_AS(qnc.find_cnot(Qubit::A, Qubit::N), std::invalid_argument);
}

TEST_CASE("validation rejects malformed circuits") {
  Circuit c = build_qnc();
  SUBCASE("duplicate qubit in slice") {
    c.slices[0].steps.push_back(Hadamard{Qubit::A});
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  }
  SUBCASE("use after measurement") {
    c.slices.push_back({8, {Hadamard{Qubit::C}}});
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  }
  SUBCASE("bad repetitions") {
    c.repetitions = 0;
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  }
}

TEST_CASE("error-free propagation yields the target pairs on every branch") {
  const Circuit qnc = build_qnc();
  for (uint32_t branch = 0; branch < 1024; branch += 37) {
    const TrialOutcome out = propagate(qnc, PauliFrame{}, branch);
    CHECK(out.bell[0] == PP);
    CHECK(out.bell[1] == PP);
    CHECK(out.pair_count == 2);
  }
  const Circuit es = build_2es(2);
  for (uint32_t branch = 0; branch < 256; ++branch) {
    const TrialOutcome out = propagate(es, PauliFrame{}, branch);
    CHECK(out.bell[0] == PP);
    CHECK(out.bell[1] == PP);
  }
}

TEST_CASE("initial-pair single errors map to the expected final syndromes") {
  const Circuit c = build_qnc();
  struct Row {
    Qubit target;
    Pauli error;
    BellIndex af, be;
  };
  // One row per (pair, error type); errors act on the second member.
  const Row rows[] = {
      {Qubit::B, Pauli::X, PP, FP}, {Qubit::B, Pauli::Y, PM, FP}, {Qubit::B, Pauli::Z, PM, PP},
      {Qubit::D, Pauli::X, FP, FP}, {Qubit::D, Pauli::Y, FM, FP}, {Qubit::D, Pauli::Z, PM, PP},
      {Qubit::F, Pauli::X, FP, PP}, {Qubit::F, Pauli::Y, FP, PM}, {Qubit::F, Pauli::Z, PP, PM},
      {Qubit::H, Pauli::X, FP, FP}, {Qubit::H, Pauli::Y, FP, FM}, {Qubit::H, Pauli::Z, PP, PM},
      {Qubit::J, Pauli::X, FP, FP}, {Qubit::J, Pauli::Y, FM, FM}, {Qubit::J, Pauli::Z, PM, PM},
      {Qubit::L, Pauli::X, PP, FP}, {Qubit::L, Pauli::Y, PM, FM}, {Qubit::L, Pauli::Z, PM, PM},
      {Qubit::N, Pauli::X, FP, PP}, {Qubit::N, Pauli::Y, FM, PM}, {Qubit::N, Pauli::Z, PM, PM},
  };
  for (const Row& row : rows) {
    CAPTURE(label_of(row.target));
    CAPTURE(pauli_label(row.error));
    PauliFrame f;
    f.apply(row.error, row.target);
    const auto bells = bells_for_injection(c, {c.init_end(), f});
    CHECK(bells[0] == row.af);
    CHECK(bells[1] == row.be);
  }
}

TEST_CASE("per-step CNOT errors map to the expected final syndromes") {
  const Circuit c = build_qnc();
  struct Row {
    Qubit control, target;  // which ideal CNOT the error follows
    Qubit on;
    Pauli error;
    BellIndex af, be;
  };
  const Row rows[] = {
      // step 1
      {Qubit::A, Qubit::C, Qubit::A, Pauli::X, FP, PP},
      {Qubit::A, Qubit::C, Qubit::A, Pauli::Y, FM, PP},
      {Qubit::A, Qubit::C, Qubit::A, Pauli::Z, PM, PP},
      {Qubit::A, Qubit::C, Qubit::C, Pauli::X, FP, FP},
      {Qubit::A, Qubit::C, Qubit::C, Pauli::Y, FP, FP},
      {Qubit::A, Qubit::C, Qubit::C, Pauli::Z, PP, PP},
      {Qubit::E, Qubit::G, Qubit::E, Pauli::X, PP, FP},
      {Qubit::E, Qubit::G, Qubit::E, Pauli::Y, PP, FM},
      {Qubit::E, Qubit::G, Qubit::E, Pauli::Z, PP, PM},
      {Qubit::E, Qubit::G, Qubit::G, Pauli::X, FP, FP},
      {Qubit::E, Qubit::G, Qubit::G, Pauli::Y, FP, FP},
      {Qubit::E, Qubit::G, Qubit::G, Pauli::Z, PP, PP},
      // step 2
      {Qubit::D, Qubit::I, Qubit::D, Pauli::X, PP, PP},
      {Qubit::D, Qubit::I, Qubit::D, Pauli::Y, PM, PP},
      {Qubit::D, Qubit::I, Qubit::D, Pauli::Z, PM, PP},
      {Qubit::D, Qubit::I, Qubit::I, Pauli::X, FP, FP},
      {Qubit::D, Qubit::I, Qubit::I, Pauli::Y, FP, FM},
      {Qubit::D, Qubit::I, Qubit::I, Pauli::Z, PP, PM},
      {Qubit::H, Qubit::I, Qubit::H, Pauli::X, PP, PP},
      {Qubit::H, Qubit::I, Qubit::H, Pauli::Y, PP, PM},
      {Qubit::H, Qubit::I, Qubit::H, Pauli::Z, PP, PM},
      {Qubit::H, Qubit::I, Qubit::I, Pauli::X, FP, FP},
      {Qubit::H, Qubit::I, Qubit::I, Pauli::Y, FP, FP},
      {Qubit::H, Qubit::I, Qubit::I, Pauli::Z, PP, PP},
      // step 3
      {Qubit::J, Qubit::K, Qubit::J, Pauli::X, FP, PP},
      {Qubit::J, Qubit::K, Qubit::J, Pauli::Y, FM, PM},
      {Qubit::J, Qubit::K, Qubit::J, Pauli::Z, PM, PM},
      {Qubit::J, Qubit::K, Qubit::K, Pauli::X, PP, FP},
      {Qubit::J, Qubit::K, Qubit::K, Pauli::Y, PP, FP},
      {Qubit::J, Qubit::K, Qubit::K, Pauli::Z, PP, PP},
      {Qubit::J, Qubit::M, Qubit::J, Pauli::X, PP, PP},
      {Qubit::J, Qubit::M, Qubit::J, Pauli::Y, PM, PM},
      {Qubit::J, Qubit::M, Qubit::J, Pauli::Z, PM, PM},
      {Qubit::J, Qubit::M, Qubit::M, Pauli::X, FP, PP},
      {Qubit::J, Qubit::M, Qubit::M, Pauli::Y, FP, PP},
      {Qubit::J, Qubit::M, Qubit::M, Pauli::Z, PP, PP},
      // step 4
      {Qubit::L, Qubit::B, Qubit::L, Pauli::X, PP, PP},
      {Qubit::L, Qubit::B, Qubit::L, Pauli::Y, PM, PM},
      {Qubit::L, Qubit::B, Qubit::L, Pauli::Z, PM, PM},
      {Qubit::L, Qubit::B, Qubit::B, Pauli::X, PP, FP},
      {Qubit::L, Qubit::B, Qubit::B, Pauli::Y, PP, FM},
      {Qubit::L, Qubit::B, Qubit::B, Pauli::Z, PP, PM},
      {Qubit::N, Qubit::F, Qubit::N, Pauli::X, PP, PP},
      {Qubit::N, Qubit::F, Qubit::N, Pauli::Y, PM, PM},
      {Qubit::N, Qubit::F, Qubit::N, Pauli::Z, PM, PM},
      {Qubit::N, Qubit::F, Qubit::F, Pauli::X, FP, PP},
      {Qubit::N, Qubit::F, Qubit::F, Pauli::Y, FM, PP},
      {Qubit::N, Qubit::F, Qubit::F, Pauli::Z, PM, PP},
  };
  for (const Row& row : rows) {
    CAPTURE(label_of(row.control));
    CAPTURE(label_of(row.target));
    CAPTURE(label_of(row.on));
    CAPTURE(pauli_label(row.error));
    PauliFrame f;
    f.apply(row.error, row.on);
    const auto bells = bells_for_injection(c, {c.find_cnot(row.control, row.target), f});
    CHECK(bells[0] == row.af);
    CHECK(bells[1] == row.be);
  }
}

TEST_CASE("final syndromes are independent of measurement branches") {
  const Circuit qnc = build_qnc();
  const Circuit es = build_2es(1);
  TrialRng rng(777, 0);
  for (int i = 0; i < 40; ++i) {
    PauliFrame f;
    const uint64_t bits = rng.next_u64();
    f.x = static_cast<uint16_t>(bits & 0x3FFF);
    f.z = static_cast<uint16_t>((bits >> 14) & 0x3FFF);
    CHECK(validate_branch_independence(qnc, f));
    PauliFrame g;
    g.x = static_cast<uint16_t>((bits >> 28) & 0x3FFF);
    g.z = static_cast<uint16_t>((bits >> 42) & 0x3FFF);
    CHECK(validate_branch_independence(es, g));
  }
}

TEST_CASE("frame predictions match the dense oracle on the full protocol") {
  const Circuit c = build_qnc();
  TrialRng rng(4242, 0);
  const int flat_total = static_cast<int>(c.flat_step_count());
  for (int i = 0; i < 60; ++i) {
    // random single-qubit Pauli at a random point at or after creation
    const int pos = c.init_end() +
                    static_cast<int>(rng.next_u64() % (flat_total - c.init_end()));
    PauliFrame f;
    f.apply(pauli_from_bits(rng.next_u64() & 1, rng.next_u64() & 1),
            static_cast<Qubit>(rng.next_u64() % kQubitCount));
    const Injection inj{pos, f};

    const TrialOutcome predicted = propagate(c, std::span(&inj, 1), 0);
    // propagate's branch bits are ideal outcomes; the dense run forces
    // recorded outcomes, which the frame reports in outcome_bits.
    const auto dense = run_dense(c, std::span(&inj, 1), predicted.outcome_bits);

    for (int pair = 0; pair < 2; ++pair) {
      const auto [qa, qb] = c.final_pairs[pair];
      PauliFrame xx, zz;
      xx.apply(Pauli::X, qa);
      xx.apply(Pauli::X, qb);
      zz.apply(Pauli::Z, qa);
      zz.apply(Pauli::Z, qb);
      const unsigned xp = dense.state.expectation(zz).real() < 0 ? 1 : 0;
      const unsigned zp = dense.state.expectation(xx).real() < 0 ? 1 : 0;
      CHECK(static_cast<unsigned>(predicted.bell[pair]) == (xp | (zp << 1)));
    }
  }
}

TEST_CASE("frame tracking matches dense simulation on random Clifford circuits") {
  TrialRng rng(99, 0);
  for (int trial = 0; trial < 200; ++trial) {
    const int nq = 2 + static_cast<int>(rng.next_u64() % 5);  // 2..6 qubits
    const int ngates = 4 + static_cast<int>(rng.next_u64() % 17);
    struct G {
      bool h;
      int a, b;
    };
    std::vector<G> gates;
    for (int i = 0; i < ngates; ++i) {
      if (rng.next_u64() & 1) {
        gates.push_back({true, static_cast<int>(rng.next_u64() % nq), 0});
      } else {
        const int a = static_cast<int>(rng.next_u64() % nq);
        int b = static_cast<int>(rng.next_u64() % (nq - 1));
        if (b >= a) ++b;
        gates.push_back({false, a, b});
      }
    }
    const int inject_at = static_cast<int>(rng.next_u64() % (ngates + 1));
    const Pauli err = pauli_from_index(1 + static_cast<unsigned>(rng.next_u64() % 3));
    const int err_q = static_cast<int>(rng.next_u64() % nq);

    DenseSim noisy(nq);
    PauliFrame frame;
    for (int i = 0; i < ngates; ++i) {
      if (i == inject_at) {
        noisy.apply_pauli(err, err_q);
        frame.apply(err, static_cast<Qubit>(err_q));
      }
      if (gates[i].h) {
        noisy.apply_h(gates[i].a);
        if (i >= inject_at) conjugate_h(frame, static_cast<Qubit>(gates[i].a));
      } else {
        noisy.apply_cnot(gates[i].a, gates[i].b);
        if (i >= inject_at) {
          conjugate_cnot(frame, static_cast<Qubit>(gates[i].a),
                         static_cast<Qubit>(gates[i].b));
        }
      }
    }
    if (inject_at == ngates) {
      noisy.apply_pauli(err, err_q);
      frame.apply(err, static_cast<Qubit>(err_q));
    }

    DenseSim ideal(nq);
    for (const G& g : gates) {
      if (g.h) {
        ideal.apply_h(g.a);
      } else {
        ideal.apply_cnot(g.a, g.b);
      }
    }
    ideal.apply_frame(frame);
    CAPTURE(trial);
    CHECK(noisy.overlap_magnitude(ideal) == doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("execute with a null model reports perfect pairs") {
  const Circuit c = build_qnc();
  TrialRng rng(5, 17);
  const TrialOutcome out = execute(c, ErrorModel::null_model(), rng);
  CHECK(out.bell[0] == PP);
  CHECK(out.bell[1] == PP);
  CHECK_FALSE(out.m);
  CHECK_FALSE(out.n);
}
