// Copyright 2026 The dql Authors
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

#include "dql/planner.hpp"

#include <gtest/gtest.h>

#include <map>

#include "dql/random.hpp"
#include "dql/verify.hpp"

namespace dql {
namespace {

constexpr double kFidelityTolExact = 1e-9;
constexpr double kFidelityTolLcu = 1e-8;

Problem random_problem(int n, int m, std::uint64_t seed, bool real_v) {
  Rng rng(seed);
  Problem p;
  p.n = n;
  const std::size_t dim = std::size_t{1} << n;
  for (int i = 0; i < m; ++i) p.ops.push_back(haar_unitary(dim, rng));
  p.v = real_v ? random_real_state(dim, rng) : random_state(dim, rng);
  return p;
}

TEST(CeilLog2Test, KnownValues) {
  EXPECT_EQ(ceil_log2(1), 0);
  EXPECT_EQ(ceil_log2(2), 1);
  EXPECT_EQ(ceil_log2(3), 2);
  EXPECT_EQ(ceil_log2(8), 3);
  EXPECT_EQ(ceil_log2(14), 4);
  EXPECT_EQ(ceil_log2(16), 4);
}

TEST(TargetStateTest, AppliesLastOperatorFirst) {
  Problem p;
  p.n = 1;
  ComplexMatrix h(2, 2), x(2, 2);
  const double r = 1.0 / std::sqrt(2.0);
  h(0, 0) = r;
  h(0, 1) = r;
  h(1, 0) = r;
  h(1, 1) = -r;
  x(0, 1) = 1.0;
  x(1, 0) = 1.0;
  p.ops = {h, x};  // product is H * X; X hits v first
  p.v = ComplexVector{Complex{1.0, 0.0}, Complex{0.0, 0.0}};
  const ComplexVector t = target_state(p);
  EXPECT_NEAR(t[0].real(), r, 1e-12);
  EXPECT_NEAR(t[1].real(), -r, 1e-12);
}

TEST(ValidationTest, RejectsMalformedProblems) {
  const std::size_t dim = 2;
  Problem good = random_problem(1, 2, 5, true);
  EXPECT_NO_THROW(validate_problem(good));

  Problem bad = good;
  bad.ops.clear();
  EXPECT_THROW(validate_problem(bad), std::invalid_argument);

  bad = good;
  bad.ops[0] = ComplexMatrix(dim, dim);  // all zeros: not unitary
  EXPECT_THROW(validate_problem(bad), std::invalid_argument);

  bad = good;
  bad.ops[0] = ComplexMatrix::identity(4);  // wrong dimension
  EXPECT_THROW(validate_problem(bad), std::invalid_argument);

  bad = good;
  bad.v = ComplexVector(4);
  EXPECT_THROW(validate_problem(bad), std::invalid_argument);

  bad = good;
  bad.v = ComplexVector(dim);  // zero vector
  EXPECT_THROW(validate_problem(bad), std::invalid_argument);

  bad = good;
  bad.n = 17;
  EXPECT_THROW(validate_problem(bad), std::invalid_argument);
}

TEST(ValidationTest, LcuPlansRequireRealTargetVector) {
  Problem p = random_problem(1, 2, 6, false);
  p.v[0] = Complex{0.3, 0.4};
  PlanOptions options;
  options.mode = SynthesisMode::PauliLcu;
  EXPECT_THROW(make_plan(p, options), std::invalid_argument);
  options.mode = SynthesisMode::ExactUnitary;
  EXPECT_NO_THROW(make_plan(p, options));
}

TEST(ScheduleTest, PowerOfTwoSequenceIsOnePerfectTree) {
  const Problem p = random_problem(1, 8, 7, true);
  const Plan plan = make_plan(p, PlanOptions{});
  ASSERT_EQ(plan.blocks.size(), 3u);
  for (const GatherBlock& b : plan.blocks) EXPECT_EQ(b.role, "subtree-8");
  EXPECT_EQ(plan.blocks[0].layer, 1);
  EXPECT_EQ(plan.blocks[1].layer, 1);
  EXPECT_EQ(plan.blocks[2].layer, 2);
  EXPECT_EQ(plan.ledger.gathering_layers, 2);
  EXPECT_EQ(plan.ledger.combining_blocks, 0);
}

TEST(ScheduleTest, FourteenOperatorsSplitIntoTreesPlusChain) {
  const Problem p = random_problem(1, 14, 8, true);
  const Plan plan = make_plan(p, PlanOptions{});
  ASSERT_EQ(plan.blocks.size(), 6u);  // 14/2 - 1

  std::map<std::string, int> census;
  for (const GatherBlock& b : plan.blocks) ++census[b.role];
  EXPECT_EQ(census["subtree-8"], 3);
  EXPECT_EQ(census["subtree-4"], 1);
  EXPECT_EQ(census["combining"], 2);

  // The eight-operator tree: two layer-1 merges and its root at layer 2.
  EXPECT_EQ(plan.blocks[0].layer, 1);
  EXPECT_EQ(plan.blocks[1].layer, 1);
  EXPECT_EQ(plan.blocks[2].layer, 2);
  // The four-operator tree is a single layer-1 merge of U_9..U_12.
  EXPECT_EQ(plan.blocks[3].layer, 1);
  EXPECT_EQ(plan.blocks[3].left_lo, 9);
  EXPECT_EQ(plan.blocks[3].right_hi, 12);
  // Chain: the small trees combine first (layer 2), the big tree last.
  EXPECT_EQ(plan.blocks[4].role, "combining");
  EXPECT_EQ(plan.blocks[4].layer, 2);
  EXPECT_EQ(plan.blocks[4].left_lo, 9);
  EXPECT_EQ(plan.blocks[4].right_hi, 14);
  EXPECT_EQ(plan.blocks[4].seam, 12);
  EXPECT_EQ(plan.blocks[5].role, "combining");
  EXPECT_EQ(plan.blocks[5].layer, 3);
  EXPECT_EQ(plan.blocks[5].left_lo, 1);
  EXPECT_EQ(plan.blocks[5].right_hi, 14);
  EXPECT_EQ(plan.blocks[5].seam, 8);

  EXPECT_EQ(plan.ledger.gathering_layers, 3);  // ceil(log2 14) - 1
}

TEST(ScheduleTest, StructuralAccountingForEvenLengths) {
  for (int m = 2; m <= 16; m += 2) {
    const Problem p = random_problem(1, m, 100 + m, true);
    const Plan plan = make_plan(p, PlanOptions{});
    const PlanLedger& led = plan.ledger;
    const int lanes = m / 2;
    EXPECT_EQ(led.gu_count, lanes - 1) << "m=" << m;
    EXPECT_EQ(led.vu_count, 1) << "m=" << m;
    EXPECT_EQ(led.register_qubit_count, p.n * m) << "m=" << m;
    EXPECT_EQ(led.gathering_layers, lanes > 1 ? ceil_log2(m) - 1 : 0)
        << "m=" << m;
    EXPECT_EQ(led.combining_blocks, popcount64(lanes) - 1) << "m=" << m;
    EXPECT_EQ(led.block_depth,
              led.d_u + (ceil_log2(m) - 1) * led.d_g + led.d_v)
        << "m=" << m;
    EXPECT_EQ(led.sequential_block_depth, m) << "m=" << m;
    // Operator coverage: every block contracts contiguous 1-based ranges.
    for (const GatherBlock& b : plan.blocks) {
      EXPECT_EQ(b.left_hi + 1, b.right_lo);
      EXPECT_EQ(b.seam, b.left_hi);
    }
  }
}

TEST(ScheduleTest, OddLengthsArePaddedWithIdentity) {
  const Problem p = random_problem(2, 3, 9, true);
  const Plan plan = make_plan(p, PlanOptions{});
  EXPECT_EQ(plan.m_original, 3);
  EXPECT_EQ(plan.ledger.m_original, 3);
  EXPECT_EQ(plan.ledger.m_padded, 4);
  ASSERT_EQ(plan.problem.ops.size(), 4u);
  EXPECT_EQ(plan.problem.ops[3].max_abs_diff(ComplexMatrix::identity(4)), 0.0);
  // Padding is invisible to the reference product.
  EXPECT_LE(target_state(plan.problem).max_abs_diff(target_state(p)), 1e-12);
}

TEST(PlanTest, PartitionsQubitsBetweenOutputAndPostselection) {
  for (SynthesisMode mode :
       {SynthesisMode::ExactUnitary, SynthesisMode::PauliLcu}) {
    PlanOptions options;
    options.mode = mode;
    const Plan plan = make_plan(random_problem(1, 6, 10, true), options);
    std::vector<int> seen(plan.layout.total_qubits(), 0);
    for (int q : plan.postselect_qubits()) ++seen[q];
    for (int q : plan.output_qubits()) ++seen[q];
    for (int q = 0; q < plan.layout.total_qubits(); ++q) {
      EXPECT_EQ(seen[q], 1) << "qubit " << q;
    }
    EXPECT_EQ(plan.output_register, 0);  // swaps funnel the result leftward
    const int expected_ancillas =
        mode == SynthesisMode::PauliLcu
            ? static_cast<int>(plan.blocks.size()) + 1
            : 0;
    EXPECT_EQ(plan.ledger.ancilla_count, expected_ancillas);
  }
}

TEST(PlanTest, DeterministicForEqualInputs) {
  const Problem p = random_problem(2, 4, 11, true);
  PlanOptions options;
  options.mode = SynthesisMode::PauliLcu;
  const Plan a = make_plan(p, options);
  const Plan b = make_plan(p, options);
  ASSERT_EQ(a.blocks.size(), b.blocks.size());
  for (std::size_t i = 0; i < a.blocks.size(); ++i) {
    EXPECT_EQ(a.blocks[i].layer, b.blocks[i].layer);
    EXPECT_EQ(a.blocks[i].role, b.blocks[i].role);
    EXPECT_EQ(a.blocks[i].reg_one, b.blocks[i].reg_one);
    EXPECT_EQ(a.blocks[i].spent_a, b.blocks[i].spent_a);
  }
  const Circuit ca = a.full_circuit();
  const Circuit cb = b.full_circuit();
  ASSERT_EQ(ca.ops.size(), cb.ops.size());
  const StateVector sa = run(ca);
  const StateVector sb = run(cb);
  EXPECT_EQ(sa.to_vector().max_abs_diff(sb.to_vector()), 0.0);
  EXPECT_EQ(a.ledger.cost_gates, b.ledger.cost_gates);
}

struct SweepCase {
  int n;
  int m;
};

TEST(EndToEndTest, KeptBranchReproducesProductState) {
  const std::vector<SweepCase> cases = {
      {1, 1}, {1, 2}, {1, 3}, {1, 4}, {1, 5}, {1, 6}, {1, 8},
      {2, 1}, {2, 2}, {2, 3}, {2, 4}, {3, 2},
  };
  for (const SweepCase& c : cases) {
    for (SynthesisMode mode :
         {SynthesisMode::ExactUnitary, SynthesisMode::PauliLcu}) {
      const bool lcu = mode == SynthesisMode::PauliLcu;
      const Problem p =
          random_problem(c.n, c.m, 1000 + 17 * c.n + c.m, lcu);
      PlanOptions options;
      options.mode = mode;
      const Plan plan = make_plan(p, options);
      const double tol = lcu ? kFidelityTolLcu : kFidelityTolExact;
      const VerifyReport report = verify_circuit(plan, tol);
      EXPECT_TRUE(report.passed)
          << "n=" << c.n << " m=" << c.m << " mode="
          << synthesis_mode_name(mode) << " fidelity=" << report.fidelity;
      // The measured kept-branch probability matches the ledger closed form.
      EXPECT_NEAR(report.postselect_probability /
                      plan.ledger.expected_success_probability,
                  1.0, 1e-9)
          << "n=" << c.n << " m=" << c.m << " mode="
          << synthesis_mode_name(mode);
    }
  }
}

TEST(EndToEndTest, FourteenOperatorPlanVerifiesUnderTheCap) {
  for (SynthesisMode mode :
       {SynthesisMode::ExactUnitary, SynthesisMode::PauliLcu}) {
    const bool lcu = mode == SynthesisMode::PauliLcu;
    const Problem p = random_problem(1, 14, 77, lcu);
    PlanOptions options;
    options.mode = mode;
    const Plan plan = make_plan(p, options);
    EXPECT_LE(plan.layout.total_qubits(), kDefaultSimulationCap);
    const double tol = lcu ? kFidelityTolLcu : kFidelityTolExact;
    const VerifyReport report = verify_circuit(plan, tol);
    EXPECT_TRUE(report.passed) << "fidelity=" << report.fidelity;
  }
}

TEST(EndToEndTest, SwapFreePlansKeepTheSameOutput) {
  for (SynthesisMode mode :
       {SynthesisMode::ExactUnitary, SynthesisMode::PauliLcu}) {
    const bool lcu = mode == SynthesisMode::PauliLcu;
    const Problem p = random_problem(1, 6, 12, lcu);
    PlanOptions options;
    options.mode = mode;
    options.include_register_swaps = false;
    const Plan plan = make_plan(p, options);
    for (const GatherBlock& b : plan.blocks) {
      EXPECT_EQ(b.swap_a, -1);
      EXPECT_EQ(b.swap_b, -1);
    }
    const double tol = lcu ? kFidelityTolLcu : kFidelityTolExact;
    const VerifyReport report = verify_circuit(plan, tol);
    EXPECT_TRUE(report.passed)
        << "mode=" << synthesis_mode_name(mode)
        << " fidelity=" << report.fidelity;
    // Probability bookkeeping is swap-independent.
    EXPECT_NEAR(report.postselect_probability /
                    plan.ledger.expected_success_probability,
                1.0, 1e-9);
  }
}

TEST(EndToEndTest, AlgebraicReplayAgreesWithCircuitSimulation) {
  for (SynthesisMode mode :
       {SynthesisMode::ExactUnitary, SynthesisMode::PauliLcu}) {
    const bool lcu = mode == SynthesisMode::PauliLcu;
    const Problem p = random_problem(2, 4, 13, lcu);
    PlanOptions options;
    options.mode = mode;
    const Plan plan = make_plan(p, options);
    const VerifyReport algebraic = verify_algebraic(plan, kFidelityTolExact);
    EXPECT_TRUE(algebraic.passed) << "fidelity=" << algebraic.fidelity;
    EXPECT_EQ(algebraic.method, "algebraic");
    // verify_auto picks the circuit back end while under the cap and the
    // algebraic replay above it.
    EXPECT_EQ(verify_auto(plan, kFidelityTolLcu).method, "circuit");
    EXPECT_EQ(verify_auto(plan, kFidelityTolLcu, plan.ledger.total_qubits - 1)
                  .method,
              "algebraic");
  }
}

TEST(EndToEndTest, AlgebraicReplayScalesPastTheSimulationCap) {
  // 32 registers of 2 qubits = 64 register qubits: far beyond state-vector
  // reach, cheap for the dense replay.
  const Problem p = random_problem(2, 32, 14, true);
  const Plan plan = make_plan(p, PlanOptions{});
  EXPECT_GT(plan.layout.total_qubits(), kDefaultSimulationCap);
  const VerifyReport report = verify_algebraic(plan, kFidelityTolExact);
  EXPECT_TRUE(report.passed) << "fidelity=" << report.fidelity;
}

TEST(LedgerTest, BranchScaleClosedForms) {
  // Exact synthesis: each gathering keeps 1/sqrt(N) on top of the lane
  // normalization N^{-L/2}; LCU keeps 1/N per block and 1/lambda_max at the
  // multiplier.
  const Problem p = random_problem(1, 4, 15, true);
  const Plan exact = make_plan(p, PlanOptions{});
  EXPECT_NEAR(exact.ledger.expected_branch_scale, std::pow(2.0, -1.5), 1e-12);
  PlanOptions options;
  options.mode = SynthesisMode::PauliLcu;
  const Plan lcu = make_plan(p, options);
  const double lmax = multiplier_lambda_max(lcu.problem.v);
  EXPECT_NEAR(lcu.ledger.expected_branch_scale, 0.25 / lmax, 1e-12);
  EXPECT_NEAR(lcu.ledger.expected_success_probability,
              lcu.ledger.expected_branch_scale *
                  lcu.ledger.expected_branch_scale,
              1e-15);
}

TEST(LedgerTest, CostsGrowWithTheCircuit) {
  const Problem small = random_problem(1, 2, 16, true);
  const Problem large = random_problem(1, 8, 16, true);
  PlanOptions options;
  options.mode = SynthesisMode::PauliLcu;
  const Plan a = make_plan(small, options);
  const Plan b = make_plan(large, options);
  EXPECT_GT(b.ledger.cost_gates, a.ledger.cost_gates);
  EXPECT_GT(a.ledger.cost_gates, 0);
  EXPECT_GT(a.ledger.cost_depth, 0);
  EXPECT_EQ(a.ledger.total_qubits,
            a.ledger.register_qubit_count + a.ledger.ancilla_count);
}

}  // namespace
}  // namespace dql
