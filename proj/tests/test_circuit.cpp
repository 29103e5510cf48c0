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

#include "dql/circuit.hpp"

#include <gtest/gtest.h>

#include "dql/cost_model.hpp"
#include "dql/simulator.hpp"

namespace dql {
namespace {

constexpr double kTolSim = 1e-9;

TEST(RegisterLayoutTest, QubitNumbering) {
  RegisterLayout layout{2, 3, {}};
  EXPECT_EQ(layout.register_qubit_count(), 6);
  EXPECT_EQ(layout.register_qubits(1), (std::vector<int>{2, 3}));
  const int anc = layout.add_ancilla(AncillaPurpose::LcuGather);
  EXPECT_EQ(anc, 6);
  EXPECT_EQ(layout.total_qubits(), 7);
}

TEST(ValidateTest, RejectsOutOfRangeAndDuplicates) {
  Circuit c{RegisterLayout{1, 2, {}}};
  c.append(GateOp::cx(0, 1));
  EXPECT_NO_THROW(validate(c));
  c.append(GateOp::cx(0, 2));
  EXPECT_THROW(validate(c), std::invalid_argument);
  c.ops.pop_back();
  c.append(GateOp::cx(1, 1));
  EXPECT_THROW(validate(c), std::invalid_argument);
}

TEST(ValidateTest, RejectsNonUnitaryGenericAndBadDiagonal) {
  Circuit c{RegisterLayout{1, 1, {}}};
  ComplexMatrix bad(2, 2);
  bad(0, 0) = 2.0;
  bad(1, 1) = 1.0;
  c.append(GateOp::generic_unitary({0}, bad));
  EXPECT_THROW(validate(c), std::invalid_argument);
  c.ops.clear();
  c.append(GateOp::diagonal_unitary({0}, {Complex(0.5, 0.0),
                                          Complex(1.0, 0.0)}));
  EXPECT_THROW(validate(c), std::invalid_argument);
}

TEST(DepthTest, GreedyLayeringPacksDisjointOps) {
  Circuit c{RegisterLayout{1, 4, {}}};
  c.append(GateOp::h(0));
  c.append(GateOp::h(1));
  c.append(GateOp::cx(0, 1));
  c.append(GateOp::h(2));
  c.append(GateOp::cx(2, 3));
  // Layers are 1-based.  H(2) joins the Hadamard wall and the two CX gates
  // act on disjoint qubits, so they pack into one layer: depth 2, not 5.
  EXPECT_EQ(depth(c), 2);
  const std::vector<int> layers = layer_assignment(c);
  EXPECT_EQ(layers[0], 1);
  EXPECT_EQ(layers[1], 1);
  EXPECT_EQ(layers[2], 2);
  EXPECT_EQ(layers[3], 1);
  EXPECT_EQ(layers[4], 2);
}

TEST(ComposeTest, RequiresMatchingLayoutsAndConcatenates) {
  Circuit a{RegisterLayout{1, 2, {}}};
  a.append(GateOp::h(0));
  Circuit b{RegisterLayout{1, 2, {}}};
  b.append(GateOp::cx(0, 1));
  const Circuit ab = compose(a, b);
  EXPECT_EQ(ab.ops.size(), 2u);
  Circuit other{RegisterLayout{1, 3, {}}};
  EXPECT_THROW(compose(a, other), std::invalid_argument);
}

TEST(TensorTest, ShiftsSecondCircuit) {
  Circuit a{RegisterLayout{1, 1, {}}};
  a.append(GateOp::h(0));
  Circuit b{RegisterLayout{1, 1, {}}};
  b.append(GateOp::x(0));
  const Circuit ab = tensor(a, b);
  EXPECT_EQ(ab.layout.register_count, 2);
  EXPECT_EQ(ab.ops[1].targets[0], 1);
  // Simulation agrees with the kron of the parts.
  const ComplexMatrix u = unitary(ab);
  const ComplexMatrix want = kron(unitary(a), unitary(b));
  EXPECT_LE(u.max_abs_diff(want), kTolSim);
}

TEST(RegisterSwapTest, SwapsRegisterContents) {
  const RegisterLayout layout{2, 2, {}};
  const Circuit swap01 = register_swap(layout, 0, 1);
  StateVector s = StateVector::basis_state(4, 0b0110);  // |01>|10>
  run_inplace(swap01, s);
  EXPECT_NEAR(std::abs(s.amps[0b1001]), 1.0, kTolSim);  // |10>|01>
}

TEST(ExpandControlledHadamardTest, PreservesUnitary) {
  Circuit c{RegisterLayout{1, 2, {}}};
  c.append(GateOp::ch(0, 1));
  const Circuit expanded = expand_controlled_hadamards(c);
  for (const GateOp& op : expanded.ops) {
    EXPECT_NE(op.kind, GateKind::ControlledHadamard);
  }
  EXPECT_LE(unitary(expanded).max_abs_diff(unitary(c)), kTolSim);
}

TEST(ExpandMczTest, TwoControlFormMatchesNative) {
  Circuit c{RegisterLayout{1, 3, {}}};
  c.append(GateOp::mcz0(2, {{0, 1}, {1, 0}}));
  const Circuit expanded = expand_mcz_to_ccx(c);
  bool has_ccx = false;
  for (const GateOp& op : expanded.ops) {
    EXPECT_NE(op.kind, GateKind::MultiControlledZ0);
    has_ccx |= op.kind == GateKind::CCX;
  }
  EXPECT_TRUE(has_ccx);
  EXPECT_LE(unitary(expanded).max_abs_diff(unitary(c)), kTolSim);
}

// The native all-zeros flip equals the X-conjugated spelling of a
// zero-polarity-controlled Z.
TEST(MczSemanticsTest, AllZerosPhaseFlip) {
  Circuit c{RegisterLayout{1, 3, {}}};
  c.append(GateOp::mcz0(2, {{0, 0}, {1, 0}}));
  const ComplexMatrix u = unitary(c);
  for (std::size_t i = 0; i < 8; ++i) {
    EXPECT_NEAR(u(i, i).real(), i == 0 ? -1.0 : 1.0, kTolSim);
  }
}

TEST(CostModelTest, SingleAndTwoQubitGates) {
  const CostModel model;
  Circuit c{RegisterLayout{1, 2, {}}};
  c.append(GateOp::h(0));
  c.append(GateOp::cx(0, 1));
  const CostEstimate est = model.estimate(c);
  EXPECT_EQ(est.gates, 2);
  EXPECT_EQ(est.depth, 2);
  EXPECT_EQ(est.helper_ancillas, 0);
}

TEST(CostModelTest, SwapAndControlledHadamardWeights) {
  const CostModel model;
  Circuit c{RegisterLayout{1, 2, {}}};
  c.append(GateOp::swap(0, 1));
  EXPECT_EQ(model.estimate(c).gates, 3);  // three CX
  Circuit d{RegisterLayout{1, 2, {}}};
  d.append(GateOp::ch(0, 1));
  EXPECT_EQ(model.estimate(d).gates, 3);  // Ry, CZ, Ry
}

TEST(CostModelTest, MultiControlScalingAndHelpers) {
  const CostModel model;
  EXPECT_EQ(model.mcz_cost(1).gates, 3);
  EXPECT_EQ(model.mcz_cost(2).helper_ancillas, 0);
  // k >= 3 controls: quadratic CX count with one helper qubit.
  const CostEstimate three = model.mcz_cost(3);
  EXPECT_EQ(three.gates, 16 * 4);
  EXPECT_EQ(three.helper_ancillas, 1);
  const CostEstimate five = model.mcz_cost(5);
  EXPECT_EQ(five.gates, 16 * 16);
  EXPECT_EQ(five.helper_ancillas, 1);
}

TEST(CostModelTest, DepthSumsLayerMaxima) {
  const CostModel model;
  Circuit c{RegisterLayout{1, 4, {}}};
  c.append(GateOp::swap(0, 1));  // depth 3 in elementary gates
  c.append(GateOp::h(2));        // depth 1, same IR layer
  c.append(GateOp::cx(0, 2));    // second IR layer
  const CostEstimate est = model.estimate(c);
  EXPECT_EQ(est.depth, 3 + 1);
}

}  // namespace
}  // namespace dql
