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
//
// Plan verification.  Two interchangeable back ends:
//
//   * circuit:   simulate the full pipeline as a state vector, post-select
//                the kept branch, and compare the output register against
//                the reference product state.  Exact but limited by the
//                simulation qubit cap.
//   * algebraic: replay the same schedule over the dense vectorization
//                calculus (pair vectors, gathering contractions, final
//                multiplication).  No state vector is built, so wide plans
//                with many registers stay cheap; the post-selection
//                probability is reported from the ledger prediction.

#ifndef DQL_VERIFY_HPP_
#define DQL_VERIFY_HPP_

#include <chrono>
#include <map>
#include <string>
#include <utility>

#include "dql/linalg.hpp"
#include "dql/planner.hpp"
#include "dql/simulator.hpp"

namespace dql {

struct VerifyReport {
  bool passed = false;
  std::string method;  // "circuit" or "algebraic"
  double fidelity = 0.0;
  double fidelity_tolerance = 0.0;
  double postselect_probability = 0.0;  // measured when method == "circuit"
  double predicted_probability = 0.0;
  int total_qubits = 0;
  double wall_seconds = 0.0;
};

/// Pair vectorization vec((A B)^T) computed as (A (x) B^T) vec(I), the same
/// map the vectorization stage applies to a prepared register pair.
inline ComplexVector vectorize_pair(const ComplexMatrix& a,
                                    const ComplexMatrix& b) {
  const std::size_t dim = a.rows();
  ComplexVector out(dim * dim);
  for (std::size_t c = 0; c < dim; ++c) {
    for (std::size_t r = 0; r < dim; ++r) {
      Complex acc{0.0, 0.0};
      for (std::size_t k = 0; k < dim; ++k) acc += a(c, k) * b(k, r);
      out[c * dim + r] = acc;
    }
  }
  return out;
}

/// Simulates the full pipeline and checks the kept branch against the
/// reference product state.
inline VerifyReport verify_circuit(const Plan& plan, double fidelity_tol,
                                   int cap = kDefaultSimulationCap) {
  const auto start = std::chrono::steady_clock::now();
  VerifyReport report;
  report.method = "circuit";
  report.fidelity_tolerance = fidelity_tol;
  report.total_qubits = plan.layout.total_qubits();
  report.predicted_probability = plan.ledger.expected_success_probability;

  const StateVector state = run(plan.full_circuit(), cap);
  const PostSelectResult kept =
      postselect_zeros(state, plan.postselect_qubits());
  const StateVector out = reduce_to_qubits(kept.state, plan.output_qubits());
  const ComplexVector reference = target_state(plan.problem);

  report.postselect_probability = kept.probability;
  report.fidelity = fidelity(out.to_vector(), reference);
  report.passed = report.fidelity >= 1.0 - fidelity_tol;
  report.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  return report;
}

/// Replays the plan's schedule over the dense calculus: every lane holds the
/// vectorized transpose of its operator span, gathering contracts two lanes,
/// and the multiplication stage emits the product vector.
inline VerifyReport verify_algebraic(const Plan& plan, double fidelity_tol) {
  const auto start = std::chrono::steady_clock::now();
  VerifyReport report;
  report.method = "algebraic";
  report.fidelity_tolerance = fidelity_tol;
  report.total_qubits = plan.layout.total_qubits();
  report.predicted_probability = plan.ledger.expected_success_probability;
  report.postselect_probability = report.predicted_probability;

  const std::size_t dim = std::size_t{1} << plan.problem.n;
  std::map<std::pair<int, int>, ComplexVector> spans;
  const int lanes = static_cast<int>(plan.problem.ops.size()) / 2;
  for (int i = 0; i < lanes; ++i) {
    spans[{2 * i + 1, 2 * i + 2}] =
        vectorize_pair(plan.problem.ops[2 * i], plan.problem.ops[2 * i + 1]);
  }
  for (const GatherBlock& b : plan.blocks) {
    auto left = spans.find({b.left_lo, b.left_hi});
    auto right = spans.find({b.right_lo, b.right_hi});
    if (left == spans.end() || right == spans.end()) {
      throw std::logic_error("plan schedule references a missing span");
    }
    ComplexVector merged = gather_exact(left->second, right->second, dim);
    spans.erase(left);
    spans.erase({b.right_lo, b.right_hi});
    spans[{b.left_lo, b.right_hi}] = std::move(merged);
  }
  auto full = spans.find({1, static_cast<int>(plan.problem.ops.size())});
  if (spans.size() != 1 || full == spans.end()) {
    throw std::logic_error("plan schedule did not contract to a single span");
  }
  const ComplexVector product = multiply_exact(full->second, plan.problem.v);
  report.fidelity =
      fidelity(product.normalized(), target_state(plan.problem));
  report.passed = report.fidelity >= 1.0 - fidelity_tol;
  report.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  return report;
}

/// Circuit verification when the plan fits under the cap, algebraic replay
/// otherwise.
inline VerifyReport verify_auto(const Plan& plan, double fidelity_tol,
                                int cap = kDefaultSimulationCap) {
  if (plan.layout.total_qubits() <= cap) {
    return verify_circuit(plan, fidelity_tol, cap);
  }
  return verify_algebraic(plan, fidelity_tol);
}

}  // namespace dql

#endif  // DQL_VERIFY_HPP_
