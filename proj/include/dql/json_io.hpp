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
// JSON (and CSV) serialization for problems, circuits, plans, states and
// reports.  Complex numbers are [re, im] pairs; matrices are row-major flat
// lists of such pairs.

#ifndef DQL_JSON_IO_HPP_
#define DQL_JSON_IO_HPP_

#include <cstdint>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "dql/circuit.hpp"
#include "dql/decoding.hpp"
#include "dql/linalg.hpp"
#include "dql/planner.hpp"
#include "dql/random.hpp"
#include "dql/verify.hpp"

namespace dql {

using Json = nlohmann::json;

// ---------------------------------------------------------------------------
// Primitives
// ---------------------------------------------------------------------------

inline Json complex_to_json(const Complex& z) {
  return Json::array({z.real(), z.imag()});
}

inline Complex complex_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 2) {
    throw std::invalid_argument("complex entries must be [re, im] pairs");
  }
  return Complex(j[0].get<double>(), j[1].get<double>());
}

inline Json vector_to_json(const ComplexVector& v) {
  Json out = Json::array();
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(complex_to_json(v[i]));
  return out;
}

inline ComplexVector vector_from_json(const Json& j) {
  if (!j.is_array()) {
    throw std::invalid_argument("vector must be a list of [re, im] pairs");
  }
  ComplexVector v(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) v[i] = complex_from_json(j[i]);
  return v;
}

inline Json matrix_to_json(const ComplexMatrix& m) {
  Json out = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) {
      out.push_back(complex_to_json(m(r, c)));
    }
  }
  return out;
}

/// Square matrix from a row-major flat list.
inline ComplexMatrix matrix_from_json(const Json& j) {
  if (!j.is_array()) {
    throw std::invalid_argument("matrix must be a flat row-major list of "
                                "[re, im] pairs");
  }
  std::size_t dim = 0;
  while (dim * dim < j.size()) ++dim;
  if (dim * dim != j.size()) {
    throw std::invalid_argument("matrix entry count is not a perfect square");
  }
  ComplexMatrix m(dim, dim);
  for (std::size_t i = 0; i < j.size(); ++i) {
    m(i / dim, i % dim) = complex_from_json(j[i]);
  }
  return m;
}

// ---------------------------------------------------------------------------
// Circuits
// ---------------------------------------------------------------------------

inline Json layout_to_json(const RegisterLayout& layout) {
  Json anc = Json::array();
  for (const Ancilla& a : layout.ancillas) {
    anc.push_back({{"qubit", a.qubit},
                   {"purpose", ancilla_purpose_name(a.purpose)}});
  }
  return {{"qubits_per_register", layout.qubits_per_register},
          {"register_count", layout.register_count},
          {"ancillas", anc}};
}

inline RegisterLayout layout_from_json(const Json& j) {
  RegisterLayout layout;
  layout.qubits_per_register = j.at("qubits_per_register").get<int>();
  layout.register_count = j.at("register_count").get<int>();
  for (const Json& a : j.at("ancillas")) {
    const std::string purpose = a.at("purpose").get<std::string>();
    AncillaPurpose p;
    if (purpose == "LCU-G") {
      p = AncillaPurpose::LcuGather;
    } else if (purpose == "LCU-V") {
      p = AncillaPurpose::LcuMultiplier;
    } else if (purpose == "MCZ-helper") {
      p = AncillaPurpose::MczHelper;
    } else {
      throw std::invalid_argument("unknown ancilla purpose '" + purpose +
                                  "'");
    }
    const int q = layout.add_ancilla(p);
    if (q != a.at("qubit").get<int>()) {
      throw std::invalid_argument("ancilla qubits must be consecutive after "
                                  "the registers");
    }
  }
  return layout;
}

inline GateKind gate_kind_from_name(const std::string& name) {
  static const std::map<std::string, GateKind> kinds = {
      {"Hadamard", GateKind::Hadamard},
      {"X", GateKind::PauliX},
      {"Z", GateKind::PauliZ},
      {"CX", GateKind::CX},
      {"CZ", GateKind::CZ},
      {"ControlledHadamard", GateKind::ControlledHadamard},
      {"CCX", GateKind::CCX},
      {"MultiControlledZ0", GateKind::MultiControlledZ0},
      {"DiagonalUnitary", GateKind::DiagonalUnitary},
      {"GenericUnitary", GateKind::GenericUnitary},
      {"Swap", GateKind::Swap},
      {"RegisterSwap", GateKind::RegisterSwap},
  };
  auto it = kinds.find(name);
  if (it == kinds.end()) {
    throw std::invalid_argument("unknown gate kind '" + name + "'");
  }
  return it->second;
}

inline Json circuit_to_json(const Circuit& c) {
  Json ops = Json::array();
  for (const GateOp& op : c.ops) {
    Json jop = {{"kind", kind_name(op.kind)}, {"targets", op.targets}};
    if (!op.controls.empty()) {
      Json controls = Json::array();
      for (const ControlSpec& ctrl : op.controls) {
        controls.push_back({{"qubit", ctrl.qubit},
                            {"polarity", ctrl.polarity}});
      }
      jop["controls"] = controls;
    }
    if (op.kind == GateKind::GenericUnitary) {
      jop["matrix"] = matrix_to_json(op.matrix);
    }
    if (op.kind == GateKind::DiagonalUnitary) {
      Json diag = Json::array();
      for (const Complex& z : op.diagonal) diag.push_back(complex_to_json(z));
      jop["diagonal"] = diag;
    }
    ops.push_back(jop);
  }
  return {{"format", "dql-circuit"},
          {"version", 1},
          {"layout", layout_to_json(c.layout)},
          {"scale", complex_to_json(c.scale)},
          {"ops", ops}};
}

inline Circuit circuit_from_json(const Json& j, double unitary_tol = 1e-10) {
  if (j.value("format", "") != "dql-circuit") {
    throw std::invalid_argument("not a dql-circuit file");
  }
  Circuit c{layout_from_json(j.at("layout"))};
  c.scale = complex_from_json(j.at("scale"));
  for (const Json& jop : j.at("ops")) {
    GateOp op;
    op.kind = gate_kind_from_name(jop.at("kind").get<std::string>());
    op.targets = jop.at("targets").get<std::vector<int>>();
    if (jop.contains("controls")) {
      for (const Json& jc : jop.at("controls")) {
        op.controls.push_back({jc.at("qubit").get<int>(),
                               jc.at("polarity").get<int>()});
      }
    }
    if (jop.contains("matrix")) op.matrix = matrix_from_json(jop.at("matrix"));
    if (jop.contains("diagonal")) {
      for (const Json& z : jop.at("diagonal")) {
        op.diagonal.push_back(complex_from_json(z));
      }
    }
    c.append(std::move(op));
  }
  validate(c, unitary_tol);
  return c;
}

// ---------------------------------------------------------------------------
// Problems
// ---------------------------------------------------------------------------

/// Operator entries: "H" | "X" | "Z" | "I" (on qubit 0, identity elsewhere),
/// "CX" (control qubit 0, target qubit 1), {"matrix": [...]}, or
/// {"builtin": "random", "seed": s} for a seeded Haar-random unitary.
inline ComplexMatrix problem_operator_from_json(const Json& j, int n) {
  const std::size_t dim = std::size_t{1} << n;
  auto embed_single = [&](const ComplexMatrix& g) {
    ComplexMatrix m = g;
    for (int q = 1; q < n; ++q) m = kron(m, ComplexMatrix::identity(2));
    return m;
  };
  if (j.is_string()) {
    const std::string name = j.get<std::string>();
    if (name == "I") return ComplexMatrix::identity(dim);
    if (name == "H") {
      ComplexMatrix h(2, 2);
      const double s = 1.0 / std::sqrt(2.0);
      h(0, 0) = s; h(0, 1) = s; h(1, 0) = s; h(1, 1) = -s;
      return embed_single(h);
    }
    if (name == "X") {
      ComplexMatrix x(2, 2);
      x(0, 1) = 1.0; x(1, 0) = 1.0;
      return embed_single(x);
    }
    if (name == "Z") {
      ComplexMatrix z(2, 2);
      z(0, 0) = 1.0; z(1, 1) = -1.0;
      return embed_single(z);
    }
    if (name == "CX") {
      if (n < 2) {
        throw std::invalid_argument("builtin CX needs at least two qubits");
      }
      ComplexMatrix cx(4, 4);
      cx(0, 0) = 1.0; cx(1, 1) = 1.0; cx(2, 3) = 1.0; cx(3, 2) = 1.0;
      ComplexMatrix m = cx;
      for (int q = 2; q < n; ++q) m = kron(m, ComplexMatrix::identity(2));
      return m;
    }
    throw std::invalid_argument("unknown builtin operator '" + name + "'");
  }
  if (j.is_object() && j.contains("matrix")) {
    ComplexMatrix m = matrix_from_json(j.at("matrix"));
    if (m.rows() != dim) {
      throw std::invalid_argument("operator matrix does not match the "
                                  "problem dimension");
    }
    return m;
  }
  if (j.is_object() && j.value("builtin", "") == "random") {
    Rng rng(j.value("seed", std::uint64_t{0}));
    return haar_unitary(dim, rng);
  }
  throw std::invalid_argument("operator entries must be builtin names, "
                              "{\"matrix\": ...} or "
                              "{\"builtin\": \"random\", \"seed\": ...}");
}

/// Target vector entries: "uniform" | "basis0", an explicit list of
/// [re, im] pairs, or {"builtin": "random", "seed": s, "real": true|false}.
inline ComplexVector problem_vector_from_json(const Json& j, int n) {
  const std::size_t dim = std::size_t{1} << n;
  if (j.is_string()) {
    const std::string name = j.get<std::string>();
    if (name == "uniform") {
      ComplexVector v(dim);
      for (std::size_t i = 0; i < dim; ++i) {
        v[i] = 1.0 / std::sqrt(static_cast<double>(dim));
      }
      return v;
    }
    if (name == "basis0") {
      ComplexVector v(dim);
      v[0] = 1.0;
      return v;
    }
    throw std::invalid_argument("unknown builtin vector '" + name + "'");
  }
  if (j.is_object() && j.value("builtin", "") == "random") {
    Rng rng(j.value("seed", std::uint64_t{0}));
    return j.value("real", true) ? random_real_state(dim, rng)
                                 : random_state(dim, rng);
  }
  ComplexVector v = vector_from_json(j);
  if (v.size() != dim) {
    throw std::invalid_argument("target vector does not match the problem "
                                "dimension");
  }
  return v;
}

inline Problem problem_from_json(const Json& j, double unitary_tol = 1e-8) {
  if (j.value("format", "") != "dql-problem") {
    throw std::invalid_argument("not a dql-problem file");
  }
  Problem p;
  p.n = j.at("n").get<int>();
  if (p.n < 1 || p.n > 16) {
    throw std::invalid_argument("problem qubit count out of range");
  }
  for (const Json& jop : j.at("ops")) {
    p.ops.push_back(problem_operator_from_json(jop, p.n));
  }
  p.v = problem_vector_from_json(j.at("v"), p.n);
  validate_problem(p, unitary_tol);
  return p;
}

/// Serializes with explicit matrices so reloading is exact.
inline Json problem_to_json(const Problem& p) {
  Json ops = Json::array();
  for (const ComplexMatrix& op : p.ops) {
    ops.push_back(Json{{"matrix", matrix_to_json(op)}});
  }
  return {{"format", "dql-problem"},
          {"version", 1},
          {"n", p.n},
          {"ops", ops},
          {"v", vector_to_json(p.v)}};
}

// ---------------------------------------------------------------------------
// Plans
// ---------------------------------------------------------------------------

inline Json ledger_to_json(const PlanLedger& led) {
  return {{"n", led.n},
          {"m_original", led.m_original},
          {"m_padded", led.m_padded},
          {"lanes", led.lanes},
          {"gu_count", led.gu_count},
          {"vu_count", led.vu_count},
          {"combining_blocks", led.combining_blocks},
          {"gathering_layers", led.gathering_layers},
          {"prep_depth", led.prep_depth},
          {"d_u", led.d_u},
          {"d_g", led.d_g},
          {"d_v", led.d_v},
          {"block_depth", led.block_depth},
          {"sequential_block_depth", led.sequential_block_depth},
          {"register_qubit_count", led.register_qubit_count},
          {"ancilla_count", led.ancilla_count},
          {"total_qubits", led.total_qubits},
          {"cost_gates", led.cost_gates},
          {"cost_depth", led.cost_depth},
          {"helper_ancillas", led.helper_ancillas},
          {"lambda_max", led.lambda_max},
          {"expected_branch_scale", led.expected_branch_scale},
          {"expected_success_probability",
           led.expected_success_probability}};
}

inline Json block_to_json(const GatherBlock& b) {
  return {{"id", b.id},
          {"layer", b.layer},
          {"role", b.role},
          {"left_range", {b.left_lo, b.left_hi}},
          {"right_range", {b.right_lo, b.right_hi}},
          {"seam", b.seam},
          {"registers", {b.reg_one, b.reg_two}},
          {"swap", {b.swap_a, b.swap_b}},
          {"result", {b.result_col, b.result_row}},
          {"spent", {b.spent_a, b.spent_b}},
          {"ancilla", b.ancilla}};
}

inline Json plan_to_json(const Plan& plan, std::size_t decode_budget = 0) {
  Json gathering = Json::array();
  for (const Circuit& g : plan.gathering) gathering.push_back(circuit_to_json(g));
  Json blocks = Json::array();
  for (const GatherBlock& b : plan.blocks) blocks.push_back(block_to_json(b));

  Json j = {{"format", "dql-plan"},
            {"version", 1},
            {"mode", synthesis_mode_name(plan.options.mode)},
            {"include_register_swaps", plan.options.include_register_swaps},
            {"m_original", plan.m_original},
            {"problem", problem_to_json(plan.problem)},
            {"layout", layout_to_json(plan.layout)},
            {"stages",
             {{"prep", circuit_to_json(plan.prep)},
              {"vectorization", circuit_to_json(plan.vectorization)},
              {"gathering", gathering},
              {"multiplication", circuit_to_json(plan.multiplication)}}},
            {"blocks", blocks},
            {"multiplier",
             {{"operand_register", plan.multiplier.operand_reg},
              {"output_register", plan.multiplier.output_reg},
              {"ancilla", plan.multiplier.ancilla},
              {"lambda_max", plan.multiplier.lambda_max}}},
            {"output_register", plan.output_register},
            {"postselect_qubits", plan.postselect_qubits()},
            {"ledger", ledger_to_json(plan.ledger)}};

  Json decoding = {{"available",
                    plan.options.mode == SynthesisMode::PauliLcu}};
  if (plan.options.mode == SynthesisMode::PauliLcu && decode_budget > 0) {
    Json entries = Json::array();
    for (const PlanOutcome& outcome :
         enumerate_decodable_outcomes(plan, decode_budget)) {
      const DecodedOutcome decoded = decode_outcome(plan, outcome);
      std::string bits;
      for (int bit : outcome_to_bits(plan, outcome)) {
        bits.push_back(bit ? '1' : '0');
      }
      Json insertions = Json::array();
      for (const Insertion& ins : decoded.insertions) {
        insertions.push_back({{"position", ins.position},
                              {"pauli", ins.pauli.label()}});
      }
      bool correctable = true;
      try {
        combined_correction(plan, decoded);
      } catch (const NotCorrectableError&) {
        correctable = false;
      }
      entries.push_back({{"bits", bits},
                         {"insertions", insertions},
                         {"correctable", correctable}});
    }
    decoding["entries"] = entries;
  }
  j["decoding"] = decoding;
  return j;
}

/// Rebuilds a plan from its file by re-planning the embedded problem and
/// cross-checking the stored ledger.
inline Plan plan_from_json(const Json& j) {
  if (j.value("format", "") != "dql-plan") {
    throw std::invalid_argument("not a dql-plan file");
  }
  const Problem problem = problem_from_json(j.at("problem"));
  PlanOptions options;
  options.mode = synthesis_mode_from_name(j.at("mode").get<std::string>());
  options.include_register_swaps =
      j.at("include_register_swaps").get<bool>();
  Plan plan = make_plan(problem, options);
  plan.m_original = j.at("m_original").get<int>();
  plan.ledger.m_original = plan.m_original;
  plan.ledger.sequential_block_depth = plan.m_original;
  const Json& stored = j.at("ledger");
  if (stored.at("gu_count").get<int>() != plan.ledger.gu_count ||
      stored.at("total_qubits").get<int>() != plan.ledger.total_qubits ||
      stored.at("block_depth").get<int>() != plan.ledger.block_depth) {
    throw std::invalid_argument("plan file ledger does not match its "
                                "problem; the file is inconsistent");
  }
  return plan;
}

// ---------------------------------------------------------------------------
// States, reports, outcomes
// ---------------------------------------------------------------------------

inline Json state_to_json(const StateVector& s) {
  Json amps = Json::array();
  for (const Complex& a : s.amps) amps.push_back(complex_to_json(a));
  return {{"format", "dql-state"},
          {"version", 1},
          {"qubits", s.num_qubits},
          {"amplitudes", amps}};
}

inline StateVector state_from_json(const Json& j) {
  if (j.value("format", "") != "dql-state") {
    throw std::invalid_argument("not a dql-state file");
  }
  const int qubits = j.at("qubits").get<int>();
  const Json& amps = j.at("amplitudes");
  if (amps.size() != (std::size_t{1} << qubits)) {
    throw std::invalid_argument("amplitude count does not match qubit "
                                "count");
  }
  StateVector s;
  s.num_qubits = qubits;
  s.amps.resize(amps.size());
  for (std::size_t i = 0; i < amps.size(); ++i) {
    s.amps[i] = complex_from_json(amps[i]);
  }
  return s;
}

inline Json report_to_json(const VerifyReport& r) {
  return {{"passed", r.passed},
          {"method", r.method},
          {"fidelity", r.fidelity},
          {"fidelity_tolerance", r.fidelity_tolerance},
          {"postselect_probability", r.postselect_probability},
          {"predicted_probability", r.predicted_probability},
          {"total_qubits", r.total_qubits},
          {"wall_seconds", r.wall_seconds}};
}

inline Json decoded_to_json(const DecodedOutcome& d) {
  Json insertions = Json::array();
  for (const Insertion& ins : d.insertions) {
    insertions.push_back({{"position", ins.position},
                          {"pauli", ins.pauli.label()}});
  }
  return {{"kept", d.kept},
          {"decodable", d.decodable},
          {"flagged_blocks", d.flagged_blocks},
          {"insertions", insertions}};
}

/// Histogram of sampled outcomes as CSV.  `width` is the bitstring length;
/// outcomes print most significant sampled qubit first.
inline std::string histogram_csv(
    const std::map<std::uint64_t, std::uint64_t>& counts, int width) {
  std::ostringstream out;
  out << "outcome,count\n";
  for (const auto& [value, count] : counts) {
    std::string bits(width, '0');
    for (int i = 0; i < width; ++i) {
      if ((value >> (width - 1 - i)) & 1) bits[i] = '1';
    }
    out << bits << "," << count << "\n";
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// Files
// ---------------------------------------------------------------------------

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "' for reading");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

inline void write_text_file(const std::string& path,
                            const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << content;
}

inline Json load_json(const std::string& path) {
  return Json::parse(read_text_file(path));
}

}  // namespace dql

#endif  // DQL_JSON_IO_HPP_
