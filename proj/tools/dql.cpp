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
// dql command-line tool: plan, verify, simulate, bench and decode
// distributed-product circuits.
//
// Exit codes: 0 success, 1 verification failure, 2 input error,
// 3 capacity exceeded.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "dql/dql.hpp"

namespace {

constexpr int kExitSuccess = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitInputError = 2;
constexpr int kExitCapacity = 3;

struct CommonArgs {
  std::string config_path;
  std::string problem_path;
  std::string plan_path;
  std::string mode = "exact";
  bool no_register_swaps = false;
};

dql::Config load_config_or_default(const std::string& path) {
  if (path.empty()) return dql::Config{};
  return dql::load_config(path);
}

/// Loads a plan either from a plan file or by planning a problem file.
dql::Plan load_plan(const CommonArgs& args, const dql::Config& config) {
  if (!args.plan_path.empty()) {
    return dql::plan_from_json(dql::load_json(args.plan_path));
  }
  if (args.problem_path.empty()) {
    throw std::invalid_argument("either --plan or --problem is required");
  }
  const dql::Problem problem =
      dql::problem_from_json(dql::load_json(args.problem_path),
                             config.tol_load);
  dql::PlanOptions options;
  options.mode = dql::synthesis_mode_from_name(args.mode);
  options.include_register_swaps = !args.no_register_swaps;
  options.unitary_tol = config.tol_load;
  return dql::make_plan(problem, options);
}

void print_ledger_summary(const dql::Plan& plan) {
  const dql::PlanLedger& led = plan.ledger;
  std::printf(
      "plan: mode=%s n=%d m=%d (padded %d) qubits=%d (%d register + %d "
      "ancilla)\n",
      dql::synthesis_mode_name(plan.options.mode), led.n, led.m_original,
      led.m_padded, led.total_qubits, led.register_qubit_count,
      led.ancilla_count);
  std::printf(
      "      gathering: %d blocks (%d combining) in %d layers; output "
      "register %d\n",
      led.gu_count, led.combining_blocks, led.gathering_layers,
      plan.output_register);
  std::printf(
      "      depth: prep=%d d_U=%d d_G=%d d_V=%d block_depth=%d "
      "(sequential %d)\n",
      led.prep_depth, led.d_u, led.d_g, led.d_v, led.block_depth,
      led.sequential_block_depth);
  std::printf(
      "      cost: %lld elementary gates, depth %d, %d helper qubits; "
      "expected branch probability %.3e\n",
      led.cost_gates, led.cost_depth, led.helper_ancillas,
      led.expected_success_probability);
}

int cmd_plan(const CommonArgs& args, const std::string& out_path,
             std::size_t decode_budget) {
  const dql::Config config = load_config_or_default(args.config_path);
  if (args.problem_path.empty()) {
    throw std::invalid_argument("plan requires --problem");
  }
  const dql::Plan plan = load_plan(args, config);
  const dql::Json j = dql::plan_to_json(plan, decode_budget);
  if (out_path.empty()) {
    std::cout << j.dump(2) << "\n";
  } else {
    dql::write_text_file(out_path, j.dump(2) + "\n");
    print_ledger_summary(plan);
    std::printf("wrote %s\n", out_path.c_str());
  }
  return kExitSuccess;
}

int cmd_verify(const CommonArgs& args, const std::string& method,
               double tol_override, int cap_override,
               const std::string& out_path) {
  const dql::Config config = load_config_or_default(args.config_path);
  const dql::Plan plan = load_plan(args, config);
  const bool lcu = plan.options.mode == dql::SynthesisMode::PauliLcu;
  const double tol = std::isnan(tol_override)
                         ? config.fidelity_tolerance_for(lcu)
                         : tol_override;
  const int cap = cap_override > 0 ? cap_override : config.sim_cap;

  dql::VerifyReport report;
  if (method == "circuit") {
    report = dql::verify_circuit(plan, tol, cap);
  } else if (method == "algebraic") {
    report = dql::verify_algebraic(plan, tol);
  } else {
    report = dql::verify_auto(plan, tol, cap);
  }

  print_ledger_summary(plan);
  std::printf(
      "verify: method=%s fidelity=%.12f (tol %.1e) probability=%.6e "
      "(predicted %.6e) wall=%.3fs -> %s\n",
      report.method.c_str(), report.fidelity, report.fidelity_tolerance,
      report.postselect_probability, report.predicted_probability,
      report.wall_seconds, report.passed ? "PASS" : "FAIL");
  if (!out_path.empty()) {
    dql::write_text_file(out_path, dql::report_to_json(report).dump(2) + "\n");
  }
  return report.passed ? kExitSuccess : kExitVerifyFailed;
}

int cmd_simulate(const CommonArgs& args, std::uint64_t shots,
                 std::uint64_t seed, int cap_override, int branch_limit,
                 const std::string& state_out,
                 const std::string& histogram_out) {
  const dql::Config config = load_config_or_default(args.config_path);
  const dql::Plan plan = load_plan(args, config);
  const int cap = cap_override > 0 ? cap_override : config.sim_cap;

  const dql::StateVector full = dql::run(plan.full_circuit(), cap);
  const dql::PostSelectResult kept =
      dql::postselect_zeros(full, plan.postselect_qubits());
  const dql::StateVector output =
      dql::reduce_to_qubits(kept.state, plan.output_qubits());
  const double ref_fidelity =
      dql::fidelity(output.to_vector(), dql::target_state(plan.problem));

  print_ledger_summary(plan);
  std::printf("simulate: kept-branch probability=%.6e fidelity=%.12f\n",
              kept.probability, ref_fidelity);

  if (branch_limit > 0) {
    const auto branches = dql::enumerate_branches(plan, full);
    int shown = 0;
    for (const auto& branch : branches) {
      if (shown++ >= branch_limit) break;
      std::string bits;
      for (int b : dql::outcome_to_bits(plan, branch.outcome)) {
        bits.push_back(b ? '1' : '0');
      }
      std::printf("branch %s p=%.6e", bits.c_str(), branch.probability);
      if (plan.options.mode == dql::SynthesisMode::PauliLcu) {
        const dql::DecodedOutcome decoded =
            dql::decode_outcome(plan, branch.outcome);
        if (!decoded.decodable) {
          std::printf(" [flagged]");
        } else if (decoded.kept) {
          std::printf(" [kept]");
        } else {
          std::printf(" [");
          bool first = true;
          for (const dql::Insertion& ins : decoded.insertions) {
            std::printf("%s%s@%d", first ? "" : " ",
                        ins.pauli.label().c_str(), ins.position);
            first = false;
          }
          std::printf("]");
        }
      }
      std::printf("\n");
    }
  }

  if (shots > 0) {
    const auto counts =
        dql::sample(full, plan.postselect_qubits(), shots, seed);
    const std::string csv = dql::histogram_csv(
        counts, static_cast<int>(plan.postselect_qubits().size()));
    if (histogram_out.empty()) {
      std::cout << csv;
    } else {
      dql::write_text_file(histogram_out, csv);
      std::printf("wrote %s (%llu shots)\n", histogram_out.c_str(),
                  static_cast<unsigned long long>(shots));
    }
  }

  if (!state_out.empty()) {
    dql::write_text_file(state_out,
                         dql::state_to_json(output).dump(2) + "\n");
    std::printf("wrote %s\n", state_out.c_str());
  }
  return kExitSuccess;
}

int cmd_bench(const CommonArgs& args, std::vector<int> ns,
              std::vector<int> ms, std::vector<std::string> modes,
              std::uint64_t seed, const std::string& out_path) {
  const dql::Config config = load_config_or_default(args.config_path);
  if (ns.empty()) ns = {1, 2};
  if (ms.empty()) ms = {2, 4, 8, 14};
  if (modes.empty()) modes = {"exact", "lcu"};

  std::ostringstream csv;
  csv << "n,m,mode,qubits,gu_count,gathering_layers,block_depth,"
         "sequential_depth,cost_gates,cost_depth,method,fidelity,"
         "probability,wall_seconds\n";
  for (int n : ns) {
    for (int m : ms) {
      dql::Rng rng(seed ^ (static_cast<std::uint64_t>(n) << 32) ^
                   static_cast<std::uint64_t>(m));
      dql::Problem problem;
      problem.n = n;
      const std::size_t dim = std::size_t{1} << n;
      for (int i = 0; i < m; ++i) {
        problem.ops.push_back(dql::haar_unitary(dim, rng));
      }
      problem.v = dql::random_real_state(dim, rng);
      for (const std::string& mode_name : modes) {
        dql::PlanOptions options;
        options.mode = dql::synthesis_mode_from_name(mode_name);
        options.include_register_swaps = !args.no_register_swaps;
        const dql::Plan plan = dql::make_plan(problem, options);
        const bool lcu = options.mode == dql::SynthesisMode::PauliLcu;
        const dql::VerifyReport report = dql::verify_auto(
            plan, config.fidelity_tolerance_for(lcu), config.sim_cap);
        csv << n << "," << m << "," << mode_name << ","
            << plan.ledger.total_qubits << "," << plan.ledger.gu_count << ","
            << plan.ledger.gathering_layers << ","
            << plan.ledger.block_depth << ","
            << plan.ledger.sequential_block_depth << ","
            << plan.ledger.cost_gates << "," << plan.ledger.cost_depth << ","
            << report.method << "," << std::scientific << report.fidelity
            << "," << report.postselect_probability << ","
            << report.wall_seconds << std::defaultfloat << "\n";
        std::printf("bench n=%d m=%d %-5s qubits=%2d depth=%3d %s "
                    "fid=%.12f wall=%.3fs\n",
                    n, m, mode_name.c_str(), plan.ledger.total_qubits,
                    plan.ledger.block_depth, report.method.c_str(),
                    report.fidelity, report.wall_seconds);
      }
    }
  }
  if (!out_path.empty()) {
    dql::write_text_file(out_path, csv.str());
    std::printf("wrote %s\n", out_path.c_str());
  } else {
    std::cout << csv.str();
  }
  return kExitSuccess;
}

int cmd_decode(const CommonArgs& args, const std::string& outcome_bits,
               std::size_t table_budget, const std::string& out_path) {
  const dql::Config config = load_config_or_default(args.config_path);
  const dql::Plan plan = load_plan(args, config);

  dql::Json result;
  if (!outcome_bits.empty()) {
    std::vector<int> bits;
    for (char c : outcome_bits) {
      if (c != '0' && c != '1') {
        throw std::invalid_argument("--outcome must be a 0/1 bitstring");
      }
      bits.push_back(c - '0');
    }
    const dql::PlanOutcome outcome = dql::outcome_from_bits(plan, bits);
    const dql::DecodedOutcome decoded = dql::decode_outcome(plan, outcome);
    result = dql::decoded_to_json(decoded);
    if (decoded.decodable) {
      try {
        const dql::PauliString fix = dql::combined_correction(plan, decoded);
        result["correctable"] = true;
        result["correction"] = fix.label();
      } catch (const dql::NotCorrectableError& e) {
        result["correctable"] = false;
        result["obstruction"] = {{"operator", e.op_index},
                                 {"pauli", e.pauli}};
      }
    }
  } else {
    const std::size_t budget =
        table_budget > 0 ? table_budget : config.outcome_budget;
    result = dql::plan_to_json(plan, budget)["decoding"];
  }

  if (out_path.empty()) {
    std::cout << result.dump(2) << "\n";
  } else {
    dql::write_text_file(out_path, result.dump(2) + "\n");
    std::printf("wrote %s\n", out_path.c_str());
  }
  return kExitSuccess;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"distributed product-circuit planner and simulator"};
  app.require_subcommand(1);

  CommonArgs common;
  app.add_option("--config", common.config_path,
                 "key = value configuration file");

  auto add_input_options = [&](CLI::App* cmd, bool with_plan) {
    cmd->add_option("--problem", common.problem_path,
                    "problem JSON file (operators and target vector)");
    if (with_plan) {
      cmd->add_option("--plan", common.plan_path, "plan JSON file");
    }
    cmd->add_option("--mode", common.mode,
                    "synthesis mode: exact or lcu (with --problem)")
        ->check(CLI::IsMember({"exact", "lcu"}));
    cmd->add_flag("--no-register-swaps", common.no_register_swaps,
                  "elide the per-block register swaps (with --problem)");
  };

  // plan
  auto* plan_cmd =
      app.add_subcommand("plan", "plan a problem and emit the plan JSON");
  std::string plan_out;
  std::size_t plan_decode_budget = 0;
  add_input_options(plan_cmd, false);
  plan_cmd->add_option("--out", plan_out, "write the plan JSON here");
  plan_cmd->add_option("--decode-table", plan_decode_budget,
                       "embed a decoding table with up to N entries");

  // verify
  auto* verify_cmd = app.add_subcommand(
      "verify", "check a plan's kept branch against the operator product");
  std::string verify_method = "auto";
  double verify_tol = std::numeric_limits<double>::quiet_NaN();
  int verify_cap = 0;
  std::string verify_out;
  add_input_options(verify_cmd, true);
  verify_cmd->add_option("--method", verify_method,
                         "circuit, algebraic, or auto")
      ->check(CLI::IsMember({"auto", "circuit", "algebraic"}));
  verify_cmd->add_option("--tol", verify_tol,
                         "fidelity tolerance (default from config)");
  verify_cmd->add_option("--cap", verify_cap,
                         "state-vector qubit cap override");
  verify_cmd->add_option("--out", verify_out, "write the report JSON here");

  // simulate
  auto* sim_cmd = app.add_subcommand(
      "simulate", "simulate the pipeline; sample or inspect branches");
  std::uint64_t sim_shots = 0, sim_seed = 1;
  int sim_cap = 0, sim_branches = 0;
  std::string sim_state_out, sim_hist_out;
  add_input_options(sim_cmd, true);
  sim_cmd->add_option("--shots", sim_shots,
                      "sample the post-selected qubits this many times");
  sim_cmd->add_option("--seed", sim_seed, "sampling seed");
  sim_cmd->add_option("--cap", sim_cap, "state-vector qubit cap override");
  sim_cmd->add_option("--branches", sim_branches,
                      "print the most likely measurement branches");
  sim_cmd->add_option("--state-out", sim_state_out,
                      "write the kept output state JSON here");
  sim_cmd->add_option("--histogram", sim_hist_out,
                      "write the sampled histogram CSV here");

  // bench
  auto* bench_cmd = app.add_subcommand(
      "bench", "sweep problem sizes and report depth/cost/fidelity");
  std::vector<int> bench_n, bench_m;
  std::vector<std::string> bench_modes;
  std::uint64_t bench_seed = 12345;
  std::string bench_out;
  bench_cmd->add_option("--n", bench_n, "qubits per operator (list)")
      ->delimiter(',');
  bench_cmd->add_option("--m", bench_m, "operator counts (list)")
      ->delimiter(',');
  bench_cmd->add_option("--modes", bench_modes, "synthesis modes (list)")
      ->delimiter(',')
      ->check(CLI::IsMember({"exact", "lcu"}));
  bench_cmd->add_option("--seed", bench_seed, "instance seed");
  bench_cmd->add_option("--out", bench_out, "write the CSV here");
  bench_cmd->add_flag("--no-register-swaps", common.no_register_swaps,
                      "elide the per-block register swaps");

  // decode
  auto* decode_cmd = app.add_subcommand(
      "decode", "decode a measured outcome or emit the decoding table");
  std::string decode_outcome_bits, decode_out;
  std::size_t decode_table = 0;
  add_input_options(decode_cmd, true);
  decode_cmd->add_option("--outcome", decode_outcome_bits,
                         "bitstring over the plan's post-selected qubits");
  decode_cmd->add_option("--table", decode_table,
                         "emit a decoding table with up to N entries");
  decode_cmd->add_option("--out", decode_out, "write the result JSON here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitSuccess : kExitInputError;
  }

  try {
    if (*plan_cmd) return cmd_plan(common, plan_out, plan_decode_budget);
    if (*verify_cmd) {
      return cmd_verify(common, verify_method, verify_tol, verify_cap,
                        verify_out);
    }
    if (*sim_cmd) {
      return cmd_simulate(common, sim_shots, sim_seed, sim_cap, sim_branches,
                          sim_state_out, sim_hist_out);
    }
    if (*bench_cmd) {
      return cmd_bench(common, bench_n, bench_m, bench_modes, bench_seed,
                       bench_out);
    }
    if (*decode_cmd) {
      return cmd_decode(common, decode_outcome_bits, decode_table,
                        decode_out);
    }
  } catch (const dql::CapacityError& e) {
    std::cerr << "capacity error: " << e.what() << "\n";
    return kExitCapacity;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  }
  return kExitInputError;
}
