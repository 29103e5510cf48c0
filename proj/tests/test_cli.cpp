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

// End-to-end tests that drive the command-line binary as a subprocess and
// check its exit codes and file outputs.  The binary path is injected at
// compile time as DQL_CLI_PATH.

#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdlib>
#include <string>
#include <vector>

#include "dql/json_io.hpp"

namespace dql {
namespace {

struct RunResult {
  int exit_code = -1;
  std::string output;  // combined stdout + stderr
};

std::string temp_path(const std::string& name) {
  std::string dir = testing::TempDir();
  if (!dir.empty() && dir.back() != '/') dir.push_back('/');
  return dir + name;
}

RunResult run_cli(const std::string& args) {
  static int invocation = 0;
  const std::string capture =
      temp_path("cli_capture_" + std::to_string(invocation++) + ".txt");
  const std::string command =
      std::string("\"") + DQL_CLI_PATH + "\" " + args + " >" + capture +
      " 2>&1";
  const int status = std::system(command.c_str());
  RunResult result;
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  result.output = read_text_file(capture);
  return result;
}

/// Writes a small problem file (one-qubit operators, seeded at `seed`) and
/// returns its path.
std::string write_problem_file(const std::string& name, int n, int m,
                               std::uint64_t seed) {
  Json ops = Json::array();
  for (int i = 0; i < m; ++i) {
    ops.push_back(
        {{"builtin", "random"}, {"seed", seed + static_cast<std::uint64_t>(i)}});
  }
  const Json j = {{"format", "dql-problem"},
                  {"version", 1},
                  {"n", n},
                  {"ops", ops},
                  {"v", {{"builtin", "random"}, {"seed", seed + 99}, {"real", true}}}};
  const std::string path = temp_path(name);
  write_text_file(path, j.dump(2) + "\n");
  return path;
}

TEST(CliExitCodeTest, VerifyPassesOnAGoodProblem) {
  const std::string problem = write_problem_file("cli_good.json", 1, 4, 10);
  const RunResult r = run_cli("verify --problem " + problem + " --mode lcu");
  EXPECT_EQ(r.exit_code, 0) << r.output;
  EXPECT_NE(r.output.find("-> PASS"), std::string::npos) << r.output;
}

TEST(CliExitCodeTest, ImpossibleToleranceFailsVerification) {
  // An explicit negative tolerance demands fidelity >= 2, which no state
  // can meet, so this deterministically exercises the failure exit code.
  const std::string problem = write_problem_file("cli_tol.json", 1, 4, 11);
  const RunResult r =
      run_cli("verify --problem " + problem + " --mode lcu --tol -1");
  EXPECT_EQ(r.exit_code, 1) << r.output;
  EXPECT_NE(r.output.find("-> FAIL"), std::string::npos) << r.output;
}

TEST(CliExitCodeTest, BadInputsExitWithInputError) {
  // No --plan or --problem.
  EXPECT_EQ(run_cli("verify").exit_code, 2);
  // Input file that does not exist.
  EXPECT_EQ(run_cli("verify --problem " + temp_path("missing.json")).exit_code,
            2);
  // Unknown subcommand (command-line parse error).
  EXPECT_EQ(run_cli("frobnicate").exit_code, 2);
  // File that is not JSON at all.
  const std::string garbled = temp_path("cli_garbled.json");
  write_text_file(garbled, "this is not json {\n");
  EXPECT_EQ(run_cli("verify --problem " + garbled).exit_code, 2);
  // Decoding is only defined for the branch-flagging synthesis mode.
  const std::string problem = write_problem_file("cli_exact.json", 1, 4, 12);
  const RunResult r = run_cli("decode --problem " + problem +
                              " --mode exact --outcome 000");
  EXPECT_EQ(r.exit_code, 2) << r.output;
  EXPECT_NE(r.output.find("error:"), std::string::npos) << r.output;
}

TEST(CliExitCodeTest, CapacityOverflowUsesItsOwnExitCode) {
  const std::string problem = write_problem_file("cli_cap.json", 1, 4, 13);
  const RunResult r = run_cli("verify --problem " + problem +
                              " --mode lcu --method circuit --cap 3");
  EXPECT_EQ(r.exit_code, 3) << r.output;
  EXPECT_NE(r.output.find("capacity error"), std::string::npos) << r.output;
}

TEST(CliExitCodeTest, HelpExitsCleanly) {
  EXPECT_EQ(run_cli("--help").exit_code, 0);
}

TEST(CliPlanTest, PlanWritesAFileThatVerifyAccepts) {
  const std::string problem = write_problem_file("cli_plan_in.json", 1, 4, 20);
  const std::string plan_path = temp_path("cli_plan_out.json");
  const RunResult planned = run_cli("plan --problem " + problem +
                                    " --mode lcu --decode-table 4 --out " +
                                    plan_path);
  ASSERT_EQ(planned.exit_code, 0) << planned.output;
  EXPECT_NE(planned.output.find("wrote " + plan_path), std::string::npos);

  const Json j = load_json(plan_path);
  EXPECT_EQ(j.at("format").get<std::string>(), "dql-plan");
  EXPECT_EQ(j.at("mode").get<std::string>(), "lcu");
  ASSERT_TRUE(j.at("decoding").at("available").get<bool>());
  const Json& entries = j.at("decoding").at("entries");
  ASSERT_GE(entries.size(), 1u);
  ASSERT_LE(entries.size(), 4u);
  const std::string first_bits = entries[0].at("bits").get<std::string>();
  EXPECT_EQ(first_bits.find('1'), std::string::npos)
      << "the first table entry must be the all-zero (kept) outcome";
  EXPECT_TRUE(entries[0].at("correctable").get<bool>());

  const RunResult verified = run_cli("verify --plan " + plan_path);
  EXPECT_EQ(verified.exit_code, 0) << verified.output;
}

TEST(CliPlanTest, PlanPrintsJsonToStdoutWithoutAnOutputPath) {
  const std::string problem = write_problem_file("cli_plan_std.json", 1, 2, 21);
  const RunResult r = run_cli("plan --problem " + problem + " --mode exact");
  ASSERT_EQ(r.exit_code, 0) << r.output;
  const Json j = Json::parse(r.output);
  EXPECT_EQ(j.at("format").get<std::string>(), "dql-plan");
  EXPECT_EQ(j.at("mode").get<std::string>(), "exact");
  EXPECT_FALSE(j.at("decoding").at("available").get<bool>());
}

TEST(CliSimulateTest, WritesHistogramAndOutputState) {
  const std::string problem = write_problem_file("cli_sim.json", 1, 4, 30);
  const std::string hist = temp_path("cli_sim_hist.csv");
  const std::string state = temp_path("cli_sim_state.json");
  const std::string args = "simulate --problem " + problem +
                           " --mode lcu --shots 64 --seed 9 --branches 3"
                           " --histogram " + hist + " --state-out " + state;
  const RunResult r = run_cli(args);
  ASSERT_EQ(r.exit_code, 0) << r.output;
  EXPECT_NE(r.output.find("simulate: kept-branch probability="),
            std::string::npos);
  EXPECT_NE(r.output.find("branch "), std::string::npos);

  // Histogram: header plus rows whose counts add up to the shot total.
  const std::string csv = read_text_file(hist);
  ASSERT_EQ(csv.rfind("outcome,count\n", 0), 0u) << csv;
  std::uint64_t total = 0;
  std::size_t pos = csv.find('\n') + 1;
  while (pos < csv.size()) {
    const std::size_t comma = csv.find(',', pos);
    const std::size_t eol = csv.find('\n', pos);
    ASSERT_NE(comma, std::string::npos);
    ASSERT_NE(eol, std::string::npos);
    total += std::stoull(csv.substr(comma + 1, eol - comma - 1));
    pos = eol + 1;
  }
  EXPECT_EQ(total, 64u);

  // Output state: the kept branch on the one-qubit output register.
  const StateVector out = state_from_json(load_json(state));
  EXPECT_EQ(out.num_qubits, 1);
  EXPECT_NEAR(out.norm(), 1.0, 1e-9);

  // Same seed, same bytes: sampling is deterministic.
  const std::string hist2 = temp_path("cli_sim_hist2.csv");
  const RunResult r2 = run_cli("simulate --problem " + problem +
                               " --mode lcu --shots 64 --seed 9 --histogram " +
                               hist2);
  ASSERT_EQ(r2.exit_code, 0) << r2.output;
  EXPECT_EQ(read_text_file(hist2), csv);
}

TEST(CliBenchTest, EmitsTheDocumentedCsvSchema) {
  const std::string out = temp_path("cli_bench.csv");
  const RunResult r =
      run_cli("bench --n 1 --m 2,4 --modes lcu --seed 5 --out " + out);
  ASSERT_EQ(r.exit_code, 0) << r.output;

  const std::string csv = read_text_file(out);
  std::vector<std::string> lines;
  std::size_t pos = 0;
  while (pos < csv.size()) {
    const std::size_t eol = csv.find('\n', pos);
    lines.push_back(csv.substr(pos, eol - pos));
    if (eol == std::string::npos) break;
    pos = eol + 1;
  }
  ASSERT_EQ(lines.size(), 3u) << csv;
  EXPECT_EQ(lines[0],
            "n,m,mode,qubits,gu_count,gathering_layers,block_depth,"
            "sequential_depth,cost_gates,cost_depth,method,fidelity,"
            "probability,wall_seconds");
  for (std::size_t row = 1; row < lines.size(); ++row) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (start <= lines[row].size()) {
      const std::size_t comma = lines[row].find(',', start);
      fields.push_back(lines[row].substr(start, comma - start));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    ASSERT_EQ(fields.size(), 14u) << lines[row];
    EXPECT_EQ(fields[0], "1");
    EXPECT_EQ(fields[2], "lcu");
    EXPECT_GT(std::stod(fields[11]), 0.9) << "fidelity column";
  }
}

TEST(CliDecodeTest, TableAndSingleOutcomeAgree) {
  const std::string problem = write_problem_file("cli_dec.json", 1, 4, 40);
  const std::string table_path = temp_path("cli_dec_table.json");
  const RunResult tabled = run_cli("decode --problem " + problem +
                                   " --mode lcu --table 6 --out " + table_path);
  ASSERT_EQ(tabled.exit_code, 0) << tabled.output;

  const Json table = load_json(table_path);
  ASSERT_TRUE(table.at("available").get<bool>());
  const Json& entries = table.at("entries");
  ASSERT_GE(entries.size(), 2u);

  // Find a decodable outcome that actually inserts an operator, and ask the
  // binary to decode that single outcome.
  std::string bits;
  for (const Json& entry : entries) {
    if (!entry.at("insertions").empty()) {
      bits = entry.at("bits").get<std::string>();
      break;
    }
  }
  ASSERT_FALSE(bits.empty());
  const RunResult decoded = run_cli("decode --problem " + problem +
                                    " --mode lcu --outcome " + bits);
  ASSERT_EQ(decoded.exit_code, 0) << decoded.output;
  const Json j = Json::parse(decoded.output);
  EXPECT_FALSE(j.at("kept").get<bool>());
  EXPECT_TRUE(j.at("decodable").get<bool>());
  ASSERT_GE(j.at("insertions").size(), 1u);
  EXPECT_TRUE(j.contains("correctable"));
}

}  // namespace
}  // namespace dql
