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
// Runtime configuration: tolerances, capacity caps and budgets, loadable
// from simple `key = value` files (# starts a comment).

#ifndef DQL_CONFIG_HPP_
#define DQL_CONFIG_HPP_

#include <cstddef>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace dql {

struct Config {
  double tol_exact = 1e-12;     // closed-form algebraic identities
  double tol_sim = 1e-9;        // circuit-level state comparisons
  double tol_unitary = 1e-10;   // unitarity of synthesized operators
  double tol_load = 1e-8;       // unitarity of operators loaded from files
  double fidelity_tol = 1e-9;   // exact-mode end-to-end verification
  double fidelity_tol_lcu = 1e-8;  // LCU-mode end-to-end verification
  int sim_cap = 22;             // state-vector qubit budget
  int unitary_cap = 12;         // dense circuit-unitary qubit budget
  std::size_t outcome_budget = 256;  // decoding table entries per plan file

  double fidelity_tolerance_for(bool lcu) const {
    return lcu ? fidelity_tol_lcu : fidelity_tol;
  }
};

namespace detail {
inline std::string trim(const std::string& s) {
  const std::size_t begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return "";
  const std::size_t end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}
}  // namespace detail

inline void apply_config_line(Config& config, const std::string& key,
                              const std::string& value) {
  auto as_double = [&]() {
    std::size_t used = 0;
    const double parsed = std::stod(value, &used);
    if (detail::trim(value.substr(used)).size()) {
      throw std::invalid_argument("bad numeric value '" + value + "' for '" +
                                  key + "'");
    }
    return parsed;
  };
  auto as_int = [&]() { return static_cast<int>(as_double()); };
  if (key == "tol_exact") config.tol_exact = as_double();
  else if (key == "tol_sim") config.tol_sim = as_double();
  else if (key == "tol_unitary") config.tol_unitary = as_double();
  else if (key == "tol_load") config.tol_load = as_double();
  else if (key == "fidelity_tol") config.fidelity_tol = as_double();
  else if (key == "fidelity_tol_lcu") config.fidelity_tol_lcu = as_double();
  else if (key == "sim_cap") config.sim_cap = as_int();
  else if (key == "unitary_cap") config.unitary_cap = as_int();
  else if (key == "outcome_budget")
    config.outcome_budget = static_cast<std::size_t>(as_int());
  else
    throw std::invalid_argument("unknown config key '" + key + "'");
}

inline Config parse_config(std::istream& in) {
  Config config;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = detail::trim(line);
    if (line.empty()) continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("config line " + std::to_string(line_no) +
                                  " is not of the form key = value");
    }
    apply_config_line(config, detail::trim(line.substr(0, eq)),
                      detail::trim(line.substr(eq + 1)));
  }
  return config;
}

inline Config load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open config file '" + path + "'");
  }
  return parse_config(in);
}

}  // namespace dql

#endif  // DQL_CONFIG_HPP_
