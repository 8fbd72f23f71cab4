// Copyright 2026 The qcoex Authors
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
// Subcommand implementations for the qcoex CLI. Each command writes
// deterministic report files (no timestamps) into the output directory;
// every report embeds the resolved config hash.

#ifndef QCOEX_COMMANDS_HPP_
#define QCOEX_COMMANDS_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "qcoex/config.hpp"
#include "qcoex/rates.hpp"

namespace qcoex::cli {

struct Options {
  std::string out_dir = ".";
  uint64_t seed = 1;
  std::string format = "csv";  // csv: tabular files as CSV plus JSON report
                               // json: JSON report only

  void validate() const;
};

// Shared composition: end-to-end arm loss and detector-input noise for one
// quantum channel over a routed path.
rates::ArmConfig build_arm(const cfg::RunConfig& config,
                           const cfg::ArmChannel& arm,
                           const net::ArmPath& path);

// Each command returns the list of files it wrote.
std::vector<std::string> cmd_spectrum(const cfg::RunConfig& config,
                                      const Options& options);
std::vector<std::string> cmd_rates(const cfg::RunConfig& config,
                                   const Options& options);
std::vector<std::string> cmd_sweep(const cfg::RunConfig& config,
                                   const Options& options);
std::vector<std::string> cmd_plan(const cfg::RunConfig& config,
                                  const Options& options);
std::vector<std::string> cmd_tomo(const cfg::RunConfig& config,
                                  const Options& options);
std::vector<std::string> cmd_mc(const cfg::RunConfig& config,
                                const Options& options);

// Full argv dispatch; returns the process exit code (0 ok, 2 config,
// 3 domain, 4 infeasible, 5 non-convergence).
int run_cli(int argc, char** argv);

}  // namespace qcoex::cli

#endif  // QCOEX_COMMANDS_HPP_
