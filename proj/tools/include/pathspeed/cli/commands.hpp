// Copyright 2026 The pathspeed Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PATHSPEED_CLI_COMMANDS_HPP_
#define PATHSPEED_CLI_COMMANDS_HPP_

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "pathspeed/chain.hpp"
#include "pathspeed/cli/config.hpp"
#include "pathspeed/profile.hpp"

namespace pathspeed::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitFailure = 1,
  kExitConfigError = 2,
  kExitAssumptionViolated = 3,
  kExitOracleFailure = 4,
};

// Worker threads for parallel sections: PATHSPEED_THREADS when set to a
// positive integer, otherwise the hardware concurrency.
std::size_t worker_count();

// 17 significant digits; "inf", "-inf" or "nan" for non-finite values.
std::string format_number(double v);

struct SolveReport {
  std::size_t n = 0;
  double length = 0.0;
  double travel_time = 0.0;
  std::optional<double> trajectory_duration;  // empty when the profile stalls
  std::size_t constraint_count = 0;
  ChainStats stats;
  FeasibilityReport audit;
  double discretize_ms = 0.0;
  double solve_ms = 0.0;
  std::vector<std::string> files;
};

// Discretizes, solves with the linear subproblem solver, lifts and
// time-parametrizes the profile. Writes profile.csv, trajectory.csv and
// summary.json (deterministic) plus timing.json into config.output.
SolveReport run_solve(const RunConfig& config);

struct BenchmarkRow {
  std::size_t n = 0;
  std::size_t constraints = 0;
  double solve_median_ms = 0.0;
  double solve_min_ms = 0.0;
  std::optional<double> oracle_median_ms;
};

// Median over config.benchmark.repetitions solves at every size. Writes
// bench.csv into config.output.
std::vector<BenchmarkRow> run_benchmark(const RunConfig& config);

struct CheckReport {
  std::size_t instances = 0;
  double linear_vs_general = 0.0;
  double linear_vs_propagation = 0.0;
  double general_vs_propagation = 0.0;
  std::size_t worst_instance = 0;
  std::size_t unconverged = 0;
  bool passed = false;

  double max_deviation() const;
};

// Solves every instance with the linear and the general subproblem solver
// and with bound propagation, and compares the three (max-norm).
CheckReport run_oracle_check(const RunConfig& config);

// Single-instance comparison used by run_oracle_check.
CheckReport compare_methods(const ChainProblem& problem);

void print(std::ostream& os, const SolveReport& report);
void print(std::ostream& os, const std::vector<BenchmarkRow>& rows);
void print(std::ostream& os, const CheckReport& report);

// Dispatches on config.mode and maps errors to exit codes; messages go to
// `err`, summaries to `out`.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace pathspeed::cli

#endif  // PATHSPEED_CLI_COMMANDS_HPP_
