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

#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "pathspeed/cli/commands.hpp"
#include "pathspeed/cli/config.hpp"

namespace {

struct Overrides {
  std::string config;
  std::size_t n = 0;
  std::string out;
};

}  // namespace

int main(int argc, char** argv) {
  using namespace pathspeed::cli;

  CLI::App app{"Time-optimal speed profiles along a fixed joint-space path"};
  app.require_subcommand(1);

  Overrides solve_opts, bench_opts, check_opts;
  const auto common = [](CLI::App* cmd, Overrides& o, bool config_required) {
    auto* config = cmd->add_option("--config", o.config, "JSON run configuration");
    if (config_required) config->required();
    config->check(CLI::ExistingFile);
    cmd->add_option("--n", o.n, "number of path samples")->check(CLI::Range(2, 1 << 30));
    cmd->add_option("--out", o.out, "output directory");
  };

  CLI::App* solve = app.add_subcommand("solve", "solve and write profile, trajectory and summary");
  common(solve, solve_opts, true);

  CLI::App* bench = app.add_subcommand("bench", "time the solver at one or more sizes");
  common(bench, bench_opts, true);
  std::vector<std::size_t> sizes;
  bool include_discretization = false;
  bench->add_option("--sizes", sizes, "sample counts to time")->check(CLI::Range(2, 1 << 30));
  bench->add_flag("--include-discretization", include_discretization,
                  "time discretization together with the solve");

  CLI::App* check = app.add_subcommand(
      "check", "compare both subproblem solvers with bound propagation");
  common(check, check_opts, false);
  std::string source;
  std::size_t trials = 0;
  std::uint64_t seed = 0;
  bool seed_given = false;
  check->add_option("--source", source, "config, random or example")
      ->check(CLI::IsMember({"config", "random", "example"}));
  check->add_option("--trials", trials, "random instances")->check(CLI::PositiveNumber);
  check->add_option("--seed", seed, "seed of the random instances")
      ->each([&](const std::string&) { seed_given = true; });

  CLI11_PARSE(app, argc, argv);

  Overrides* o = solve->parsed() ? &solve_opts : bench->parsed() ? &bench_opts : &check_opts;
  RunConfig config;
  try {
    config = o->config.empty() ? default_config() : load_config(o->config);
  } catch (const ConfigError& e) {
    std::cerr << e.what() << '\n';
    return kExitConfigError;
  }
  if (o->n != 0) config.n = o->n;
  if (!o->out.empty()) config.output = o->out;

  if (solve->parsed()) {
    config.mode = Mode::kSolve;
  } else if (bench->parsed()) {
    config.mode = Mode::kBenchmark;
    if (!sizes.empty()) config.benchmark.sizes = sizes;
    if (include_discretization) config.benchmark.include_discretization = true;
  } else {
    config.mode = Mode::kOracleCheck;
    if (o->config.empty()) config.check.source = CheckSource::kRandom;
    if (source == "config") config.check.source = CheckSource::kConfig;
    if (source == "random") config.check.source = CheckSource::kRandom;
    if (source == "example") config.check.source = CheckSource::kExample;
    if (trials != 0) config.check.trials = trials;
    if (seed_given) config.check.seed = seed;
  }
  return run(config, std::cout, std::cerr);
}
