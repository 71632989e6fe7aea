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

#ifndef PATHSPEED_CLI_CONFIG_HPP_
#define PATHSPEED_CLI_CONFIG_HPP_

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "pathspeed/error.hpp"
#include "pathspeed/robot.hpp"

namespace pathspeed::cli {

// Malformed or inconsistent configuration. `where` is "line L, column C"
// for syntax errors and a JSON pointer such as "/bounds/torque" otherwise.
class ConfigError : public Error {
 public:
  ConfigError(const std::string& where, const std::string& what)
      : Error("config error at " + where + ": " + what), where_(where) {}
  const std::string& where() const { return where_; }

 private:
  std::string where_;
};

enum class Mode { kSolve, kBenchmark, kOracleCheck };

enum class CheckSource {
  kConfig,   // the discretized problem described by the config
  kRandom,   // random linear chains
  kExample,  // the two-node reference instance
};

struct BenchmarkSettings {
  std::vector<std::size_t> sizes;  // empty: just RunConfig::n
  std::size_t repetitions = 20;
  // The propagation oracle is slow; it is timed with fewer repetitions and
  // skipped above oracle_max_n.
  std::size_t oracle_repetitions = 3;
  std::size_t oracle_max_n = 2000;
  bool include_discretization = false;
};

struct CheckSettings {
  CheckSource source = CheckSource::kConfig;
  std::size_t trials = 1000;
  std::uint64_t seed = 1;
  std::size_t max_n = 50;
  double tolerance = 1e-8;
};

struct RunConfig {
  std::string model_name;
  RobotModel model;
  Eigen::MatrixXd waypoints;  // m x p
  std::size_t n = 1000;
  Mode mode = Mode::kSolve;
  double dt = 1e-4;
  std::string output = "pathspeed-out";
  std::size_t audit_grid = 20000;
  BenchmarkSettings benchmark;
  CheckSettings check;
};

// Waypoints of the bundled test path (five joint-space points).
Eigen::MatrixXd bundled_waypoints();

// A config with the bundled model and path and default settings.
RunConfig default_config();

RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);

Mode parse_mode(const std::string& name);
const char* mode_name(Mode mode);

}  // namespace pathspeed::cli

#endif  // PATHSPEED_CLI_CONFIG_HPP_
