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

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "pathspeed/cli/commands.hpp"
#include "pathspeed/cli/config.hpp"
#include "pathspeed/cli/json_io.hpp"

namespace pathspeed::cli {
namespace {

namespace fs = std::filesystem;

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("pathspeed_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

int run_quiet(const RunConfig& c) {
  std::ostringstream out, err;
  return run(c, out, err);
}

TEST(Config, BundledDefaults) {
  const RunConfig c = parse_config(R"({"n": 50})");
  EXPECT_EQ(c.model_name, "murray-3dof");
  EXPECT_EQ(c.n, 50u);
  EXPECT_EQ(c.waypoints.rows(), 5);
  EXPECT_EQ(c.mode, Mode::kSolve);
  EXPECT_DOUBLE_EQ(c.model.torque_limit.at(0.0)(2), 9.0);
}

TEST(Config, ShippedConfigLoads) {
  const RunConfig c = load_config(PATHSPEED_CONFIG_DIR "/murray-3dof.json");
  EXPECT_EQ(c.n, 1000u);
  EXPECT_EQ(c.benchmark.sizes.size(), 2u);
}

TEST(Config, PlanarExampleSolves) {
  RunConfig c = load_config(PATHSPEED_CONFIG_DIR "/planar-2dof-line.json");
  EXPECT_EQ(c.model.dof, 2u);
  EXPECT_EQ(c.model_name, "planar-2dof");
  c.output = scratch("planar").string();
  EXPECT_EQ(run_quiet(c), kExitOk);
  c.mode = Mode::kOracleCheck;
  EXPECT_EQ(run_quiet(c), kExitOk);
}

TEST(Config, SyntaxErrorReportsLine) {
  try {
    parse_config("{\n  \"n\": 10,\n  \"dt\": ,\n}");
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.where().rfind("line 3,", 0), 0u) << e.where();
  }
}

TEST(Config, SemanticErrorsReportPointer) {
  const auto where = [](const std::string& text) {
    try {
      parse_config(text);
    } catch (const ConfigError& e) {
      return e.where();
    }
    return std::string("none");
  };
  EXPECT_EQ(where(R"({"n": 1})"), "/n");
  EXPECT_EQ(where(R"({"bounds": {"torque": [1, 2]}})"), "/bounds/torque");
  EXPECT_EQ(where(R"({"bounds": {"torque": -1}})"), "/bounds/torque");
  EXPECT_EQ(where(R"({"mode": "fly"})"), "/mode");
  EXPECT_EQ(where(R"({"colour": 1})"), "/colour");
  EXPECT_EQ(where(R"({"model": "puma"})"), "/model");
  EXPECT_EQ(where(R"({"waypoints": [[0, 0], [1, 1]]})"), "/waypoints");
  EXPECT_EQ(where(R"({"benchmark": {"repetitions": 5}})"), "/benchmark/repetitions");
  EXPECT_EQ(where(R"({"model": {"mass_matrix": [[1]], "gravity": [0]}})"), "/bounds");
}

TEST(Config, ConstantInertiaModel) {
  const RunConfig c = parse_config(R"({
    "model": {"mass_matrix": [[2, 0], [0, 1]], "gravity": [0, 0.5]},
    "waypoints": [[0, 0], [1, 2]],
    "bounds": {"velocity": 1, "acceleration": [1, 2],
               "torque": {"positions": [0, 10], "values": [[3, 3], [4, 4]]}}
  })");
  EXPECT_EQ(c.model.dof, 2u);
  EXPECT_DOUBLE_EQ(c.model.acceleration_limit.at(0.0)(1), 2.0);
  EXPECT_DOUBLE_EQ(c.model.torque_limit.at(5.0)(0), 3.5);
}

TEST(Config, ElbowParametersRoundTrip) {
  ElbowParameters p = murray_3dof_parameters();
  p.mass[2] = 0.75;
  const nlohmann::json j = p;
  EXPECT_EQ(j.at("mass")[2].get<double>(), 0.75);
  EXPECT_EQ(j.get<ElbowParameters>(), p);

  nlohmann::json config = {{"model", {{"name", "light"}, {"parameters", j}}},
                           {"waypoints", {{0.0, 0.0, 0.0}, {0.5, -0.3, 0.8}}},
                           {"bounds", {{"velocity", 2}, {"acceleration", 1.5}, {"torque", 9}}}};
  const RunConfig c = parse_config(config.dump());
  EXPECT_EQ(c.model_name, "light");
  EXPECT_EQ(c.model.dof, 3u);
}

TEST(Solve, WritesDeterministicFiles) {
  RunConfig c = default_config();
  c.n = 120;
  c.dt = 1e-3;
  c.audit_grid = 500;
  c.output = scratch("det_a").string();
  ASSERT_EQ(run_quiet(c), kExitOk);
  const fs::path a = c.output;
  c.output = scratch("det_b").string();
  ASSERT_EQ(run_quiet(c), kExitOk);
  const fs::path b = c.output;
  for (const char* f : {"profile.csv", "trajectory.csv", "summary.json"}) {
    EXPECT_EQ(read_file(a / f), read_file(b / f)) << f;
  }
  std::istringstream profile(read_file(a / "profile.csv"));
  std::string header, first, line, last;
  std::getline(profile, header);
  std::getline(profile, first);
  while (std::getline(profile, line)) last = line;
  EXPECT_EQ(header, "s,b,v,a,tau1,tau2,tau3");
  EXPECT_EQ(first.substr(0, 4), "0,0,");
  EXPECT_EQ(last.substr(last.find(',') + 1, 2), "0,");

  const auto summary = nlohmann::json::parse(read_file(a / "summary.json"));
  EXPECT_TRUE(summary["travel_time"].is_number());
  EXPECT_GT(summary["travel_time"].get<double>(), 0.0);
}

TEST(Solve, TwoSamplesIsDegenerate) {
  RunConfig c = default_config();
  c.n = 2;
  c.output = scratch("two").string();
  SolveReport r;
  ASSERT_NO_THROW(r = run_solve(c));
  EXPECT_TRUE(std::isinf(r.travel_time));
  EXPECT_FALSE(r.trajectory_duration.has_value());
  const auto summary = nlohmann::json::parse(read_file(fs::path(c.output) / "summary.json"));
  EXPECT_TRUE(summary["travel_time"].is_null());
  EXPECT_EQ(run_quiet(c), kExitOk);
}

TEST(Solve, StraightLineFlatTop) {
  // One joint, unit inertia, no gravity, generous torque: the profile is
  // the trapezoid b(s) = min(2 alpha s, psi^2, 2 alpha (L - s)).
  RunConfig c = parse_config(R"({
    "model": {"mass_matrix": [[1]], "gravity": [0]},
    "waypoints": [[0], [3]],
    "bounds": {"velocity": 1.0, "acceleration": 0.5, "torque": 1e6},
    "n": 301, "dt": 1e-3, "audit_grid": 1000
  })");
  c.output = scratch("flat").string();
  const PathSpline path = PathSpline::build(c.waypoints);
  const DiscretizedProblem p = discretize(c.model, path, c.n);
  const std::vector<double> b = solve_chain(p.chain).v;
  double top = 0.0;
  for (std::size_t i = 0; i < b.size(); ++i) {
    const double s = p.samples.s[i];
    EXPECT_NEAR(b[i], std::min({s, 1.0, 3.0 - s}), 1e-12) << i;
    top = std::max(top, b[i]);
  }
  EXPECT_EQ(top, 1.0);
  EXPECT_EQ(run_quiet(c), kExitOk);
}

TEST(Check, Sources) {
  RunConfig c = default_config();
  c.check.source = CheckSource::kExample;
  EXPECT_TRUE(run_oracle_check(c).passed);
  c.check.source = CheckSource::kRandom;
  c.check.trials = 100;
  const CheckReport r = run_oracle_check(c);
  EXPECT_TRUE(r.passed);
  EXPECT_EQ(r.instances, 100u);
  c.check.source = CheckSource::kConfig;
  c.n = 200;
  EXPECT_TRUE(run_oracle_check(c).passed);
}

TEST(ExitCodes, FromRun) {
  RunConfig c = default_config();
  c.n = 50;
  c.output = scratch("codes").string();
  c.model.torque_limit = BoundProfile(Eigen::Vector3d(5.0, 5.0, 5.0));
  EXPECT_EQ(run_quiet(c), kExitAssumptionViolated);

  c = default_config();
  c.mode = Mode::kOracleCheck;
  c.check.source = CheckSource::kConfig;
  c.n = 100;
  c.check.tolerance = 1e-300;
  EXPECT_EQ(run_quiet(c), kExitOracleFailure);

  c = default_config();
  c.waypoints.row(1) = c.waypoints.row(0);
  EXPECT_EQ(run_quiet(c), kExitConfigError);
}

int run_binary(const std::string& args) {
  const std::string cmd = std::string(PATHSPEED_CLI_PATH) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

TEST(ExitCodes, FromBinary) {
  const fs::path dir = scratch("binary");
  std::ofstream(dir / "bad.json") << "{ \"n\": 10,\n \"mode\": }";
  std::ofstream(dir / "weak.json")
      << R"({"n": 50, "bounds": {"torque": 5}, "output": ")" << (dir / "weak").string() << "\"}";
  std::ofstream(dir / "ok.json")
      << R"({"n": 50, "dt": 1e-3, "audit_grid": 200, "output": ")" << (dir / "ok").string() << "\"}";
  EXPECT_EQ(run_binary("solve --config " + (dir / "bad.json").string()), 2);
  EXPECT_EQ(run_binary("solve --config " + (dir / "weak.json").string()), 3);
  EXPECT_EQ(run_binary("solve --config " + (dir / "ok.json").string()), 0);
  EXPECT_TRUE(fs::exists(dir / "ok" / "profile.csv"));
  EXPECT_EQ(run_binary("check --source example"), 0);
  EXPECT_EQ(run_binary("check --trials 20 --seed 4"), 0);
  EXPECT_NE(run_binary("solve"), 0);
}

TEST(Format, SeventeenDigits) {
  EXPECT_EQ(format_number(0.1), "0.10000000000000001");
  EXPECT_EQ(format_number(2.0), "2");
  EXPECT_EQ(format_number(INFINITY), "inf");
}

}  // namespace
}  // namespace pathspeed::cli
