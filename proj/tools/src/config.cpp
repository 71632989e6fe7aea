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

#include "pathspeed/cli/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "pathspeed/cli/json_io.hpp"

namespace pathspeed {

void to_json(nlohmann::json& j, const ElbowParameters& p) {
  j = nlohmann::json{{"inertia", p.inertia},
                     {"mass", p.mass},
                     {"length", p.length},
                     {"center_of_mass", p.center_of_mass},
                     {"gravity", p.gravity}};
}

void from_json(const nlohmann::json& j, ElbowParameters& p) {
  j.at("inertia").get_to(p.inertia);
  j.at("mass").get_to(p.mass);
  j.at("length").get_to(p.length);
  j.at("center_of_mass").get_to(p.center_of_mass);
  p.gravity = j.value("gravity", 9.81);
}

}  // namespace pathspeed

namespace pathspeed::cli {
namespace {

using nlohmann::json;

const std::set<std::string>& known_keys() {
  static const std::set<std::string> keys = {
      "model", "waypoints", "bounds", "n", "mode", "dt", "output",
      "audit_grid", "benchmark", "check"};
  return keys;
}

// Syntax errors carry a byte offset; turn it into line and column.
std::string locate(const std::string& text, std::size_t byte) {
  std::size_t line = 1;
  std::size_t column = 1;
  for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(column);
}

double positive_number(const json& j, const std::string& where) {
  if (!j.is_number()) throw ConfigError(where, "expected a number");
  const double v = j.get<double>();
  if (!(v > 0.0)) throw ConfigError(where, "must be positive");
  return v;
}

std::size_t count(const json& j, const std::string& where, std::size_t min) {
  if (!j.is_number_integer() || j.get<long long>() < static_cast<long long>(min)) {
    throw ConfigError(where, "expected an integer >= " + std::to_string(min));
  }
  return j.get<std::size_t>();
}

Eigen::VectorXd vector_of(const json& j, std::size_t p, const std::string& where) {
  if (j.is_number()) {
    return Eigen::VectorXd::Constant(static_cast<Eigen::Index>(p),
                                     positive_number(j, where));
  }
  if (!j.is_array() || j.size() != p) {
    throw ConfigError(where, "expected a number or an array of " +
                                 std::to_string(p) + " numbers");
  }
  Eigen::VectorXd v(static_cast<Eigen::Index>(p));
  for (std::size_t k = 0; k < p; ++k) {
    v(static_cast<Eigen::Index>(k)) =
        positive_number(j[k], where + "/" + std::to_string(k));
  }
  return v;
}

Eigen::MatrixXd matrix_of(const json& j, const std::string& where) {
  if (!j.is_array() || j.empty() || !j[0].is_array() || j[0].empty()) {
    throw ConfigError(where, "expected a non-empty array of rows");
  }
  const std::size_t cols = j[0].size();
  Eigen::MatrixXd m(static_cast<Eigen::Index>(j.size()),
                    static_cast<Eigen::Index>(cols));
  for (std::size_t r = 0; r < j.size(); ++r) {
    const std::string row = where + "/" + std::to_string(r);
    if (!j[r].is_array() || j[r].size() != cols) {
      throw ConfigError(row, "expected " + std::to_string(cols) + " entries");
    }
    for (std::size_t c = 0; c < cols; ++c) {
      if (!j[r][c].is_number()) {
        throw ConfigError(row + "/" + std::to_string(c), "expected a number");
      }
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          j[r][c].get<double>();
    }
  }
  return m;
}

// Number, p-array, or {"positions": [...], "values": [[p numbers], ...]}.
BoundProfile bound_of(const json& j, std::size_t p, const std::string& where) {
  if (!j.is_object()) return BoundProfile(vector_of(j, p, where));
  if (!j.contains("positions") || !j.contains("values")) {
    throw ConfigError(where, "a bound table needs 'positions' and 'values'");
  }
  const json& pos = j["positions"];
  if (!pos.is_array() || pos.empty()) {
    throw ConfigError(where + "/positions", "expected a non-empty array");
  }
  std::vector<double> positions;
  for (std::size_t k = 0; k < pos.size(); ++k) {
    if (!pos[k].is_number()) {
      throw ConfigError(where + "/positions/" + std::to_string(k),
                        "expected a number");
    }
    positions.push_back(pos[k].get<double>());
  }
  const json& vals = j["values"];
  if (!vals.is_array() || vals.size() != positions.size()) {
    throw ConfigError(where + "/values", "expected one entry per position");
  }
  Eigen::MatrixXd values(static_cast<Eigen::Index>(p),
                         static_cast<Eigen::Index>(positions.size()));
  for (std::size_t k = 0; k < positions.size(); ++k) {
    values.col(static_cast<Eigen::Index>(k)) =
        vector_of(vals[k], p, where + "/values/" + std::to_string(k));
  }
  try {
    return BoundProfile(std::move(positions), std::move(values));
  } catch (const InvalidInput& e) {
    throw ConfigError(where, e.what());
  }
}

struct Bounds {
  BoundProfile velocity, acceleration, torque;
};

Bounds bounds_of(const json& root, std::size_t p, const Bounds* defaults) {
  if (!root.contains("bounds")) {
    if (defaults == nullptr) throw ConfigError("/bounds", "missing");
    return *defaults;
  }
  const json& b = root["bounds"];
  if (!b.is_object()) throw ConfigError("/bounds", "expected an object");
  for (const auto& [key, value] : b.items()) {
    if (key != "velocity" && key != "acceleration" && key != "torque") {
      throw ConfigError("/bounds/" + key, "unknown key");
    }
  }
  Bounds out;
  const auto pick = [&](const char* key, const BoundProfile* fallback) {
    if (b.contains(key)) return bound_of(b[key], p, std::string("/bounds/") + key);
    if (fallback == nullptr) throw ConfigError(std::string("/bounds/") + key, "missing");
    return *fallback;
  };
  out.velocity = pick("velocity", defaults ? &defaults->velocity : nullptr);
  out.acceleration = pick("acceleration", defaults ? &defaults->acceleration : nullptr);
  out.torque = pick("torque", defaults ? &defaults->torque : nullptr);
  return out;
}

void parse_model(const json& root, RunConfig& config) {
  const json model = root.value("model", json("murray-3dof"));
  if (model.is_string()) {
    const std::string name = model.get<std::string>();
    if (name != "murray-3dof") {
      throw ConfigError("/model", "unknown model '" + name + "'");
    }
    const RobotModel bundled = bundled_3dof_model();
    const Bounds defaults{bundled.velocity_limit, bundled.acceleration_limit,
                          bundled.torque_limit};
    const Bounds b = bounds_of(root, 3, &defaults);
    config.model = elbow_model(murray_3dof_parameters(), b.velocity,
                               b.acceleration, b.torque);
    config.model.name = name;
    config.model_name = name;
    return;
  }
  if (!model.is_object()) {
    throw ConfigError("/model", "expected a model name or an object");
  }
  if (model.contains("parameters")) {
    ElbowParameters params;
    try {
      model["parameters"].get_to(params);
    } catch (const json::exception& e) {
      throw ConfigError("/model/parameters", e.what());
    }
    const Bounds b = bounds_of(root, 3, nullptr);
    config.model = elbow_model(params, b.velocity, b.acceleration, b.torque);
    config.model_name = model.value("name", std::string("elbow-3dof"));
    config.model.name = config.model_name;
    return;
  }
  if (model.contains("mass_matrix")) {
    const Eigen::MatrixXd mass = matrix_of(model["mass_matrix"], "/model/mass_matrix");
    if (mass.rows() != mass.cols()) {
      throw ConfigError("/model/mass_matrix", "must be square");
    }
    const auto p = static_cast<std::size_t>(mass.rows());
    if (!model.contains("gravity")) throw ConfigError("/model/gravity", "missing");
    const json& g = model["gravity"];
    if (!g.is_array() || g.size() != p) {
      throw ConfigError("/model/gravity", "expected " + std::to_string(p) + " numbers");
    }
    Eigen::VectorXd force(static_cast<Eigen::Index>(p));
    for (std::size_t k = 0; k < p; ++k) {
      if (!g[k].is_number()) {
        throw ConfigError("/model/gravity/" + std::to_string(k), "expected a number");
      }
      force(static_cast<Eigen::Index>(k)) = g[k].get<double>();
    }
    const Bounds b = bounds_of(root, p, nullptr);
    config.model = constant_inertia_model(mass, force, b.velocity, b.acceleration,
                                          b.torque);
    config.model_name = model.value("name", std::string("constant-inertia"));
    config.model.name = config.model_name;
    return;
  }
  throw ConfigError("/model", "expected 'parameters' or 'mass_matrix'");
}

void parse_benchmark(const json& j, BenchmarkSettings& out) {
  if (!j.is_object()) throw ConfigError("/benchmark", "expected an object");
  if (j.contains("sizes")) {
    const json& sizes = j["sizes"];
    if (!sizes.is_array() || sizes.empty()) {
      throw ConfigError("/benchmark/sizes", "expected a non-empty array");
    }
    out.sizes.clear();
    for (std::size_t k = 0; k < sizes.size(); ++k) {
      out.sizes.push_back(count(sizes[k], "/benchmark/sizes/" + std::to_string(k), 2));
    }
  }
  if (j.contains("repetitions")) {
    out.repetitions = count(j["repetitions"], "/benchmark/repetitions", 20);
  }
  if (j.contains("oracle_repetitions")) {
    out.oracle_repetitions =
        count(j["oracle_repetitions"], "/benchmark/oracle_repetitions", 0);
  }
  if (j.contains("oracle_max_n")) {
    out.oracle_max_n = count(j["oracle_max_n"], "/benchmark/oracle_max_n", 0);
  }
  if (j.contains("include_discretization")) {
    if (!j["include_discretization"].is_boolean()) {
      throw ConfigError("/benchmark/include_discretization", "expected a boolean");
    }
    out.include_discretization = j["include_discretization"].get<bool>();
  }
}

void parse_check(const json& j, CheckSettings& out) {
  if (!j.is_object()) throw ConfigError("/check", "expected an object");
  if (j.contains("source")) {
    const std::string s = j["source"].is_string() ? j["source"].get<std::string>() : "";
    if (s == "config") {
      out.source = CheckSource::kConfig;
    } else if (s == "random") {
      out.source = CheckSource::kRandom;
    } else if (s == "example") {
      out.source = CheckSource::kExample;
    } else {
      throw ConfigError("/check/source", "expected 'config', 'random' or 'example'");
    }
  }
  if (j.contains("trials")) out.trials = count(j["trials"], "/check/trials", 1);
  if (j.contains("seed")) out.seed = count(j["seed"], "/check/seed", 0);
  if (j.contains("max_n")) out.max_n = count(j["max_n"], "/check/max_n", 2);
  if (j.contains("tolerance")) {
    out.tolerance = positive_number(j["tolerance"], "/check/tolerance");
  }
}

}  // namespace

Eigen::MatrixXd bundled_waypoints() {
  Eigen::MatrixXd w(5, 3);
  w << 0.0, 0.0, 0.0,
       1.288, -0.2864, -0.2982,
       2.59, -0.03045, -0.5995,
       4.374, -0.04647, -0.582,
       5.334, -0.1657, -0.4504;
  return w;
}

RunConfig default_config() {
  RunConfig config;
  config.model = bundled_3dof_model();
  config.model_name = config.model.name;
  config.waypoints = bundled_waypoints();
  return config;
}

Mode parse_mode(const std::string& name) {
  if (name == "solve") return Mode::kSolve;
  if (name == "benchmark" || name == "bench") return Mode::kBenchmark;
  if (name == "oracle-check" || name == "check") return Mode::kOracleCheck;
  throw ConfigError("/mode", "expected 'solve', 'benchmark' or 'oracle-check'");
}

const char* mode_name(Mode mode) {
  switch (mode) {
    case Mode::kSolve: return "solve";
    case Mode::kBenchmark: return "benchmark";
    case Mode::kOracleCheck: return "oracle-check";
  }
  return "?";
}

RunConfig parse_config(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(locate(text, e.byte), e.what());
  }
  if (!root.is_object()) throw ConfigError("/", "expected an object");
  for (const auto& [key, value] : root.items()) {
    if (!known_keys().count(key)) throw ConfigError("/" + key, "unknown key");
  }

  RunConfig config = default_config();
  parse_model(root, config);

  if (root.contains("waypoints")) {
    config.waypoints = matrix_of(root["waypoints"], "/waypoints");
  } else if (config.model_name != "murray-3dof") {
    throw ConfigError("/waypoints", "missing");
  }
  if (static_cast<std::size_t>(config.waypoints.cols()) != config.model.dof) {
    throw ConfigError("/waypoints", "rows need " + std::to_string(config.model.dof) +
                                        " joint values");
  }
  if (config.waypoints.rows() < 2) {
    throw ConfigError("/waypoints", "at least two waypoints are required");
  }
  if (root.contains("n")) config.n = count(root["n"], "/n", 2);
  if (root.contains("mode")) {
    if (!root["mode"].is_string()) throw ConfigError("/mode", "expected a string");
    config.mode = parse_mode(root["mode"].get<std::string>());
  }
  if (root.contains("dt")) config.dt = positive_number(root["dt"], "/dt");
  if (root.contains("output")) {
    if (!root["output"].is_string()) throw ConfigError("/output", "expected a string");
    config.output = root["output"].get<std::string>();
  }
  if (root.contains("audit_grid")) {
    config.audit_grid = count(root["audit_grid"], "/audit_grid", 2);
  }
  if (root.contains("benchmark")) parse_benchmark(root["benchmark"], config.benchmark);
  if (root.contains("check")) parse_check(root["check"], config.check);
  return config;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path, "cannot open file");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str());
}

}  // namespace pathspeed::cli
