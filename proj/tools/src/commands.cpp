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

#include "pathspeed/cli/commands.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <mutex>
#include <ostream>
#include <thread>

#include <nlohmann/json.hpp>

#include "pathspeed/cli/instances.hpp"
#include "pathspeed/discretizer.hpp"
#include "pathspeed/error.hpp"
#include "pathspeed/path.hpp"

namespace pathspeed::cli {
namespace {

using Clock = std::chrono::steady_clock;
using nlohmann::json;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

double median(std::vector<double> v) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  return v.size() % 2 == 1 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

// JSON has no infinity; non-finite values become null.
json number(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

std::filesystem::path output_dir(const RunConfig& config) {
  std::filesystem::path dir(config.output);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error("cannot create output directory " + dir.string() + ": " + ec.message());
  return dir;
}

class CsvWriter {
 public:
  explicit CsvWriter(const std::filesystem::path& file) : out_(file) {
    if (!out_) throw Error("cannot write " + file.string());
  }
  void header(const std::vector<std::string>& names) {
    for (std::size_t k = 0; k < names.size(); ++k) out_ << (k ? "," : "") << names[k];
    out_ << '\n';
  }
  CsvWriter& cell(double v) {
    out_ << (first_ ? "" : ",") << format_number(v);
    first_ = false;
    return *this;
  }
  CsvWriter& cell(std::size_t v) {
    out_ << (first_ ? "" : ",") << v;
    first_ = false;
    return *this;
  }
  void end_row() {
    out_ << '\n';
    first_ = true;
  }

 private:
  std::ofstream out_;
  bool first_ = true;
};

std::vector<std::string> joint_columns(const std::string& prefix, std::size_t p) {
  std::vector<std::string> names;
  for (std::size_t j = 1; j <= p; ++j) names.push_back(prefix + std::to_string(j));
  return names;
}

void write_json(const std::filesystem::path& file, const json& j) {
  std::ofstream out(file);
  if (!out) throw Error("cannot write " + file.string());
  out << j.dump(2) << '\n';
}

json audit_json(const ViolationSummary& v) {
  return {{"torque", v.torque}, {"acceleration", v.acceleration}, {"velocity", v.velocity}};
}

template <typename F>
void parallel_for(std::size_t count, F&& body) {
  const std::size_t workers = std::min(worker_count(), std::max<std::size_t>(count, 1));
  if (workers <= 1) {
    for (std::size_t k = 0; k < count; ++k) body(k);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t k = next++; k < count; k = next++) {
        try {
          body(k);
        } catch (...) {
          std::lock_guard<std::mutex> lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (std::thread& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace

std::size_t worker_count() {
  if (const char* env = std::getenv("PATHSPEED_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, r.ptr);
}

SolveReport run_solve(const RunConfig& config) {
  SolveReport report;
  const PathSpline path = PathSpline::build(config.waypoints);
  auto start = Clock::now();
  const DiscretizedProblem problem = discretize(config.model, path, config.n);
  report.discretize_ms = ms_since(start);
  if (!problem.chain.valid()) {
    throw Error("discretized problem is invalid: " + *problem.chain.diagnostic());
  }

  ChainOptions options;
  options.method = SubproblemMethod::kLinear;
  start = Clock::now();
  ChainSolution solution = solve_chain(problem.chain, options);
  report.solve_ms = ms_since(start);

  report.n = problem.size();
  report.length = problem.samples.length;
  report.stats = solution.stats;
  report.constraint_count = problem.chain.constraint_count();

  const SpeedProfile profile = make_profile(problem, std::move(solution.v));
  report.travel_time = profile.travel_time;
  report.audit = audit_feasibility(profile, problem, config.model, path, config.audit_grid);

  const std::filesystem::path dir = output_dir(config);
  const std::size_t p = config.model.dof;
  const std::size_t n = problem.size();

  {
    // a and tau are edge quantities; node values average the adjacent edges.
    CsvWriter csv(dir / "profile.csv");
    std::vector<std::string> names{"s", "b", "v", "a"};
    for (const std::string& c : joint_columns("tau", p)) names.push_back(c);
    csv.header(names);
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t left = i == 0 ? 0 : i - 1;
      const std::size_t right = std::min(i, n - 2);
      csv.cell(problem.samples.s[i]).cell(profile.b[i]).cell(std::sqrt(profile.b[i]));
      csv.cell(0.5 * (profile.a[left] + profile.a[right]));
      for (std::size_t j = 0; j < p; ++j) {
        const auto col = static_cast<Eigen::Index>(j);
        csv.cell(0.5 * (profile.tau(static_cast<Eigen::Index>(left), col) +
                        profile.tau(static_cast<Eigen::Index>(right), col)));
      }
      csv.end_row();
    }
  }
  report.files.push_back((dir / "profile.csv").string());

  std::string stall;
  {
    CsvWriter csv(dir / "trajectory.csv");
    std::vector<std::string> names{"t", "s"};
    for (const char* prefix : {"q", "qd", "tau"}) {
      for (const std::string& c : joint_columns(prefix, p)) names.push_back(c);
    }
    csv.header(names);
    if (std::isfinite(profile.travel_time)) {
      try {
        const Trajectory traj = time_parametrize(profile, path, config.dt);
        report.trajectory_duration = traj.duration;
        for (std::size_t r = 0; r < traj.t.size(); ++r) {
          const auto row = static_cast<Eigen::Index>(r);
          csv.cell(traj.t[r]).cell(traj.s[r]);
          for (const Eigen::MatrixXd* m : {&traj.q, &traj.qd, &traj.tau}) {
            for (Eigen::Index j = 0; j < m->cols(); ++j) csv.cell((*m)(row, j));
          }
          csv.end_row();
        }
      } catch (const Stall& e) {
        stall = e.what();
      }
    } else {
      stall = "the profile has zero speed on a whole edge";
    }
  }
  report.files.push_back((dir / "trajectory.csv").string());

  json summary = {
      {"model", config.model_name},
      {"n", n},
      {"path_length", report.length},
      {"travel_time", number(report.travel_time)},
      {"trajectory_duration",
       report.trajectory_duration ? json(*report.trajectory_duration) : json(nullptr)},
      {"constraints", report.constraint_count},
      {"subproblem_iterations", report.stats.subproblem_iterations},
      {"max_subproblem_iterations", report.stats.max_subproblem_iterations},
      {"audit",
       {{"grid", audit_json(report.audit.grid)},
        {"continuous", audit_json(report.audit.continuous)},
        {"undershoot_points", report.audit.undershoot_points}}},
  };
  if (!stall.empty()) summary["trajectory_note"] = stall;
  write_json(dir / "summary.json", summary);
  write_json(dir / "timing.json",
             {{"discretize_ms", report.discretize_ms}, {"solve_ms", report.solve_ms}});
  report.files.push_back((dir / "summary.json").string());
  report.files.push_back((dir / "timing.json").string());
  return report;
}

std::vector<BenchmarkRow> run_benchmark(const RunConfig& config) {
  const BenchmarkSettings& bench = config.benchmark;
  std::vector<std::size_t> sizes = bench.sizes;
  if (sizes.empty()) sizes.push_back(config.n);
  const PathSpline path = PathSpline::build(config.waypoints);

  ChainOptions options;
  options.method = SubproblemMethod::kLinear;
  std::vector<DiscretizedProblem> problems;
  for (std::size_t n : sizes) problems.push_back(discretize(config.model, path, n));

  double sink = 0.0;
  const auto time_solve = [&](std::size_t k) {
    const std::size_t n = sizes[k];
    const auto start = Clock::now();
    if (bench.include_discretization) {
      const DiscretizedProblem fresh = discretize(config.model, path, n);
      sink += solve_chain(fresh.chain, options).v[n / 2];
    } else {
      sink += solve_chain(problems[k].chain, options).v[n / 2];
    }
    return ms_since(start);
  };
  // Warm up, then interleave the sizes so that a slow stretch of the machine
  // does not land on one size only.
  for (std::size_t k = 0; k < sizes.size(); ++k) {
    for (int w = 0; w < 3; ++w) time_solve(k);
  }
  std::vector<std::vector<double>> times(sizes.size());
  for (std::size_t r = 0; r < bench.repetitions; ++r) {
    for (std::size_t k = 0; k < sizes.size(); ++k) times[k].push_back(time_solve(k));
  }

  std::vector<BenchmarkRow> rows;
  for (std::size_t k = 0; k < sizes.size(); ++k) {
    const std::size_t n = sizes[k];
    BenchmarkRow row;
    row.n = n;
    row.constraints = problems[k].chain.constraint_count();
    row.solve_median_ms = median(times[k]);
    row.solve_min_ms = *std::min_element(times[k].begin(), times[k].end());
    if (bench.oracle_repetitions > 0 && n <= bench.oracle_max_n) {
      std::vector<double> oracle;
      for (std::size_t r = 0; r < bench.oracle_repetitions; ++r) {
        const auto start = Clock::now();
        sink += propagate_bounds(problems[k].chain).v[n / 2];
        oracle.push_back(ms_since(start));
      }
      row.oracle_median_ms = median(oracle);
    }
    rows.push_back(row);
  }
  if (!(sink >= 0.0)) throw Error("benchmark produced an invalid solution");

  CsvWriter csv(output_dir(config) / "bench.csv");
  csv.header({"n", "constraints", "solve_median_ms", "solve_min_ms", "oracle_median_ms"});
  for (const BenchmarkRow& row : rows) {
    csv.cell(row.n).cell(row.constraints).cell(row.solve_median_ms).cell(row.solve_min_ms);
    csv.cell(row.oracle_median_ms ? *row.oracle_median_ms
                                  : std::numeric_limits<double>::quiet_NaN());
    csv.end_row();
  }
  return rows;
}

double CheckReport::max_deviation() const {
  return std::max({linear_vs_general, linear_vs_propagation, general_vs_propagation});
}

CheckReport compare_methods(const ChainProblem& problem) {
  CheckReport report;
  report.instances = 1;
  ChainOptions linear;
  linear.method = SubproblemMethod::kLinear;
  ChainOptions general;
  general.method = SubproblemMethod::kGeneral;
  const ChainSolution a = solve_chain(problem, linear);
  const ChainSolution b = solve_chain(problem, general);
  const PropagationResult c = propagate_bounds(problem);
  if (a.status != ChainStatus::kSolved || b.status != ChainStatus::kSolved) {
    throw InvalidInput("instance rejected: " + a.diagnostic);
  }
  report.linear_vs_general = max_abs_diff(a.v, b.v);
  report.linear_vs_propagation = max_abs_diff(a.v, c.v);
  report.general_vs_propagation = max_abs_diff(b.v, c.v);
  report.unconverged = c.converged ? 0 : 1;
  return report;
}

CheckReport run_oracle_check(const RunConfig& config) {
  const CheckSettings& check = config.check;
  std::vector<CheckReport> results;
  switch (check.source) {
    case CheckSource::kExample:
      results.push_back(compare_methods(as_chain(worked_example())));
      break;
    case CheckSource::kConfig: {
      const PathSpline path = PathSpline::build(config.waypoints);
      results.push_back(compare_methods(discretize(config.model, path, config.n).chain));
      break;
    }
    case CheckSource::kRandom: {
      results.resize(check.trials);
      parallel_for(check.trials, [&](std::size_t k) {
        std::mt19937_64 rng = trial_rng(check.seed, k);
        std::uniform_int_distribution<std::size_t> size(2, check.max_n);
        const std::size_t n = size(rng);
        results[k] = compare_methods(random_chain(rng, n));
      });
      break;
    }
  }

  CheckReport total;
  for (std::size_t k = 0; k < results.size(); ++k) {
    const CheckReport& r = results[k];
    if (r.max_deviation() > total.max_deviation()) total.worst_instance = k;
    total.linear_vs_general = std::max(total.linear_vs_general, r.linear_vs_general);
    total.linear_vs_propagation =
        std::max(total.linear_vs_propagation, r.linear_vs_propagation);
    total.general_vs_propagation =
        std::max(total.general_vs_propagation, r.general_vs_propagation);
    total.unconverged += r.unconverged;
  }
  total.instances = results.size();
  total.passed = total.unconverged == 0 && total.max_deviation() <= check.tolerance;
  return total;
}

void print(std::ostream& os, const SolveReport& r) {
  os << "n " << r.n << "  length " << format_number(r.length) << '\n'
     << "travel time " << format_number(r.travel_time) << " s\n";
  if (r.trajectory_duration) {
    os << "trajectory duration " << format_number(*r.trajectory_duration) << " s\n";
  }
  os << "constraints " << r.constraint_count << "  subproblem iterations "
     << r.stats.subproblem_iterations << " (max " << r.stats.max_subproblem_iterations
     << ")\n"
     << std::fixed << std::setprecision(3) << "discretize " << r.discretize_ms
     << " ms  solve " << r.solve_ms << " ms\n"
     << std::defaultfloat << std::setprecision(3) << "max continuous violation: torque "
     << r.audit.continuous.torque << "  acceleration " << r.audit.continuous.acceleration
     << "  velocity " << r.audit.continuous.velocity << '\n';
  for (const std::string& f : r.files) os << "wrote " << f << '\n';
}

void print(std::ostream& os, const std::vector<BenchmarkRow>& rows) {
  os << std::setw(8) << "n" << std::setw(14) << "solve [ms]" << std::setw(14)
     << "oracle [ms]" << std::setw(10) << "ratio" << '\n';
  for (const BenchmarkRow& row : rows) {
    os << std::setw(8) << row.n << std::setw(14) << std::fixed << std::setprecision(4)
       << row.solve_median_ms << std::setw(14);
    if (row.oracle_median_ms) {
      os << *row.oracle_median_ms << std::setw(10) << std::setprecision(1)
         << *row.oracle_median_ms / row.solve_median_ms;
    } else {
      os << "-" << std::setw(10) << "-";
    }
    os << '\n';
  }
  os << std::defaultfloat;
  for (std::size_t k = 1; k < rows.size(); ++k) {
    os << "median ratio n=" << rows[k].n << " / n=" << rows[k - 1].n << ": "
       << std::setprecision(4) << rows[k].solve_median_ms / rows[k - 1].solve_median_ms
       << '\n';
  }
}

void print(std::ostream& os, const CheckReport& r) {
  os << "instances " << r.instances << '\n'
     << std::setprecision(3) << "max deviation linear/general " << r.linear_vs_general
     << "  linear/propagation " << r.linear_vs_propagation
     << "  general/propagation " << r.general_vs_propagation << '\n';
  if (r.unconverged > 0) os << "propagation did not converge on " << r.unconverged << '\n';
  os << (r.passed ? "PASS" : "FAIL") << '\n';
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    switch (config.mode) {
      case Mode::kSolve:
        print(out, run_solve(config));
        return kExitOk;
      case Mode::kBenchmark:
        print(out, run_benchmark(config));
        return kExitOk;
      case Mode::kOracleCheck: {
        const CheckReport report = run_oracle_check(config);
        print(out, report);
        return report.passed ? kExitOk : kExitOracleFailure;
      }
    }
  } catch (const ConfigError& e) {
    err << e.what() << '\n';
    return kExitConfigError;
  } catch (const AssumptionViolated& e) {
    err << "assumption violated: " << e.what() << '\n';
    return kExitAssumptionViolated;
  } catch (const InvalidInput& e) {
    err << "invalid input: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitFailure;
}

}  // namespace pathspeed::cli
