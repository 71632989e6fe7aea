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

// Microbenchmarks for the chain solver, the propagation baseline and the
// discretizer, all on the bundled three-joint case.

#include <benchmark/benchmark.h>

#include <map>

#include "pathspeed/chain.hpp"
#include "pathspeed/cli/config.hpp"
#include "pathspeed/cli/instances.hpp"
#include "pathspeed/discretizer.hpp"
#include "pathspeed/subproblem.hpp"

namespace {

using namespace pathspeed;

const RobotModel& model() {
  static const RobotModel m = bundled_3dof_model();
  return m;
}

const PathSpline& path() {
  static const PathSpline p = PathSpline::build(cli::bundled_waypoints());
  return p;
}

const DiscretizedProblem& problem(std::size_t n) {
  static std::map<std::size_t, DiscretizedProblem> cache;
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, discretize(model(), path(), n)).first;
  return it->second;
}

void BM_SolveChainLinear(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const ChainProblem& p = problem(n).chain;
  ChainOptions o;
  o.method = SubproblemMethod::kLinear;
  for (auto _ : state) benchmark::DoNotOptimize(solve_chain(p, o));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_SolveChainLinear)
    ->RangeMultiplier(10)
    ->Range(100, 100000)
    ->Unit(benchmark::kMicrosecond)
    ->Complexity(benchmark::oN);

void BM_SolveChainGeneral(benchmark::State& state) {
  const ChainProblem& p = problem(static_cast<std::size_t>(state.range(0))).chain;
  ChainOptions o;
  o.method = SubproblemMethod::kGeneral;
  for (auto _ : state) benchmark::DoNotOptimize(solve_chain(p, o));
}
BENCHMARK(BM_SolveChainGeneral)->Arg(1000)->Arg(10000)->Unit(benchmark::kMicrosecond);

void BM_PropagateBounds(benchmark::State& state) {
  const ChainProblem& p = problem(static_cast<std::size_t>(state.range(0))).chain;
  for (auto _ : state) benchmark::DoNotOptimize(propagate_bounds(p));
}
BENCHMARK(BM_PropagateBounds)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_Discretize(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(discretize(model(), path(), n));
}
BENCHMARK(BM_Discretize)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

void BM_Subproblem(benchmark::State& state) {
  std::mt19937_64 rng(1);
  std::vector<cli::LinearEdge> edges;
  for (int k = 0; k < 1024; ++k) edges.push_back(cli::random_edge(rng));
  SubproblemWorkspace ws;
  std::size_t k = 0;
  for (auto _ : state) {
    const cli::LinearEdge& e = edges[k++ & 1023];
    benchmark::DoNotOptimize(solve_2d_linear(e.view(), e.box_left, e.box_right, ws));
  }
}
BENCHMARK(BM_Subproblem);

}  // namespace

BENCHMARK_MAIN();
