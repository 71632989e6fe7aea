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

#include "pathspeed/cli/instances.hpp"

namespace pathspeed::cli {
namespace {

// Uniform on (0, hi].
double open_uniform(std::mt19937_64& rng, double hi) {
  std::uniform_real_distribution<double> u(0.0, hi);
  double x = 0.0;
  while (x == 0.0) x = u(rng);
  return x;
}

std::vector<LinearConstraint> random_lines(std::mt19937_64& rng,
                                           const RandomSpec& spec) {
  std::uniform_int_distribution<std::size_t> count(0, spec.max_constraints);
  std::vector<LinearConstraint> out(count(rng));
  for (LinearConstraint& c : out) {
    c.slope = open_uniform(rng, spec.max_slope);
    c.intercept = open_uniform(rng, spec.max_intercept);
  }
  return out;
}

}  // namespace

LinearEdge random_edge(std::mt19937_64& rng, const RandomSpec& spec) {
  LinearEdge e;
  e.forward = random_lines(rng, spec);
  e.backward = random_lines(rng, spec);
  std::uniform_real_distribution<double> box(0.0, spec.max_box);
  e.box_left = box(rng);
  e.box_right = box(rng);
  return e;
}

ChainProblem random_chain(std::mt19937_64& rng, std::size_t n,
                          const RandomSpec& spec) {
  std::uniform_real_distribution<double> box(0.0, spec.max_box);
  std::vector<double> upper(n);
  for (double& u : upper) u = box(rng);
  ChainProblem::Builder builder(upper);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    for (const LinearConstraint& c : random_lines(rng, spec)) {
      builder.add(i, Direction::kForward, c);
    }
    for (const LinearConstraint& c : random_lines(rng, spec)) {
      builder.add(i, Direction::kBackward, c);
    }
  }
  return std::move(builder).build();
}

std::mt19937_64 trial_rng(std::uint64_t seed, std::size_t trial) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed),
                    static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(trial),
                    static_cast<std::uint32_t>(static_cast<std::uint64_t>(trial) >> 32)};
  return std::mt19937_64(seq);
}

LinearEdge worked_example() {
  LinearEdge e;
  e.forward = {{1.5, 2.0}, {1.0, 3.0}, {0.5, 5.0}, {0.0, 8.0}};
  // Inverses x - 1, 4.5x - 8, 5x - 10 as constraints v[i] <= f(v[i+1]).
  e.backward = {{1.0, 1.0}, {1.0 / 4.5, 8.0 / 4.5}, {0.2, 2.0}};
  e.box_left = 8.0;
  e.box_right = 8.0;
  return e;
}

ChainProblem as_chain(const LinearEdge& edge) {
  ChainProblem::Builder builder({edge.box_left, edge.box_right});
  for (const LinearConstraint& c : edge.forward) builder.add(0, Direction::kForward, c);
  for (const LinearConstraint& c : edge.backward) builder.add(0, Direction::kBackward, c);
  return std::move(builder).build();
}

}  // namespace pathspeed::cli
