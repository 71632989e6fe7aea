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

#ifndef PATHSPEED_CLI_INSTANCES_HPP_
#define PATHSPEED_CLI_INSTANCES_HPP_

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "pathspeed/chain.hpp"
#include "pathspeed/constraints.hpp"

namespace pathspeed::cli {

// Constraints of a single edge plus its two box bounds.
struct LinearEdge {
  std::vector<LinearConstraint> forward;
  std::vector<LinearConstraint> backward;
  double box_left = 0.0;
  double box_right = 0.0;

  EdgeView view() const { return {forward, backward, {}, {}}; }
};

// Ranges of the random generator: slopes in (0, 3], intercepts in (0, 10],
// boxes in [0, 20], between 0 and max_constraints constraints per side.
struct RandomSpec {
  std::size_t max_constraints = 8;
  double max_slope = 3.0;
  double max_intercept = 10.0;
  double max_box = 20.0;
};

LinearEdge random_edge(std::mt19937_64& rng, const RandomSpec& spec = {});
ChainProblem random_chain(std::mt19937_64& rng, std::size_t n,
                          const RandomSpec& spec = {});

// Generator for trial k of a run seeded with `seed`; independent of the
// order in which trials are executed.
std::mt19937_64 trial_rng(std::uint64_t seed, std::size_t trial);

// The two-node reference instance: forward 1.5x+2, x+3, 0.5x+5, 8; inverse
// backward x-1, 4.5x-8, 5x-10; boxes 8 and 8. Optimum (22/7, 43/7).
LinearEdge worked_example();
ChainProblem as_chain(const LinearEdge& edge);

}  // namespace pathspeed::cli

#endif  // PATHSPEED_CLI_INSTANCES_HPP_
