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

#ifndef PATHSPEED_SUBPROBLEM_HPP_
#define PATHSPEED_SUBPROBLEM_HPP_

#include <cstddef>
#include <vector>

#include "pathspeed/constraints.hpp"

namespace pathspeed {

// Solves the per-edge problem
//
//   max  v[i] + v[i+1]
//   s.t. v[i]   <= f_j(v[i+1])     (backward constraints)
//        v[i+1] <= b_k(v[i])       (forward constraints)
//        0 <= v[i] <= box_left,  0 <= v[i+1] <= box_right
//
// whose optimum is the component-wise maximum of its feasible set. Both
// solvers start from x = box_left and walk down a strictly decreasing
// sequence of candidate values for v[i]: at each step the forward envelope
// (including the box on v[i+1]) is compared against the inverse backward
// envelope, and when the former is lower the active pair is intersected.

enum class SubproblemMethod {
  kAuto,        // kLinear when every constraint is linear, else kGeneral
  kLinear,      // sorted slopes with monotone pointers
  kGeneral,     // full envelope evaluation, any concave constraints
  kFixedPoint,  // explicit fixed points of the composed envelopes
};

// Index reported for the box on v[i+1] when it attains the forward
// envelope: one past the last forward constraint of the edge.
struct IterationRecord {
  double x = 0.0;           // candidate value of v[i]
  double y = 0.0;           // forward envelope (with box) at x
  double z = 0.0;           // inverse backward envelope at x
  std::size_t forward = 0;  // attaining forward constraint, original index
  std::size_t backward = 0; // attaining backward constraint, original index
  std::size_t xi = 0;       // linear solver: position in the pruned lists
  std::size_t phi = 0;
};

struct SubproblemResult {
  double left = 0.0;   // new bound on v[i]
  double right = 0.0;  // new bound on v[i+1]
  std::size_t iterations = 0;        // envelope evaluations, incl. the last
  std::size_t equations_solved = 0;  // one-dimensional root solves
  std::vector<IterationRecord> trace;  // filled when requested
};

struct SubproblemOptions {
  bool record_trace = false;
  // Relative tolerance of the termination test y >= z - tol * max(1, x).
  double tolerance = 1e-12;
};

// Scratch storage for solve_2d_linear so a chain sweep allocates once.
struct SubproblemWorkspace {
  struct Line {
    double slope;
    double intercept;
    std::size_t index;
  };
  std::vector<Line> forward;
  std::vector<Line> backward;
};

// Envelope iteration for arbitrary concave increasing constraints. Evaluates
// every constraint at each step; each one-dimensional equation is solved in
// closed form for linear pairs and by bisection otherwise.
SubproblemResult solve_2d_general(const EdgeView& edge, double box_left,
                                  double box_right,
                                  const SubproblemOptions& options = {});

// Linear-only variant. Sorts slopes, drops constraints that never attain
// their envelope, and advances two pointers monotonically so the envelope
// work over all iterations is linear in the number of constraints.
// Throws InvalidInput if the edge contains general constraints.
SubproblemResult solve_2d_linear(const EdgeView& edge, double box_left,
                                 double box_right,
                                 const SubproblemOptions& options = {});
SubproblemResult solve_2d_linear(const EdgeView& edge, double box_left,
                                 double box_right,
                                 SubproblemWorkspace& workspace,
                                 const SubproblemOptions& options = {});

}  // namespace pathspeed

#endif  // PATHSPEED_SUBPROBLEM_HPP_
