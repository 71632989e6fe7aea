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

#ifndef PATHSPEED_CHAIN_HPP_
#define PATHSPEED_CHAIN_HPP_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pathspeed/constraints.hpp"
#include "pathspeed/subproblem.hpp"

namespace pathspeed {

// Chain-structured problem over v[0..n-1]:
//
//   v[i]   <= f(v[i+1])   for every backward constraint f of edge i
//   v[i+1] <= b(v[i])     for every forward constraint b of edge i
//   0 <= v[i] <= upper[i]
//
// with every f, b concave, increasing and positive at zero. Under these
// assumptions the feasible set has a component-wise maximum, which is the
// minimizer of any non-increasing objective (travel time in particular).
//
// Constraints are stored edge-contiguously. Instances are immutable and
// may be shared between threads.
class ChainProblem {
 public:
  class Builder;

  std::size_t size() const { return upper_.size(); }
  std::size_t edge_count() const { return upper_.empty() ? 0 : upper_.size() - 1; }
  const std::vector<double>& upper_bounds() const { return upper_; }

  EdgeView edge(std::size_t i) const;

  bool all_linear() const { return forward_general_.empty() && backward_general_.empty(); }
  std::size_t constraint_count() const;

  // Empty when every box bound is nonnegative and every constraint passes
  // check_assumption(); otherwise names the first offending item.
  const std::optional<std::string>& diagnostic() const { return diagnostic_; }
  bool valid() const { return !diagnostic_.has_value(); }

  // Same constraints, different box bounds.
  ChainProblem with_upper_bounds(std::vector<double> upper) const;

 private:
  ChainProblem() = default;
  void validate();

  std::vector<double> upper_;
  // CSR layout: constraints of edge i live in [offsets[i], offsets[i+1]).
  std::vector<LinearConstraint> forward_linear_, backward_linear_;
  std::vector<std::uint32_t> forward_linear_offsets_, backward_linear_offsets_;
  std::vector<ConcaveConstraint> forward_general_, backward_general_;
  std::vector<std::uint32_t> forward_general_offsets_, backward_general_offsets_;
  std::optional<std::string> diagnostic_;
};

class ChainProblem::Builder {
 public:
  explicit Builder(std::vector<double> upper_bounds);

  Builder& add(std::size_t edge, Direction direction, LinearConstraint c);
  Builder& add(std::size_t edge, Direction direction, ConcaveConstraint c);

  // Never throws on assumption failures; see ChainProblem::diagnostic().
  // Throws InvalidInput for fewer than two nodes.
  ChainProblem build() const;

 private:
  void check_edge(std::size_t edge) const;

  template <typename T>
  struct Entry {
    std::uint32_t edge;
    T constraint;
  };

  std::vector<double> upper_;
  std::vector<Entry<LinearConstraint>> forward_linear_, backward_linear_;
  std::vector<Entry<ConcaveConstraint>> forward_general_, backward_general_;
};

enum class ChainStatus { kSolved, kInvalidInput };

struct ChainStats {
  std::size_t subproblem_iterations = 0;
  std::size_t max_subproblem_iterations = 0;
  std::size_t superiority_shortcuts = 0;
};

struct ChainSolution {
  std::vector<double> v;
  ChainStatus status = ChainStatus::kSolved;
  std::string diagnostic;
  ChainStats stats;
};

struct ChainOptions {
  SubproblemMethod method = SubproblemMethod::kAuto;
  // Skip the subproblem on edges whose envelopes satisfy F(x) > x and
  // B(x) > x for all x >= 0; only the forward bound is propagated there.
  bool superiority_shortcut = false;
  SubproblemOptions subproblem;
};

// Forward-backward sweep. The forward pass replaces (u[i], u[i+1]) by the
// solution of the edge subproblem; the backward pass applies
// u[i] = min(u[i], B_i(u[i+1])) from the last edge to the first. The result
// is the component-wise maximum of the feasible set.
ChainSolution solve_chain(const ChainProblem& problem,
                          const ChainOptions& options = {});

// Positive root of F(B(x)) - x, returned as the pair (B(x), x): the largest
// values v[i], v[i+1] can take when only the coupling constraints are
// considered. std::nullopt when F(B(x)) > x everywhere.
//
// Bisection on [0, x_hi] where x_hi is the first point of a doubling grid
// with F(B(x_hi)) < x_hi. Throws InvalidInput if F(0) <= 0 or B(0) <= 0.
using Envelope = std::function<double(double)>;
std::optional<std::pair<double, double>> fixed_point(const Envelope& forward,
                                                     const Envelope& backward,
                                                     double tolerance = 1e-12);

// True when F(x) > x and B(x) > x hold for every x >= 0. Exact for linear
// constraints (slope >= 1 with positive intercept); general constraints are
// sampled on a doubling grid up to 2^64.
bool check_superiority(const EdgeView& edge);

struct PropagationResult {
  std::vector<double> v;
  std::size_t sweeps = 0;
  bool converged = false;
};

// Reference solution by synchronous bound propagation: every sweep applies
// u[i] <- min(u[i], B_i(u[i+1])) and u[i+1] <- min(u[i+1], F_i(u[i])) to all
// edges using the previous iterate, until nothing moves by more than
// `tolerance` (relative). Quadratic or worse in n; intended as an oracle.
PropagationResult propagate_bounds(const ChainProblem& problem,
                                   std::size_t max_sweeps = 10'000'000,
                                   double tolerance = 1e-15);

}  // namespace pathspeed

#endif  // PATHSPEED_CHAIN_HPP_
