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

#include "pathspeed/chain.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "pathspeed/error.hpp"

namespace pathspeed {
namespace {

template <typename T, typename Entry>
void flatten(std::size_t edges, const std::vector<Entry>& entries,
             std::vector<T>& out, std::vector<std::uint32_t>& offsets) {
  offsets.assign(edges + 1, 0);
  for (const auto& e : entries) ++offsets[e.edge + 1];
  for (std::size_t i = 0; i < edges; ++i) offsets[i + 1] += offsets[i];
  std::vector<std::uint32_t> cursor(offsets.begin(), offsets.end() - 1);
  out.resize(entries.size());
  for (const auto& e : entries) out[cursor[e.edge]++] = e.constraint;
}

template <typename T>
std::span<const T> slice(const std::vector<T>& data,
                         const std::vector<std::uint32_t>& offsets,
                         std::size_t i) {
  if (offsets.empty()) return {};
  return std::span<const T>(data.data() + offsets[i],
                            offsets[i + 1] - offsets[i]);
}

// Literal forward step with explicit fixed points:
//   u[i]   = min(u[i],   B(u[i+1]), fixed_i)
//   u[i+1] = min(u[i+1], F(u[i]),   fixed_{i+1})
SubproblemResult fixed_point_step(const EdgeView& edge, double box_left,
                                  double box_right) {
  double fixed_left = kUnbounded;
  double fixed_right = kUnbounded;
  if (edge.forward_count() > 0 && edge.backward_count() > 0) {
    const auto fp = fixed_point(
        [&edge](double x) { return edge.forward_envelope(x); },
        [&edge](double x) { return edge.backward_envelope(x); });
    if (fp) std::tie(fixed_left, fixed_right) = *fp;
  }
  SubproblemResult r;
  r.left = std::min({box_left, edge.backward_envelope(box_right), fixed_left});
  r.right = std::min({box_right, edge.forward_envelope(r.left), fixed_right});
  r.iterations = 1;
  return r;
}

bool linear_superior(const LinearConstraint& c) {
  return c.slope >= 1.0 && c.intercept > 0.0;
}

bool general_superior(const ConcaveConstraint& c) {
  if (!(c.value(0.0) > 0.0)) return false;
  for (double x = 1.0 / 1024.0; x <= 18446744073709551616.0; x *= 2.0) {
    if (!(c.value(x) > x)) return false;
  }
  return true;
}

}  // namespace

// ----------------------------------------------------------------------------
// ChainProblem

EdgeView ChainProblem::edge(std::size_t i) const {
  EdgeView e;
  e.forward_linear = slice(forward_linear_, forward_linear_offsets_, i);
  e.backward_linear = slice(backward_linear_, backward_linear_offsets_, i);
  e.forward_general = slice(forward_general_, forward_general_offsets_, i);
  e.backward_general = slice(backward_general_, backward_general_offsets_, i);
  return e;
}

std::size_t ChainProblem::constraint_count() const {
  return forward_linear_.size() + backward_linear_.size() +
         forward_general_.size() + backward_general_.size();
}

ChainProblem ChainProblem::with_upper_bounds(std::vector<double> upper) const {
  if (upper.size() != upper_.size()) {
    throw InvalidInput("with_upper_bounds: size mismatch");
  }
  ChainProblem copy = *this;
  copy.upper_ = std::move(upper);
  copy.validate();
  return copy;
}

void ChainProblem::validate() {
  diagnostic_.reset();
  for (std::size_t i = 0; i < upper_.size(); ++i) {
    if (!(upper_[i] >= 0.0)) {
      std::ostringstream os;
      os << "box bound " << i << " is " << upper_[i] << " (must be >= 0)";
      diagnostic_ = os.str();
      return;
    }
  }
  for (std::size_t i = 0; i < edge_count(); ++i) {
    const EdgeView e = edge(i);
    auto report = [&](const std::string& what) {
      std::ostringstream os;
      os << "edge " << i << ": " << what;
      diagnostic_ = os.str();
    };
    for (const auto& c : e.forward_linear) {
      if (auto d = check_assumption(c, Direction::kForward)) return report(*d);
    }
    for (const auto& c : e.backward_linear) {
      if (auto d = check_assumption(c, Direction::kBackward)) return report(*d);
    }
    for (const auto& c : e.forward_general) {
      if (auto d = check_assumption(c, Direction::kForward)) return report(*d);
    }
    for (const auto& c : e.backward_general) {
      if (auto d = check_assumption(c, Direction::kBackward)) return report(*d);
    }
  }
}

ChainProblem::Builder::Builder(std::vector<double> upper_bounds)
    : upper_(std::move(upper_bounds)) {}

void ChainProblem::Builder::check_edge(std::size_t edge) const {
  if (edge + 1 >= upper_.size()) {
    throw InvalidInput("constraint attached to edge " + std::to_string(edge) +
                       " of a chain with " + std::to_string(upper_.size()) + " nodes");
  }
}

ChainProblem::Builder& ChainProblem::Builder::add(std::size_t edge,
                                                  Direction direction,
                                                  LinearConstraint c) {
  check_edge(edge);
  auto& list = direction == Direction::kForward ? forward_linear_ : backward_linear_;
  list.push_back({static_cast<std::uint32_t>(edge), c});
  return *this;
}

ChainProblem::Builder& ChainProblem::Builder::add(std::size_t edge,
                                                  Direction direction,
                                                  ConcaveConstraint c) {
  check_edge(edge);
  auto& list = direction == Direction::kForward ? forward_general_ : backward_general_;
  list.push_back({static_cast<std::uint32_t>(edge), std::move(c)});
  return *this;
}

ChainProblem ChainProblem::Builder::build() const {
  if (upper_.size() < 2) {
    throw InvalidInput("a chain needs at least two nodes");
  }
  const std::size_t edges = upper_.size() - 1;

  ChainProblem p;
  p.upper_ = upper_;
  flatten(edges, forward_linear_, p.forward_linear_, p.forward_linear_offsets_);
  flatten(edges, backward_linear_, p.backward_linear_, p.backward_linear_offsets_);
  if (!forward_general_.empty()) {
    flatten(edges, forward_general_, p.forward_general_, p.forward_general_offsets_);
  }
  if (!backward_general_.empty()) {
    flatten(edges, backward_general_, p.backward_general_, p.backward_general_offsets_);
  }
  p.validate();
  return p;
}

// ----------------------------------------------------------------------------
// Solvers

ChainSolution solve_chain(const ChainProblem& problem,
                          const ChainOptions& options) {
  ChainSolution sol;
  if (!problem.valid()) {
    sol.status = ChainStatus::kInvalidInput;
    sol.diagnostic = *problem.diagnostic();
    return sol;
  }
  SubproblemMethod method = options.method;
  if (method == SubproblemMethod::kAuto) {
    method = problem.all_linear() ? SubproblemMethod::kLinear
                                  : SubproblemMethod::kGeneral;
  }
  if (method == SubproblemMethod::kLinear && !problem.all_linear()) {
    throw InvalidInput("linear subproblem solver requested for a chain with "
                       "general constraints");
  }

  std::vector<double>& u = sol.v;
  u = problem.upper_bounds();
  const std::size_t edges = problem.edge_count();
  SubproblemWorkspace workspace;

  for (std::size_t i = 0; i < edges; ++i) {
    const EdgeView edge = problem.edge(i);
    if (options.superiority_shortcut && check_superiority(edge)) {
      u[i + 1] = std::min(u[i + 1], edge.forward_envelope(u[i]));
      ++sol.stats.superiority_shortcuts;
      continue;
    }
    SubproblemResult r;
    switch (method) {
      case SubproblemMethod::kLinear:
        r = solve_2d_linear(edge, u[i], u[i + 1], workspace, options.subproblem);
        break;
      case SubproblemMethod::kGeneral:
        r = solve_2d_general(edge, u[i], u[i + 1], options.subproblem);
        break;
      case SubproblemMethod::kFixedPoint:
      case SubproblemMethod::kAuto:
        r = fixed_point_step(edge, u[i], u[i + 1]);
        break;
    }
    u[i] = r.left;
    u[i + 1] = r.right;
    sol.stats.subproblem_iterations += r.iterations;
    sol.stats.max_subproblem_iterations =
        std::max(sol.stats.max_subproblem_iterations, r.iterations);
  }

  for (std::size_t i = edges; i-- > 0;) {
    u[i] = std::min(u[i], problem.edge(i).backward_envelope(u[i + 1]));
  }
  return sol;
}

std::optional<std::pair<double, double>> fixed_point(const Envelope& forward,
                                                     const Envelope& backward,
                                                     double tolerance) {
  if (!(forward(0.0) > 0.0) || !(backward(0.0) > 0.0)) {
    throw InvalidInput("fixed_point: envelopes must be positive at 0");
  }
  auto gap = [&](double x) { return forward(backward(x)) - x; };
  double lo = 0.0;
  double hi = 1.0;
  while (gap(hi) >= 0.0) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1e300) return std::nullopt;
  }
  for (int it = 0; it < 400; ++it) {
    if (hi - lo <= tolerance * std::max(1.0, lo)) break;
    const double mid = 0.5 * (lo + hi);
    (gap(mid) >= 0.0 ? lo : hi) = mid;
  }
  const double x = 0.5 * (lo + hi);
  return std::make_pair(backward(x), x);
}

bool check_superiority(const EdgeView& edge) {
  for (const auto& c : edge.forward_linear) {
    if (!linear_superior(c)) return false;
  }
  for (const auto& c : edge.backward_linear) {
    if (!linear_superior(c)) return false;
  }
  for (const auto& c : edge.forward_general) {
    if (!general_superior(c)) return false;
  }
  for (const auto& c : edge.backward_general) {
    if (!general_superior(c)) return false;
  }
  return true;
}

PropagationResult propagate_bounds(const ChainProblem& problem,
                                   std::size_t max_sweeps, double tolerance) {
  PropagationResult res;
  res.v = problem.upper_bounds();
  const std::size_t edges = problem.edge_count();
  std::vector<double> next(res.v.size());
  while (res.sweeps < max_sweeps) {
    ++res.sweeps;
    next = res.v;
    for (std::size_t i = 0; i < edges; ++i) {
      const EdgeView e = problem.edge(i);
      next[i] = std::min(next[i], e.backward_envelope(res.v[i + 1]));
      next[i + 1] = std::min(next[i + 1], e.forward_envelope(res.v[i]));
    }
    bool moved = false;
    for (std::size_t i = 0; i < next.size(); ++i) {
      if (res.v[i] - next[i] > tolerance * std::max(1.0, std::abs(next[i])) ||
          (is_unbounded(res.v[i]) && !is_unbounded(next[i]))) {
        moved = true;
      }
    }
    res.v.swap(next);
    if (!moved) {
      res.converged = true;
      break;
    }
  }
  return res;
}

}  // namespace pathspeed
