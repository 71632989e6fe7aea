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

#ifndef PATHSPEED_CONSTRAINTS_HPP_
#define PATHSPEED_CONSTRAINTS_HPP_

#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <string>

namespace pathspeed {

// Box bound that does not restrict a variable. Comparisons and std::min
// treat it as the neutral element, so it never needs special casing.
inline constexpr double kUnbounded = std::numeric_limits<double>::infinity();

inline bool is_unbounded(double x) { return x == kUnbounded; }

// Which variable of an edge a coupling constraint bounds.
//   kForward:  v[i+1] <= b(v[i])
//   kBackward: v[i]   <= f(v[i+1])
enum class Direction { kForward, kBackward };

// Affine coupling y <= slope * x + intercept.
struct LinearConstraint {
  double slope = 0.0;
  double intercept = 0.0;

  double operator()(double x) const {
    // A constant line evaluated at an unbounded argument stays constant.
    return slope == 0.0 ? intercept : slope * x + intercept;
  }

  // Inverse map of a strictly increasing line.
  LinearConstraint inverse() const {
    return {1.0 / slope, -intercept / slope};
  }

  friend bool operator==(const LinearConstraint&,
                         const LinearConstraint&) = default;
};

// Coupling y <= value(x) for an arbitrary concave increasing function.
//
// `value` may be called with kUnbounded and should return its limit there.
// `inverse` is optional; when empty it is computed by bisection.
struct ConcaveConstraint {
  std::function<double(double)> value;
  std::function<double(double)> inverse;

  double operator()(double x) const { return value(x); }

  // Smallest x >= 0 with value(x) >= y. Returns a negative number when
  // y < value(0), i.e. when the constraint never binds at level y.
  double inverse_at(double y) const;
};

// Checks the standing assumptions on a single constraint: positive at the
// origin and increasing. A forward constraint may be constant (slope 0), in
// which case it acts as a box bound on the head variable.
//
// For ConcaveConstraint only a sampled check is possible: positivity at 0
// and monotonicity on a 16-point doubling grid. Concavity is not verified.
std::optional<std::string> check_assumption(const LinearConstraint& c,
                                            Direction direction);
std::optional<std::string> check_assumption(const ConcaveConstraint& c,
                                            Direction direction);

// Read-only view of the constraints attached to one edge (v[i], v[i+1]).
struct EdgeView {
  std::span<const LinearConstraint> forward_linear;
  std::span<const LinearConstraint> backward_linear;
  std::span<const ConcaveConstraint> forward_general;
  std::span<const ConcaveConstraint> backward_general;

  bool linear() const {
    return forward_general.empty() && backward_general.empty();
  }
  std::size_t forward_count() const {
    return forward_linear.size() + forward_general.size();
  }
  std::size_t backward_count() const {
    return backward_linear.size() + backward_general.size();
  }

  // F(x) = min_k b_k(x), the tightest bound on v[i+1] given v[i] = x.
  double forward_envelope(double x) const;
  // B(x) = min_j f_j(x), the tightest bound on v[i] given v[i+1] = x.
  double backward_envelope(double x) const;
  // max_j f_j^{-1}(x): the smallest v[i+1] compatible with v[i] = x.
  double backward_inverse_envelope(double x) const;
};

}  // namespace pathspeed

#endif  // PATHSPEED_CONSTRAINTS_HPP_
