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

#ifndef PATHSPEED_PROFILE_HPP_
#define PATHSPEED_PROFILE_HPP_

#include <cstddef>
#include <vector>

#include <Eigen/Core>

#include "pathspeed/discretizer.hpp"
#include "pathspeed/path.hpp"
#include "pathspeed/robot.hpp"

namespace pathspeed {

// C1 piecewise quadratic through node data b_0..b_{n-1} on the grid s = k h.
// Piece k covers [(k - 1/2) h, (k + 1/2) h] clipped to [0, (n-1) h] and is
//
//   p(s) = x_k + y_k (s - k h) + z_k (s - k h)^2.
//
// It matches the edge averages (b_k + b_{k+1}) / 2 and slopes
// (b_{k+1} - b_k) / h at the midpoints, and the node data at both ends.
// The two end pieces are linear.
class QuadraticSpline {
 public:
  struct Piece {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;
  };

  QuadraticSpline() = default;
  QuadraticSpline(std::vector<double> nodes, double h);

  double value(double s) const;
  double derivative(double s) const;
  double second_derivative(double s) const;

  // Index of the piece containing s (s is clamped to the domain).
  std::size_t piece_index(double s) const;
  const std::vector<Piece>& pieces() const { return pieces_; }
  const std::vector<double>& nodes() const { return nodes_; }
  double step() const { return h_; }
  double length() const { return h_ * static_cast<double>(nodes_.size() - 1); }

 private:
  std::vector<double> nodes_;
  std::vector<Piece> pieces_;
  double h_ = 1.0;
};

// Throws InvalidInput for fewer than two nodes or h <= 0.
QuadraticSpline build_spline(std::vector<double> b, double h);

// 2h sum 1 / (sqrt(b_i) + sqrt(b_{i+1})); +infinity when some consecutive
// pair is (0, 0). Throws InvalidInput on negative entries.
double travel_time(const std::vector<double>& b, double h);

struct SpeedProfile {
  std::vector<double> b;
  QuadraticSpline spline;
  std::vector<double> a;    // n - 1 edge accelerations
  Eigen::MatrixXd tau;      // (n - 1) x p edge torques
  std::vector<QuadraticSpline> tau_spline;  // one per joint
  double travel_time = 0.0;
};

// Throws InvalidInput when b does not match the problem size or has
// negative entries.
SpeedProfile make_profile(const DiscretizedProblem& problem, std::vector<double> b);

// Samples of the time-parametrized reference at t = 0, dt, 2 dt, ... and a
// final sample at the arrival time.
struct Trajectory {
  std::vector<double> t;
  std::vector<double> s;
  Eigen::MatrixXd q;    // samples x p
  Eigen::MatrixXd qd;   // samples x p
  Eigen::MatrixXd tau;  // samples x p
  double duration = 0.0;
};

// Integrates s' = sqrt(b(s)), s(0) = 0 with fixed-step RK4. Pieces on which
// the spline is linear are advanced with the closed-form solution
// sqrt(b(t)) = sqrt(b_0) + b' t / 2, which also handles zero speed at
// either end. Throws Stall when the speed drops below 1e-12 before the end
// of the path and InvalidInput for dt <= 0.
Trajectory time_parametrize(const SpeedProfile& profile, const PathSpline& path,
                            double dt);

// Largest relative violation |value| / limit - 1 (0 when satisfied) of each
// constraint family.
struct ViolationSummary {
  double torque = 0.0;
  double acceleration = 0.0;
  double velocity = 0.0;

  double max() const;
};

struct FeasibilityReport {
  ViolationSummary grid;        // at the samples, from the discrete model
  ViolationSummary continuous;  // on the dense grid, from the spline lift
  std::size_t undershoot_points = 0;  // dense points where the spline is < 0
  double min_spline_value = 0.0;
};

// Evaluates the continuous constraints at `grid` uniformly spaced points
// using b = max(0, spline(s)), b' = spline'(s) and the exact projected
// dynamics of `model` along `path`.
FeasibilityReport audit_feasibility(const SpeedProfile& profile,
                                    const DiscretizedProblem& problem,
                                    const RobotModel& model,
                                    const PathSpline& path, std::size_t grid);

}  // namespace pathspeed

#endif  // PATHSPEED_PROFILE_HPP_
