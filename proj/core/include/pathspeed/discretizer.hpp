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

#ifndef PATHSPEED_DISCRETIZER_HPP_
#define PATHSPEED_DISCRETIZER_HPP_

#include <cstddef>
#include <optional>
#include <vector>

#include <Eigen/Core>

#include "pathspeed/chain.hpp"
#include "pathspeed/constraints.hpp"
#include "pathspeed/path.hpp"
#include "pathspeed/robot.hpp"

namespace pathspeed {

// Projected dynamics and limits sampled at s_i = i h, i = 0..n-1.
// Matrices are p x n, one column per sample.
struct PathSamples {
  std::size_t n = 0;
  double h = 0.0;
  double length = 0.0;
  std::vector<double> s;
  Eigen::MatrixXd d, c, g;
  Eigen::MatrixXd tangent, curvature;
  Eigen::MatrixXd velocity_limit, acceleration_limit, torque_limit;
};

PathSamples sample_path(const RobotModel& model, const PathSpline& path,
                        std::size_t n);

// Discrete problem over b_i = v(s_i)^2. On edge i (between samples i and
// i+1) joint torques and accelerations are
//
//   tau_i = d_i a_i + c_i (lambda_i b_{i+1} + (1 - lambda_i) b_i) + g_i
//   qdd_i = g'_i a_i + g''_i (eta_i b_{i+1} + (1 - eta_i) b_i)
//
// with a_i = (b_{i+1} - b_i) / 2h. Selectors are 1 where the two
// coefficients share a sign (or one is zero) and 0 otherwise.
struct DiscretizedProblem {
  PathSamples samples;
  Eigen::MatrixXi lambda;  // p x n
  Eigen::MatrixXi eta;     // p x n
  ChainProblem chain;

  std::size_t size() const { return samples.n; }
  double step() const { return samples.h; }
};

// Constraints implied by  lo <= coef_next b_{i+1} + coef_current b_i <= hi
// with lo < 0 < hi.
// When the coefficients have opposite signs this is a forward and a backward
// constraint with positive slopes; when one of them vanishes it is a box.
// Coefficients of equal sign yield negative slopes (rejected by the chain
// validator).
struct EdgeConstraints {
  std::optional<LinearConstraint> forward;   // b_{i+1} <= slope b_i + intercept
  std::optional<LinearConstraint> backward;  // b_i <= slope b_{i+1} + intercept
  double box_next = kUnbounded;              // b_{i+1} <= box_next
  double box_current = kUnbounded;           // b_i <= box_current
};

EdgeConstraints two_sided_constraints(double coef_next, double coef_current,
                                      double lo, double hi);

// |d a_i + c b_hat + g| <= mu for one joint on one edge.
EdgeConstraints torque_constraints(double d, double c, double g, double mu,
                                   double h, bool lambda);
// |g' a_i + g'' b_hat| <= alpha for one joint on one edge.
EdgeConstraints acceleration_constraints(double tangent, double curvature,
                                         double alpha, double h, bool eta);

// Builds the chain: velocity boxes psi^2 / g'^2, zero speed at both ends,
// and the torque and acceleration constraints of every joint on every edge.
// Throws AssumptionViolated when mu <= |g| at some sample, InvalidInput on
// n < 2 or non-positive limits.
DiscretizedProblem discretize(const RobotModel& model, const PathSpline& path,
                              std::size_t n);
DiscretizedProblem discretize(PathSamples samples);

// Per-edge quantities for a solution b: (n-1) x p.
Eigen::MatrixXd recover_torque(const DiscretizedProblem& problem,
                               const std::vector<double>& b);
Eigen::MatrixXd recover_acceleration(const DiscretizedProblem& problem,
                                     const std::vector<double>& b);

}  // namespace pathspeed

#endif  // PATHSPEED_DISCRETIZER_HPP_
