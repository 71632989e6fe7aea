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

#ifndef PATHSPEED_ROBOT_HPP_
#define PATHSPEED_ROBOT_HPP_

#include <array>
#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "pathspeed/path.hpp"

namespace pathspeed {

// A per-joint limit along the path: either constant or tabulated at
// increasing arc-length positions and linearly interpolated in between.
class BoundProfile {
 public:
  BoundProfile() = default;
  explicit BoundProfile(Eigen::VectorXd constant);
  // positions: k increasing values; values: p x k.
  BoundProfile(std::vector<double> positions, Eigen::MatrixXd values);

  Eigen::VectorXd at(double s) const;
  std::size_t dof() const { return static_cast<std::size_t>(values_.rows()); }
  bool is_constant() const { return positions_.empty(); }

 private:
  std::vector<double> positions_;
  Eigen::MatrixXd values_;
};

// Manipulator dynamics D(q) qdd + C(q, qd) qd + l(q) = tau with joint
// velocity, acceleration and torque limits. C must be linear in qd.
struct RobotModel {
  std::string name;
  std::size_t dof = 0;
  std::function<Eigen::MatrixXd(const Eigen::VectorXd& q)> mass_matrix;
  std::function<Eigen::MatrixXd(const Eigen::VectorXd& q,
                                const Eigen::VectorXd& qd)>
      coriolis;
  std::function<Eigen::VectorXd(const Eigen::VectorXd& q)> external_force;
  BoundProfile velocity_limit;      // rad/s
  BoundProfile acceleration_limit;  // rad/s^2
  BoundProfile torque_limit;        // N m
};

// Inertial and geometric data of the three-revolute elbow manipulator: a
// base joint about the vertical axis followed by two parallel horizontal
// joints. Index k refers to link k+1 counted from the base.
struct ElbowParameters {
  std::array<std::array<double, 3>, 3> inertia{};  // (Ix, Iy, Iz), kg m^2
  std::array<double, 3> mass{};                    // kg
  std::array<double, 3> length{};                  // m
  std::array<double, 3> center_of_mass{};          // m, from proximal joint
  double gravity = 9.81;                           // m/s^2

  friend bool operator==(const ElbowParameters&, const ElbowParameters&) = default;
};

// Parameters of the bundled three-joint test robot.
ElbowParameters murray_3dof_parameters();

// Lagrangian dynamics of the elbow manipulator. Coriolis terms are the
// Christoffel symbols of the mass matrix, so D' - 2C is skew-symmetric.
RobotModel elbow_model(const ElbowParameters& params, BoundProfile velocity,
                       BoundProfile acceleration, BoundProfile torque);

// Elbow model with the bundled parameters and limits (2 rad/s, 1.5 rad/s^2,
// 9 N m on every joint). Addressable by name "murray-3dof".
RobotModel bundled_3dof_model();

// Potential energy of the elbow manipulator; external_force is its gradient.
double elbow_potential(const ElbowParameters& params, const Eigen::VectorXd& q);

// Constant mass matrix, no Coriolis terms, constant external force.
RobotModel constant_inertia_model(Eigen::MatrixXd mass_matrix,
                                  Eigen::VectorXd external_force,
                                  BoundProfile velocity,
                                  BoundProfile acceleration,
                                  BoundProfile torque);

// Dynamics projected on the path:
//   d = D(gamma) gamma'
//   c = D(gamma) gamma'' + C(gamma, gamma') gamma'
//   g = l(gamma)
struct ProjectedCoefficients {
  Eigen::VectorXd d;
  Eigen::VectorXd c;
  Eigen::VectorXd g;
  PathSpline::Point point;
};

ProjectedCoefficients project_dynamics(const RobotModel& model,
                                       const PathSpline& path, double s);

}  // namespace pathspeed

#endif  // PATHSPEED_ROBOT_HPP_
