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

#include "pathspeed/robot.hpp"

#include <algorithm>
#include <cmath>

#include "pathspeed/error.hpp"

namespace pathspeed {
namespace {

// Forward-mode dual number, enough to differentiate the elbow kinematics.
struct Dual {
  double v = 0.0;
  double d = 0.0;
};

Dual operator+(Dual a, Dual b) { return {a.v + b.v, a.d + b.d}; }
Dual operator*(Dual a, Dual b) { return {a.v * b.v, a.d * b.v + a.v * b.d}; }
Dual operator*(double a, Dual b) { return {a * b.v, a * b.d}; }
Dual operator+(double a, Dual b) { return {a + b.v, b.d}; }
Dual operator+(Dual a, double b) { return {a.v + b, a.d}; }
Dual sin(Dual a) { return {std::sin(a.v), std::cos(a.v) * a.d}; }
Dual cos(Dual a) { return {std::cos(a.v), -std::sin(a.v) * a.d}; }
using std::cos;
using std::sin;

template <typename T>
using Mat3 = std::array<std::array<T, 3>, 3>;

template <typename T>
Mat3<T> elbow_mass(const ElbowParameters& p, const std::array<T, 3>& q) {
  const double iz1 = p.inertia[0][2];
  const double ix2 = p.inertia[1][0];
  const double iy2 = p.inertia[1][1];
  const double iz2 = p.inertia[1][2];
  const double ix3 = p.inertia[2][0];
  const double iy3 = p.inertia[2][1];
  const double iz3 = p.inertia[2][2];
  const double m2 = p.mass[1];
  const double m3 = p.mass[2];
  const double l1 = p.length[1];
  const double r1 = p.center_of_mass[1];
  const double r2 = p.center_of_mass[2];

  const T s2 = sin(q[1]);
  const T c2 = cos(q[1]);
  const T c3 = cos(q[2]);
  const T s23 = sin(q[1] + q[2]);
  const T c23 = cos(q[1] + q[2]);
  const T reach = l1 * c2 + r2 * c23;

  Mat3<T> m{};
  m[0][0] = iy2 * (s2 * s2) + iy3 * (s23 * s23) + iz1 + iz2 * (c2 * c2) +
            iz3 * (c23 * c23) + (m2 * r1 * r1) * (c2 * c2) + m3 * (reach * reach);
  m[1][1] = (ix2 + ix3 + m3 * l1 * l1 + m2 * r1 * r1 + m3 * r2 * r2) +
            (2.0 * m3 * l1 * r2) * c3;
  m[1][2] = (ix3 + m3 * r2 * r2) + (m3 * l1 * r2) * c3;
  m[2][1] = m[1][2];
  m[2][2] = (ix3 + m3 * r2 * r2) + 0.0 * c3;
  return m;
}

template <typename T>
T elbow_potential_impl(const ElbowParameters& p, const std::array<T, 3>& q) {
  const double g = p.gravity;
  const double l0 = p.length[0];
  const double l1 = p.length[1];
  const double r0 = p.center_of_mass[0];
  const double r1 = p.center_of_mass[1];
  const double r2 = p.center_of_mass[2];
  const T s2 = sin(q[1]);
  const T s23 = sin(q[1] + q[2]);
  return (p.mass[0] * g * r0) + (p.mass[1] * g) * (l0 + (-r1) * s2) +
         (p.mass[2] * g) * (l0 + (-l1) * s2 + (-r2) * s23);
}

std::array<Dual, 3> seeded(const Eigen::VectorXd& q, int k) {
  std::array<Dual, 3> x;
  for (int i = 0; i < 3; ++i) x[i] = {q(i), i == k ? 1.0 : 0.0};
  return x;
}

void require_dof(const Eigen::VectorXd& q, std::size_t dof) {
  if (static_cast<std::size_t>(q.size()) != dof) {
    throw InvalidInput("configuration has " + std::to_string(q.size()) +
                       " entries, model expects " + std::to_string(dof));
  }
}

}  // namespace

BoundProfile::BoundProfile(Eigen::VectorXd constant)
    : values_(std::move(constant)) {}

BoundProfile::BoundProfile(std::vector<double> positions, Eigen::MatrixXd values)
    : positions_(std::move(positions)), values_(std::move(values)) {
  if (positions_.empty() ||
      static_cast<Eigen::Index>(positions_.size()) != values_.cols()) {
    throw InvalidInput("bound table: positions and columns differ in count");
  }
  if (!std::is_sorted(positions_.begin(), positions_.end())) {
    throw InvalidInput("bound table positions must be increasing");
  }
}

Eigen::VectorXd BoundProfile::at(double s) const {
  if (positions_.empty()) return values_.col(0);
  if (s <= positions_.front()) return values_.col(0);
  if (s >= positions_.back()) return values_.col(values_.cols() - 1);
  const auto it = std::upper_bound(positions_.begin(), positions_.end(), s);
  const Eigen::Index k = (it - positions_.begin()) - 1;
  const double w = (s - positions_[k]) / (positions_[k + 1] - positions_[k]);
  return (1.0 - w) * values_.col(k) + w * values_.col(k + 1);
}

ElbowParameters murray_3dof_parameters() {
  ElbowParameters p;
  p.inertia = {{{7.5, 7.5, 7.5}, {5.7, 5.7, 5.7}, {4.75, 4.75, 4.75}}};
  p.mass = {1.5, 1.2, 1.0};
  p.length = {0.2, 0.3, 0.325};
  p.center_of_mass = {0.08, 0.12, 0.13};
  p.gravity = 9.81;
  return p;
}

double elbow_potential(const ElbowParameters& params, const Eigen::VectorXd& q) {
  require_dof(q, 3);
  return elbow_potential_impl<double>(params, {q(0), q(1), q(2)});
}

RobotModel elbow_model(const ElbowParameters& params, BoundProfile velocity,
                       BoundProfile acceleration, BoundProfile torque) {
  RobotModel model;
  model.name = "elbow-3dof";
  model.dof = 3;
  model.mass_matrix = [params](const Eigen::VectorXd& q) {
    require_dof(q, 3);
    const auto m = elbow_mass<double>(params, {q(0), q(1), q(2)});
    Eigen::MatrixXd out(3, 3);
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) out(i, j) = m[i][j];
    }
    return out;
  };
  model.coriolis = [params](const Eigen::VectorXd& q, const Eigen::VectorXd& qd) {
    require_dof(q, 3);
    require_dof(qd, 3);
    // dm[k][i][j] = d M_ij / d q_k
    std::array<Mat3<double>, 3> dm;
    for (int k = 0; k < 3; ++k) {
      const auto m = elbow_mass<Dual>(params, seeded(q, k));
      for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) dm[k][i][j] = m[i][j].d;
      }
    }
    Eigen::MatrixXd c = Eigen::MatrixXd::Zero(3, 3);
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        for (int k = 0; k < 3; ++k) {
          c(i, j) += 0.5 * (dm[k][i][j] + dm[j][i][k] - dm[i][k][j]) * qd(k);
        }
      }
    }
    return c;
  };
  model.external_force = [params](const Eigen::VectorXd& q) {
    require_dof(q, 3);
    Eigen::VectorXd g(3);
    for (int k = 0; k < 3; ++k) {
      g(k) = elbow_potential_impl<Dual>(params, seeded(q, k)).d;
    }
    return g;
  };
  model.velocity_limit = std::move(velocity);
  model.acceleration_limit = std::move(acceleration);
  model.torque_limit = std::move(torque);
  return model;
}

RobotModel bundled_3dof_model() {
  RobotModel model = elbow_model(murray_3dof_parameters(),
                                 BoundProfile(Eigen::Vector3d(2.0, 2.0, 2.0)),
                                 BoundProfile(Eigen::Vector3d(1.5, 1.5, 1.5)),
                                 BoundProfile(Eigen::Vector3d(9.0, 9.0, 9.0)));
  model.name = "murray-3dof";
  return model;
}

RobotModel constant_inertia_model(Eigen::MatrixXd mass_matrix,
                                  Eigen::VectorXd external_force,
                                  BoundProfile velocity,
                                  BoundProfile acceleration,
                                  BoundProfile torque) {
  const Eigen::Index p = mass_matrix.rows();
  if (mass_matrix.cols() != p || external_force.size() != p) {
    throw InvalidInput("constant model: inconsistent dimensions");
  }
  RobotModel model;
  model.name = "constant-inertia";
  model.dof = static_cast<std::size_t>(p);
  model.mass_matrix = [mass_matrix](const Eigen::VectorXd&) { return mass_matrix; };
  model.coriolis = [p](const Eigen::VectorXd&, const Eigen::VectorXd&) {
    return Eigen::MatrixXd::Zero(p, p).eval();
  };
  model.external_force = [external_force](const Eigen::VectorXd&) {
    return external_force;
  };
  model.velocity_limit = std::move(velocity);
  model.acceleration_limit = std::move(acceleration);
  model.torque_limit = std::move(torque);
  return model;
}

ProjectedCoefficients project_dynamics(const RobotModel& model,
                                       const PathSpline& path, double s) {
  ProjectedCoefficients out;
  out.point = path.evaluate(s);
  const Eigen::MatrixXd mass = model.mass_matrix(out.point.position);
  out.d = mass * out.point.tangent;
  out.c = mass * out.point.curvature +
          model.coriolis(out.point.position, out.point.tangent) * out.point.tangent;
  out.g = model.external_force(out.point.position);
  return out;
}

}  // namespace pathspeed
