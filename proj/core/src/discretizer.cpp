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

#include "pathspeed/discretizer.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "pathspeed/error.hpp"

namespace pathspeed {
namespace {

void require_limits(const BoundProfile& profile, std::size_t dof,
                    const char* what) {
  if (profile.dof() != dof) {
    throw InvalidInput(std::string(what) + " limits have " +
                       std::to_string(profile.dof()) + " entries, model has " +
                       std::to_string(dof) + " joints");
  }
}

void require_positive(const Eigen::MatrixXd& limits, const char* what) {
  for (Eigen::Index i = 0; i < limits.cols(); ++i) {
    for (Eigen::Index j = 0; j < limits.rows(); ++j) {
      if (!(limits(j, i) > 0.0)) {
        throw InvalidInput(std::string(what) + " limit of joint " +
                           std::to_string(j) + " is not positive at sample " +
                           std::to_string(i));
      }
    }
  }
}

void merge_box(double* upper, double box) { *upper = std::min(*upper, box); }

}  // namespace

PathSamples sample_path(const RobotModel& model, const PathSpline& path,
                        std::size_t n) {
  if (n < 2) throw InvalidInput("at least two samples are required");
  const std::size_t p = model.dof;
  if (path.dof() != p) {
    throw InvalidInput("path has " + std::to_string(path.dof()) +
                       " joints, model has " + std::to_string(p));
  }
  require_limits(model.velocity_limit, p, "velocity");
  require_limits(model.acceleration_limit, p, "acceleration");
  require_limits(model.torque_limit, p, "torque");

  PathSamples out;
  out.n = n;
  out.length = path.length();
  out.h = out.length / static_cast<double>(n - 1);
  out.s.resize(n);
  const auto rows = static_cast<Eigen::Index>(p);
  const auto cols = static_cast<Eigen::Index>(n);
  for (Eigen::MatrixXd* m : {&out.d, &out.c, &out.g, &out.tangent, &out.curvature,
                             &out.velocity_limit, &out.acceleration_limit,
                             &out.torque_limit}) {
    m->resize(rows, cols);
  }
  for (std::size_t i = 0; i < n; ++i) {
    const double s = i + 1 == n ? out.length : static_cast<double>(i) * out.h;
    out.s[i] = s;
    const ProjectedCoefficients k = project_dynamics(model, path, s);
    const auto col = static_cast<Eigen::Index>(i);
    out.d.col(col) = k.d;
    out.c.col(col) = k.c;
    out.g.col(col) = k.g;
    out.tangent.col(col) = k.point.tangent;
    out.curvature.col(col) = k.point.curvature;
    out.velocity_limit.col(col) = model.velocity_limit.at(s);
    out.acceleration_limit.col(col) = model.acceleration_limit.at(s);
    out.torque_limit.col(col) = model.torque_limit.at(s);
  }
  return out;
}

EdgeConstraints two_sided_constraints(double coef_next, double coef_current,
                                      double lo, double hi) {
  // Normalize to coef_next >= 0, or coef_current > 0 when coef_next == 0.
  double a = coef_next;
  double b = coef_current;
  if (a < 0.0 || (a == 0.0 && b < 0.0)) {
    a = -a;
    b = -b;
    std::swap(lo, hi);
    lo = -lo;
    hi = -hi;
  }
  EdgeConstraints out;
  if (a == 0.0 && b == 0.0) return out;
  if (a == 0.0) {
    out.box_current = hi / b;
    return out;
  }
  if (b == 0.0) {
    out.box_next = hi / a;
    return out;
  }
  out.forward = LinearConstraint{-b / a, hi / a};
  if (b < 0.0) {
    out.backward = LinearConstraint{a / -b, -lo / -b};
  } else {
    out.backward = LinearConstraint{-a / b, hi / b};
  }
  return out;
}

EdgeConstraints torque_constraints(double d, double c, double g, double mu,
                                   double h, bool lambda) {
  const double sel = lambda ? 1.0 : 0.0;
  const double next = d + 2.0 * h * c * sel;
  const double current = -d + 2.0 * h * c * (1.0 - sel);
  return two_sided_constraints(next, current, -2.0 * h * (mu + g),
                               2.0 * h * (mu - g));
}

EdgeConstraints acceleration_constraints(double tangent, double curvature,
                                         double alpha, double h, bool eta) {
  return torque_constraints(tangent, curvature, 0.0, alpha, h, eta);
}

DiscretizedProblem discretize(const RobotModel& model, const PathSpline& path,
                              std::size_t n) {
  return discretize(sample_path(model, path, n));
}

DiscretizedProblem discretize(PathSamples samples) {
  const std::size_t n = samples.n;
  if (n < 2 || samples.s.size() != n) {
    throw InvalidInput("at least two samples are required");
  }
  const auto p = samples.d.rows();
  const auto cols = static_cast<Eigen::Index>(n);
  require_positive(samples.velocity_limit, "velocity");
  require_positive(samples.acceleration_limit, "acceleration");
  require_positive(samples.torque_limit, "torque");

  for (Eigen::Index i = 0; i < cols; ++i) {
    for (Eigen::Index j = 0; j < p; ++j) {
      const double g = samples.g(j, i);
      if (!(samples.torque_limit(j, i) > std::abs(g))) {
        throw AssumptionViolated(
            "torque limit of joint " + std::to_string(j) +
                " cannot balance the external force at s = " +
                std::to_string(samples.s[i]),
            static_cast<int>(j), samples.s[i]);
      }
    }
  }

  Eigen::MatrixXi lambda(p, cols);
  Eigen::MatrixXi eta(p, cols);
  for (Eigen::Index i = 0; i < cols; ++i) {
    for (Eigen::Index j = 0; j < p; ++j) {
      lambda(j, i) = samples.d(j, i) * samples.c(j, i) >= 0.0 ? 1 : 0;
      eta(j, i) = samples.tangent(j, i) * samples.curvature(j, i) >= 0.0 ? 1 : 0;
    }
  }

  std::vector<double> upper(n, kUnbounded);
  for (Eigen::Index i = 0; i < cols; ++i) {
    for (Eigen::Index j = 0; j < p; ++j) {
      const double t = samples.tangent(j, i);
      if (t != 0.0) {
        const double psi = samples.velocity_limit(j, i);
        merge_box(&upper[i], psi * psi / (t * t));
      }
    }
  }
  upper.front() = 0.0;
  upper.back() = 0.0;

  const double h = samples.h;
  std::vector<EdgeConstraints> emitted;
  emitted.reserve(2 * static_cast<std::size_t>(p));
  ChainProblem::Builder builder(upper);
  for (std::size_t e = 0; e + 1 < n; ++e) {
    const auto i = static_cast<Eigen::Index>(e);
    emitted.clear();
    for (Eigen::Index j = 0; j < p; ++j) {
      emitted.push_back(torque_constraints(samples.d(j, i), samples.c(j, i),
                                           samples.g(j, i),
                                           samples.torque_limit(j, i), h,
                                           lambda(j, i) == 1));
      emitted.push_back(acceleration_constraints(
          samples.tangent(j, i), samples.curvature(j, i),
          samples.acceleration_limit(j, i), h, eta(j, i) == 1));
    }
    for (const EdgeConstraints& k : emitted) {
      if (k.forward) builder.add(e, Direction::kForward, *k.forward);
      if (k.backward) builder.add(e, Direction::kBackward, *k.backward);
      merge_box(&upper[e], k.box_current);
      merge_box(&upper[e + 1], k.box_next);
    }
  }
  ChainProblem chain = std::move(builder).build().with_upper_bounds(upper);
  return DiscretizedProblem{std::move(samples), std::move(lambda),
                            std::move(eta), std::move(chain)};
}

namespace {

Eigen::MatrixXd recover(const DiscretizedProblem& problem,
                        const std::vector<double>& b, const Eigen::MatrixXd& first,
                        const Eigen::MatrixXd& second,
                        const Eigen::MatrixXi& selector,
                        const Eigen::MatrixXd* offset) {
  const std::size_t n = problem.size();
  if (b.size() != n) {
    throw InvalidInput("solution has " + std::to_string(b.size()) +
                       " entries, problem has " + std::to_string(n));
  }
  const double h = problem.step();
  const auto p = first.rows();
  Eigen::MatrixXd out(static_cast<Eigen::Index>(n - 1), p);
  for (std::size_t e = 0; e + 1 < n; ++e) {
    const auto i = static_cast<Eigen::Index>(e);
    const double a = (b[e + 1] - b[e]) / (2.0 * h);
    for (Eigen::Index j = 0; j < p; ++j) {
      const double bhat = selector(j, i) == 1 ? b[e + 1] : b[e];
      double v = first(j, i) * a + second(j, i) * bhat;
      if (offset != nullptr) v += (*offset)(j, i);
      out(i, j) = v;
    }
  }
  return out;
}

}  // namespace

Eigen::MatrixXd recover_torque(const DiscretizedProblem& problem,
                               const std::vector<double>& b) {
  return recover(problem, b, problem.samples.d, problem.samples.c, problem.lambda,
                 &problem.samples.g);
}

Eigen::MatrixXd recover_acceleration(const DiscretizedProblem& problem,
                                     const std::vector<double>& b) {
  return recover(problem, b, problem.samples.tangent, problem.samples.curvature,
                 problem.eta, nullptr);
}

}  // namespace pathspeed
