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

#include "pathspeed/profile.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "pathspeed/error.hpp"

namespace pathspeed {
namespace {

constexpr double kStallSpeed = 1e-12;
constexpr std::size_t kMaxSteps = 100'000'000;

double relative_excess(double value, double limit) {
  return std::max(0.0, std::abs(value) / limit - 1.0);
}

}  // namespace

QuadraticSpline::QuadraticSpline(std::vector<double> nodes, double h)
    : nodes_(std::move(nodes)), h_(h) {
  const std::size_t n = nodes_.size();
  if (n < 2) throw InvalidInput("quadratic spline needs at least two nodes");
  if (!(h > 0.0)) throw InvalidInput("quadratic spline step must be positive");
  const std::vector<double>& b = nodes_;
  pieces_.resize(n);
  pieces_.front() = {b[0], (b[1] - b[0]) / h, 0.0};
  pieces_.back() = {b[n - 1], (b[n - 1] - b[n - 2]) / h, 0.0};
  for (std::size_t k = 1; k + 1 < n; ++k) {
    pieces_[k].x = (6.0 * b[k] + b[k - 1] + b[k + 1]) / 8.0;
    pieces_[k].y = (b[k + 1] - b[k - 1]) / (2.0 * h);
    pieces_[k].z = (b[k + 1] + b[k - 1] - 2.0 * b[k]) / (2.0 * h * h);
  }
}

std::size_t QuadraticSpline::piece_index(double s) const {
  const double k = std::floor(s / h_ + 0.5);
  if (!(k > 0.0)) return 0;
  return std::min(static_cast<std::size_t>(k), pieces_.size() - 1);
}

double QuadraticSpline::value(double s) const {
  s = std::clamp(s, 0.0, length());
  const std::size_t k = piece_index(s);
  const Piece& p = pieces_[k];
  const double u = s - static_cast<double>(k) * h_;
  return p.x + u * (p.y + u * p.z);
}

double QuadraticSpline::derivative(double s) const {
  s = std::clamp(s, 0.0, length());
  const std::size_t k = piece_index(s);
  const Piece& p = pieces_[k];
  return p.y + 2.0 * p.z * (s - static_cast<double>(k) * h_);
}

double QuadraticSpline::second_derivative(double s) const {
  return 2.0 * pieces_[piece_index(std::clamp(s, 0.0, length()))].z;
}

QuadraticSpline build_spline(std::vector<double> b, double h) {
  return QuadraticSpline(std::move(b), h);
}

double travel_time(const std::vector<double>& b, double h) {
  for (std::size_t i = 0; i < b.size(); ++i) {
    if (b[i] < 0.0) {
      throw InvalidInput("negative squared speed at node " + std::to_string(i));
    }
  }
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < b.size(); ++i) {
    const double den = std::sqrt(b[i]) + std::sqrt(b[i + 1]);
    if (den == 0.0) return std::numeric_limits<double>::infinity();
    sum += 1.0 / den;
  }
  return 2.0 * h * sum;
}

SpeedProfile make_profile(const DiscretizedProblem& problem, std::vector<double> b) {
  const std::size_t n = problem.size();
  if (b.size() != n) {
    throw InvalidInput("solution has " + std::to_string(b.size()) +
                       " entries, problem has " + std::to_string(n));
  }
  const double h = problem.step();
  SpeedProfile out;
  out.travel_time = travel_time(b, h);
  out.a.resize(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) out.a[i] = (b[i + 1] - b[i]) / (2.0 * h);
  out.tau = recover_torque(problem, b);

  // Edge torques sit between nodes; node values average the adjacent edges,
  // with the first and last edge repeated at the ends.
  const auto edges = out.tau.rows();
  for (Eigen::Index j = 0; j < out.tau.cols(); ++j) {
    std::vector<double> nodes(n);
    for (std::size_t i = 0; i < n; ++i) {
      const auto left = static_cast<Eigen::Index>(i == 0 ? 0 : i - 1);
      const auto right = std::min(static_cast<Eigen::Index>(i), edges - 1);
      nodes[i] = 0.5 * (out.tau(left, j) + out.tau(right, j));
    }
    out.tau_spline.emplace_back(std::move(nodes), h);
  }
  out.spline = QuadraticSpline(b, h);
  out.b = std::move(b);
  return out;
}

Trajectory time_parametrize(const SpeedProfile& profile, const PathSpline& path,
                            double dt) {
  if (!(dt > 0.0)) throw InvalidInput("time step must be positive");
  const QuadraticSpline& spline = profile.spline;
  const double length = spline.length();
  const double h = spline.step();
  const auto speed = [&](double s) {
    return std::sqrt(std::max(0.0, spline.value(std::min(s, length))));
  };

  std::vector<double> times, positions;
  std::vector<double> speeds;
  times.push_back(0.0);
  positions.push_back(0.0);
  speeds.push_back(speed(0.0));

  double s = 0.0;
  double t = 0.0;
  bool arrived = false;
  for (std::size_t step = 0; !arrived; ++step) {
    if (step == kMaxSteps) {
      throw Stall("time parametrization exceeded its step budget", s);
    }
    double remaining = dt;
    while (remaining > 0.0) {
      std::size_t k = spline.piece_index(s);
      if (s >= (static_cast<double>(k) + 0.5) * h && k + 1 < spline.pieces().size()) {
        ++k;
      }
      const QuadraticSpline::Piece& piece = spline.pieces()[k];
      const double end = std::min(length, (static_cast<double>(k) + 0.5) * h);
      const double r0 = speed(s);

      if (piece.z == 0.0) {
        const double slope = piece.y;
        if (r0 < kStallSpeed && slope <= 0.0) {
          throw Stall("path speed vanished before the end of the path", s);
        }
        const double r_end = speed(end);
        const double t_end =
            slope != 0.0 ? 2.0 * (r_end - r0) / slope : (end - s) / r0;
        if (t_end <= remaining) {
          s = end;
          remaining -= t_end;
          if (end >= length) {
            arrived = true;
            break;
          }
        } else {
          const double r = r0 + 0.5 * slope * remaining;
          const double b0 = r0 * r0;
          s = slope != 0.0 ? s + (r * r - b0) / slope : s + r0 * remaining;
          s = std::min(s, end);
          remaining = 0.0;
        }
        continue;
      }

      if (r0 < kStallSpeed) {
        throw Stall("path speed vanished before the end of the path", s);
      }
      const auto rk4 = [&](double step) {
        const double k2 = speed(s + 0.5 * step * r0);
        const double k3 = speed(s + 0.5 * step * k2);
        const double k4 = speed(s + step * k3);
        return s + step * (r0 + 2.0 * k2 + 2.0 * k3 + k4) / 6.0;
      };
      const double s1 = rk4(remaining);
      if (s1 >= end) {
        const std::size_t next = std::min(k + 1, spline.pieces().size() - 1);
        if (end >= length || spline.pieces()[next].z == 0.0) {
          // Stop at the piece boundary and continue in closed form. The
          // shortened step that lands on it is found by bisection.
          double lo = 0.0;
          double hi = remaining;
          for (int it = 0; it < 60 && hi - lo > 1e-17; ++it) {
            const double mid = 0.5 * (lo + hi);
            (rk4(mid) < end ? lo : hi) = mid;
          }
          const double used = hi;
          s = end;
          remaining -= used;
          if (end >= length) {
            arrived = true;
            break;
          }
          continue;
        }
      }
      s = s1;
      remaining = 0.0;
    }
    t += dt - remaining;
    times.push_back(t);
    positions.push_back(std::min(s, length));
    speeds.push_back(speed(s));
  }

  Trajectory out;
  out.duration = t;
  out.t = std::move(times);
  out.s = std::move(positions);
  const auto rows = static_cast<Eigen::Index>(out.t.size());
  const auto p = static_cast<Eigen::Index>(path.dof());
  out.q.resize(rows, p);
  out.qd.resize(rows, p);
  out.tau.resize(rows, static_cast<Eigen::Index>(profile.tau_spline.size()));
  for (Eigen::Index r = 0; r < rows; ++r) {
    const double sr = out.s[static_cast<std::size_t>(r)];
    const PathSpline::Point point = path.evaluate(sr);
    out.q.row(r) = point.position.transpose();
    out.qd.row(r) = (point.tangent * speeds[static_cast<std::size_t>(r)]).transpose();
    for (std::size_t j = 0; j < profile.tau_spline.size(); ++j) {
      out.tau(r, static_cast<Eigen::Index>(j)) = profile.tau_spline[j].value(sr);
    }
  }
  return out;
}

double ViolationSummary::max() const {
  return std::max({torque, acceleration, velocity});
}

FeasibilityReport audit_feasibility(const SpeedProfile& profile,
                                    const DiscretizedProblem& problem,
                                    const RobotModel& model,
                                    const PathSpline& path, std::size_t grid) {
  FeasibilityReport report;
  const PathSamples& sm = problem.samples;
  const Eigen::MatrixXd tau = recover_torque(problem, profile.b);
  const Eigen::MatrixXd qdd = recover_acceleration(problem, profile.b);
  for (Eigen::Index i = 0; i < tau.rows(); ++i) {
    for (Eigen::Index j = 0; j < tau.cols(); ++j) {
      report.grid.torque = std::max(
          report.grid.torque, relative_excess(tau(i, j), sm.torque_limit(j, i)));
      report.grid.acceleration =
          std::max(report.grid.acceleration,
                   relative_excess(qdd(i, j), sm.acceleration_limit(j, i)));
    }
  }
  for (std::size_t i = 0; i < sm.n; ++i) {
    const auto col = static_cast<Eigen::Index>(i);
    for (Eigen::Index j = 0; j < sm.tangent.rows(); ++j) {
      const double psi = sm.velocity_limit(j, col);
      const double t = sm.tangent(j, col);
      report.grid.velocity = std::max(
          report.grid.velocity, relative_excess(t * t * profile.b[i], psi * psi));
    }
  }

  grid = std::max<std::size_t>(grid, 2);
  const double length = profile.spline.length();
  report.min_spline_value = std::numeric_limits<double>::infinity();
  for (std::size_t m = 0; m < grid; ++m) {
    const double s =
        m + 1 == grid ? length : length * static_cast<double>(m) / (grid - 1);
    const double raw = profile.spline.value(s);
    report.min_spline_value = std::min(report.min_spline_value, raw);
    if (raw < 0.0) ++report.undershoot_points;
    const double b = std::max(0.0, raw);
    const double a = 0.5 * profile.spline.derivative(s);
    const ProjectedCoefficients k = project_dynamics(model, path, s);
    const Eigen::VectorXd torque = k.d * a + k.c * b + k.g;
    const Eigen::VectorXd accel = k.point.tangent * a + k.point.curvature * b;
    const Eigen::VectorXd mu = model.torque_limit.at(s);
    const Eigen::VectorXd alpha = model.acceleration_limit.at(s);
    const Eigen::VectorXd psi = model.velocity_limit.at(s);
    for (Eigen::Index j = 0; j < torque.size(); ++j) {
      ViolationSummary& c = report.continuous;
      c.torque = std::max(c.torque, relative_excess(torque(j), mu(j)));
      c.acceleration = std::max(c.acceleration, relative_excess(accel(j), alpha(j)));
      const double t = k.point.tangent(j);
      c.velocity = std::max(c.velocity, relative_excess(t * t * b, psi(j) * psi(j)));
    }
  }
  return report;
}

}  // namespace pathspeed
