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

#include <cmath>
#include <limits>
#include <random>

#include <Eigen/Dense>
#include <gtest/gtest.h>

#include "pathspeed/cli/config.hpp"
#include "pathspeed/error.hpp"
#include "pathspeed/profile.hpp"

namespace pathspeed {
namespace {

TEST(QuadraticSpline, ConstantData) {
  const QuadraticSpline q = build_spline(std::vector<double>(7, 2.5), 0.3);
  for (double s = 0.0; s <= 1.8; s += 0.01) {
    EXPECT_NEAR(q.value(s), 2.5, 1e-15);
    EXPECT_NEAR(q.derivative(s), 0.0, 1e-15);
  }
}

TEST(QuadraticSpline, ThreeNodes) {
  const QuadraticSpline q = build_spline({0.0, 2.0, 4.0}, 1.0);
  const QuadraticSpline::Piece& mid = q.pieces()[1];
  EXPECT_DOUBLE_EQ(mid.x, 2.0);
  EXPECT_DOUBLE_EQ(mid.y, 2.0);
  EXPECT_DOUBLE_EQ(mid.z, 0.0);
  // Boundary pieces are linear with the edge slope.
  EXPECT_DOUBLE_EQ(q.pieces()[0].y, 2.0);
  EXPECT_DOUBLE_EQ(q.pieces()[0].z, 0.0);
}

TEST(QuadraticSpline, InterpolationConditions) {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(0.0, 5.0);
  for (std::size_t n = 2; n <= 60; ++n) {
    const double h = 0.01 + u(rng) / 10.0;
    std::vector<double> b(n);
    for (double& v : b) v = u(rng);
    const QuadraticSpline q = build_spline(b, h);
    EXPECT_NEAR(q.value(0.0), b.front(), 1e-12);
    EXPECT_NEAR(q.value(h * (n - 1)), b.back(), 1e-12);
    for (std::size_t i = 0; i + 1 < n; ++i) {
      const double mid = h * (i + 0.5);
      // Both pieces meeting at the midpoint, evaluated in local coordinates.
      for (std::size_t k : {i, i + 1}) {
        const QuadraticSpline::Piece& p = q.pieces()[k];
        const double t = mid - h * static_cast<double>(k);
        EXPECT_NEAR(p.x + p.y * t + p.z * t * t, 0.5 * (b[i] + b[i + 1]), 1e-12);
        EXPECT_NEAR(p.y + 2.0 * p.z * t, (b[i + 1] - b[i]) / h, 1e-12 / h);
      }
    }
  }
}

TEST(QuadraticSpline, InteriorPiecesSolveTheirLinearSystem) {
  std::mt19937_64 rng(32);
  std::uniform_real_distribution<double> u(0.0, 5.0);
  const double h = 0.2;
  std::vector<double> b(12);
  for (double& v : b) v = u(rng);
  const QuadraticSpline q = build_spline(b, h);
  for (std::size_t k = 1; k + 1 < b.size(); ++k) {
    // Value at both half nodes and slope at the left one.
    Eigen::Matrix3d m;
    m << 1.0, -h / 2, h * h / 4,
         1.0, h / 2, h * h / 4,
         0.0, 1.0, -h;
    const Eigen::Vector3d rhs(0.5 * (b[k - 1] + b[k]), 0.5 * (b[k] + b[k + 1]),
                              (b[k] - b[k - 1]) / h);
    const Eigen::Vector3d xyz = m.lu().solve(rhs);
    const QuadraticSpline::Piece& p = q.pieces()[k];
    EXPECT_NEAR(p.x, xyz(0), 1e-12);
    EXPECT_NEAR(p.y, xyz(1), 1e-11);
    EXPECT_NEAR(p.z, xyz(2), 1e-10);
    // The right slope condition is implied.
    EXPECT_NEAR(p.y + h * p.z, (b[k + 1] - b[k]) / h, 1e-10);
  }
}

TEST(QuadraticSpline, RejectsBadInput) {
  EXPECT_THROW(build_spline({1.0}, 0.1), InvalidInput);
  EXPECT_THROW(build_spline({1.0, 2.0}, 0.0), InvalidInput);
}

TEST(TravelTime, Examples) {
  EXPECT_NEAR(travel_time(std::vector<double>(11, 1.0), 0.1), 1.0, 1e-15);
  EXPECT_DOUBLE_EQ(travel_time({0.0, 1.0, 0.0}, 1.0), 4.0);
  EXPECT_EQ(travel_time({0.0, 0.0, 1.0}, 1.0), std::numeric_limits<double>::infinity());
  EXPECT_THROW(travel_time({0.0, -1.0, 0.0}, 1.0), InvalidInput);
}

TEST(TravelTime, NonIncreasingInEachNode) {
  std::mt19937_64 rng(33);
  std::uniform_real_distribution<double> u(0.0, 4.0);
  std::vector<double> b(20);
  for (double& v : b) v = u(rng);
  const double base = travel_time(b, 0.1);
  for (std::size_t i = 0; i < b.size(); ++i) {
    std::vector<double> more = b;
    more[i] += u(rng);
    EXPECT_LE(travel_time(more, 0.1), base);
  }
}

// Profile with data b on a one-joint straight path of the same length.
struct LineCase {
  SpeedProfile profile;
  PathSpline path;
};

LineCase line_case(std::vector<double> b, double h) {
  Eigen::MatrixXd w(2, 1);
  w << 0.0, h * static_cast<double>(b.size() - 1);
  SpeedProfile profile;
  profile.spline = build_spline(b, h);
  profile.travel_time = travel_time(b, h);
  profile.b = std::move(b);
  return {std::move(profile), PathSpline::build(w)};
}

TEST(TimeParametrize, ConstantSpeed) {
  const LineCase c = line_case(std::vector<double>(21, 1.0), 0.1);
  const Trajectory t = time_parametrize(c.profile, c.path, 1e-3);
  EXPECT_NEAR(t.duration, 2.0, 1e-12);
  for (std::size_t k = 0; k < t.t.size(); ++k) {
    EXPECT_NEAR(t.s[k], t.t[k], 1e-12);
    EXPECT_NEAR(t.qd(static_cast<Eigen::Index>(k), 0), 1.0, 1e-12);
  }
}

TEST(TimeParametrize, StartFromRest) {
  // b(s) = 4 s on [0, 1]: s' = 2 sqrt(s), s(t) = t^2, arrival at t = 1.
  const std::size_t n = 101;
  std::vector<double> b(n);
  for (std::size_t i = 0; i < n; ++i) b[i] = 4.0 * static_cast<double>(i) / (n - 1);
  const LineCase c = line_case(b, 1.0 / (n - 1));
  const Trajectory t = time_parametrize(c.profile, c.path, 1e-3);
  EXPECT_NEAR(t.duration, 1.0, 1e-9);
  for (std::size_t k = 0; k < t.t.size(); k += 50) {
    EXPECT_NEAR(t.s[k], t.t[k] * t.t[k], 1e-9);
  }
}

TEST(TimeParametrize, StallsOnInteriorZero) {
  const LineCase c = line_case({0.0, 1.0, 0.0, 0.0, 1.0, 0.0}, 0.2);
  EXPECT_THROW(time_parametrize(c.profile, c.path, 1e-3), Stall);
  EXPECT_THROW(time_parametrize(c.profile, c.path, 0.0), InvalidInput);
}

class BundledProfile : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    model_ = new RobotModel(bundled_3dof_model());
    path_ = new PathSpline(PathSpline::build(cli::bundled_waypoints()));
  }
  static void TearDownTestSuite() {
    delete model_;
    delete path_;
  }
  static RobotModel* model_;
  static PathSpline* path_;
};
RobotModel* BundledProfile::model_ = nullptr;
PathSpline* BundledProfile::path_ = nullptr;

TEST_F(BundledProfile, ProfileFields) {
  const DiscretizedProblem p = discretize(*model_, *path_, 200);
  const SpeedProfile prof = make_profile(p, solve_chain(p.chain).v);
  EXPECT_EQ(prof.b.front(), 0.0);
  EXPECT_EQ(prof.b.back(), 0.0);
  EXPECT_EQ(prof.a.size(), 199u);
  EXPECT_EQ(prof.tau.rows(), 199);
  EXPECT_EQ(prof.tau_spline.size(), 3u);
  EXPECT_DOUBLE_EQ(prof.travel_time, travel_time(prof.b, p.step()));
  // Interior torque nodes average the adjacent edges.
  EXPECT_DOUBLE_EQ(prof.tau_spline[1].nodes()[5], 0.5 * (prof.tau(4, 1) + prof.tau(5, 1)));
  EXPECT_DOUBLE_EQ(prof.tau_spline[1].nodes()[0], prof.tau(0, 1));
  EXPECT_THROW(make_profile(p, {0.0}), InvalidInput);
}

TEST_F(BundledProfile, AuditZeroProfile) {
  const DiscretizedProblem p = discretize(*model_, *path_, 100);
  const SpeedProfile prof = make_profile(p, std::vector<double>(100, 0.0));
  const FeasibilityReport r = audit_feasibility(prof, p, *model_, *path_, 2000);
  EXPECT_EQ(r.grid.max(), 0.0);
  EXPECT_EQ(r.continuous.max(), 0.0);
  EXPECT_EQ(r.undershoot_points, 0u);
}

TEST_F(BundledProfile, AuditExactAtSamples) {
  const DiscretizedProblem p = discretize(*model_, *path_, 400);
  const SpeedProfile prof = make_profile(p, solve_chain(p.chain).v);
  const FeasibilityReport r = audit_feasibility(prof, p, *model_, *path_, 4000);
  EXPECT_LE(r.grid.max(), 1e-9);
  EXPECT_GT(r.continuous.max(), 0.0);
  EXPECT_LT(r.continuous.max(), 0.05);
}

TEST_F(BundledProfile, TrajectoryMatchesTravelTime) {
  const DiscretizedProblem p = discretize(*model_, *path_, 300);
  const SpeedProfile prof = make_profile(p, solve_chain(p.chain).v);
  const Trajectory t = time_parametrize(prof, *path_, 1e-3);
  EXPECT_LT(std::abs(t.duration / prof.travel_time - 1.0), 0.005);
  EXPECT_NEAR(t.s.back(), path_->length(), 1e-12);
  EXPECT_EQ(t.q.rows(), static_cast<Eigen::Index>(t.t.size()));
  for (std::size_t k = 1; k < t.t.size(); ++k) EXPECT_GE(t.s[k], t.s[k - 1]);
}

}  // namespace
}  // namespace pathspeed
