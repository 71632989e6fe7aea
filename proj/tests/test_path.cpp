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

#include <gtest/gtest.h>

#include "pathspeed/cli/config.hpp"
#include "pathspeed/error.hpp"
#include "pathspeed/path.hpp"

namespace pathspeed {
namespace {

TEST(PathSpline, StraightLine) {
  Eigen::MatrixXd w(3, 2);
  w << 0.0, 0.0, 1.5, 2.0, 3.0, 4.0;
  const PathSpline path = PathSpline::build(w);
  EXPECT_NEAR(path.length(), 5.0, 1e-12);
  for (double s : {0.0, 0.7, 2.5, 4.9, 5.0}) {
    const PathSpline::Point p = path.evaluate(s);
    EXPECT_NEAR(p.position(0), 0.6 * s, 1e-9);
    EXPECT_NEAR(p.position(1), 0.8 * s, 1e-9);
    EXPECT_NEAR(p.tangent(0), 0.6, 1e-12);
    EXPECT_NEAR(p.tangent(1), 0.8, 1e-12);
    EXPECT_NEAR(p.curvature.norm(), 0.0, 1e-9);
  }
}

TEST(PathSpline, ClampsOutsideTheDomain) {
  Eigen::MatrixXd w(2, 1);
  w << 1.0, 3.0;
  const PathSpline path = PathSpline::build(w);
  EXPECT_DOUBLE_EQ(path.position(-1.0)(0), 1.0);
  EXPECT_DOUBLE_EQ(path.position(10.0)(0), 3.0);
}

class BundledPath : public ::testing::Test {
 protected:
  PathSpline path = PathSpline::build(cli::bundled_waypoints());
};

TEST_F(BundledPath, UnitSpeedAndOrthogonalCurvature) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0.0, path.length());
  for (int k = 0; k < 500; ++k) {
    const PathSpline::Point p = path.evaluate(u(rng));
    EXPECT_NEAR(p.tangent.norm(), 1.0, 1e-9);
    EXPECT_NEAR(p.tangent.dot(p.curvature), 0.0, 1e-7);
  }
}

TEST_F(BundledPath, DerivativesMatchFiniteDifferences) {
  const double eps = 1e-5;
  for (double s : {0.3, 1.7, 2.9, 4.4, 5.2}) {
    const PathSpline::Point p = path.evaluate(s);
    const Eigen::VectorXd fd1 = (path.position(s + eps) - path.position(s - eps)) / (2 * eps);
    const Eigen::VectorXd fd2 = (path.tangent(s + eps) - path.tangent(s - eps)) / (2 * eps);
    EXPECT_LT((fd1 - p.tangent).norm(), 1e-8);
    EXPECT_LT((fd2 - p.curvature).norm(), 1e-5);
  }
}

TEST_F(BundledPath, PassesThroughWaypoints) {
  const Eigen::MatrixXd w = cli::bundled_waypoints();
  EXPECT_LT((path.position(0.0) - w.row(0).transpose()).norm(), 1e-12);
  EXPECT_LT((path.position(path.length()) - w.row(4).transpose()).norm(), 1e-9);
  // Interior waypoints sit at parameter k/4; find their arc length by
  // bisection on parameter_at.
  for (int k = 1; k < 4; ++k) {
    double lo = 0.0, hi = path.length();
    for (int it = 0; it < 100; ++it) {
      const double mid = 0.5 * (lo + hi);
      (path.parameter_at(mid) < 0.25 * k ? lo : hi) = mid;
    }
    EXPECT_LT((path.position(lo) - w.row(k).transpose()).norm(), 1e-9);
  }
}

TEST_F(BundledPath, ParameterIsMonotone) {
  double previous = -1.0;
  for (int k = 0; k <= 1000; ++k) {
    const double lambda = path.parameter_at(path.length() * k / 1000.0);
    EXPECT_GT(lambda, previous);
    previous = lambda;
  }
  EXPECT_NEAR(previous, 1.0, 1e-12);
}

TEST(PathSpline, RejectsBadWaypoints) {
  EXPECT_THROW(PathSpline::build(Eigen::MatrixXd::Zero(1, 3)), InvalidInput);
  Eigen::MatrixXd repeated(3, 2);
  repeated << 0, 0, 0, 0, 1, 1;
  EXPECT_THROW(PathSpline::build(repeated), InvalidInput);
  Eigen::MatrixXd nan(2, 2);
  nan << 0, 0, std::numeric_limits<double>::quiet_NaN(), 1;
  EXPECT_THROW(PathSpline::build(nan), InvalidInput);
}

}  // namespace
}  // namespace pathspeed
