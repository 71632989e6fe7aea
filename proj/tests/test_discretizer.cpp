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
#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "pathspeed/cli/config.hpp"
#include "pathspeed/discretizer.hpp"
#include "pathspeed/error.hpp"
#include "pathspeed/profile.hpp"

namespace pathspeed {
namespace {

// One joint, constant coefficients at every sample.
PathSamples uniform_samples(std::size_t n, double h, double d, double c, double g,
                            double tangent, double curvature, double psi,
                            double alpha, double mu) {
  PathSamples s;
  s.n = n;
  s.h = h;
  s.length = h * static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) s.s.push_back(h * static_cast<double>(i));
  const auto fill = [n](double v) {
    return Eigen::MatrixXd::Constant(1, static_cast<Eigen::Index>(n), v);
  };
  s.d = fill(d);
  s.c = fill(c);
  s.g = fill(g);
  s.tangent = fill(tangent);
  s.curvature = fill(curvature);
  s.velocity_limit = fill(psi);
  s.acceleration_limit = fill(alpha);
  s.torque_limit = fill(mu);
  return s;
}

TEST(TorqueConstraints, PositiveProduct) {
  const EdgeConstraints k = torque_constraints(1.0, 1.0, 0.0, 9.0, 0.05, true);
  ASSERT_TRUE(k.forward && k.backward);
  EXPECT_NEAR(k.forward->slope, 10.0 / 11.0, 1e-15);
  EXPECT_NEAR(k.forward->intercept, 9.0 / 11.0, 1e-15);
  EXPECT_NEAR(k.backward->slope, 1.1, 1e-15);
  EXPECT_NEAR(k.backward->intercept, 0.9, 1e-15);
}

TEST(TorqueConstraints, NegativeProductUsesCurrentSample) {
  // d = 1, c = -1: b_hat = b_i, so  -9 <= (b_{i+1} - b_i) / 0.1 - b_i <= 9.
  const EdgeConstraints k = torque_constraints(1.0, -1.0, 0.0, 9.0, 0.05, false);
  ASSERT_TRUE(k.forward && k.backward);
  EXPECT_NEAR(k.forward->slope, 1.1, 1e-15);
  EXPECT_NEAR(k.forward->intercept, 0.9, 1e-15);
  EXPECT_NEAR(k.backward->slope, 1.0 / 1.1, 1e-15);
  EXPECT_NEAR(k.backward->intercept, 0.9 / 1.1, 1e-15);
}

TEST(TorqueConstraints, BothNegative) {
  // Mirror of the positive case: the same constraint set.
  const EdgeConstraints a = torque_constraints(1.0, 1.0, 0.0, 9.0, 0.05, true);
  const EdgeConstraints b = torque_constraints(-1.0, -1.0, 0.0, 9.0, 0.05, true);
  EXPECT_NEAR(a.forward->slope, b.forward->slope, 1e-15);
  EXPECT_NEAR(a.forward->intercept, b.forward->intercept, 1e-15);
  EXPECT_NEAR(a.backward->slope, b.backward->slope, 1e-15);
}

TEST(TorqueConstraints, ZeroInertiaGivesSignAwareBox) {
  const EdgeConstraints up = torque_constraints(0.0, 2.0, 1.0, 9.0, 0.05, true);
  EXPECT_FALSE(up.forward);
  EXPECT_NEAR(up.box_next, 4.0, 1e-15);
  const EdgeConstraints down = torque_constraints(0.0, -2.0, 1.0, 9.0, 0.05, true);
  EXPECT_NEAR(down.box_next, 5.0, 1e-15);
  EXPECT_EQ(up.box_current, kUnbounded);
}

TEST(TorqueConstraints, ZeroCentrifugalGivesUnitSlopes) {
  // |2 (b_{i+1} - b_i) + 2h g| <= 2h mu with d = 2, h = 0.05, g = 1, mu = 9.
  const EdgeConstraints k = torque_constraints(2.0, 0.0, 1.0, 9.0, 0.05, true);
  EXPECT_DOUBLE_EQ(k.forward->slope, 1.0);
  EXPECT_NEAR(k.forward->intercept, 0.1 * 8.0 / 2.0, 1e-15);
  EXPECT_DOUBLE_EQ(k.backward->slope, 1.0);
  EXPECT_NEAR(k.backward->intercept, 0.1 * 10.0 / 2.0, 1e-15);
}

TEST(TorqueConstraints, NothingWhenBothCoefficientsVanish) {
  const EdgeConstraints k = torque_constraints(0.0, 0.0, 1.0, 9.0, 0.05, true);
  EXPECT_FALSE(k.forward);
  EXPECT_FALSE(k.backward);
  EXPECT_EQ(k.box_next, kUnbounded);
  EXPECT_EQ(k.box_current, kUnbounded);
}

TEST(TorqueConstraints, SelectorRuleKeepsSlopesPositive) {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  int flipped_negative = 0;
  for (int k = 0; k < 1000; ++k) {
    const double d = coef(rng);
    const double c = coef(rng);
    const double h = 0.5;
    const bool rule = d * c >= 0.0;
    for (bool lambda : {rule, !rule}) {
      const EdgeConstraints e = torque_constraints(d, c, 0.1, 1.0, h, lambda);
      bool negative = false;
      for (const auto& l : {e.forward, e.backward}) {
        if (l && check_assumption(*l, Direction::kBackward)) negative = true;
      }
      if (lambda == rule) {
        EXPECT_FALSE(negative) << "d=" << d << " c=" << c;
      } else if (negative) {
        ++flipped_negative;
      }
    }
  }
  EXPECT_GT(flipped_negative, 0);
}

TEST(Discretize, VelocityBoxAndEndpoints) {
  PathSamples s = uniform_samples(4, 0.1, 1.0, 0.0, 0.0, 1.0, 0.0, 2.0, 100.0, 100.0);
  s.tangent = Eigen::MatrixXd::Zero(3, 4);
  s.tangent.row(0).setOnes();
  for (Eigen::MatrixXd* m : {&s.d, &s.c, &s.g, &s.curvature, &s.velocity_limit,
                             &s.acceleration_limit, &s.torque_limit}) {
    *m = m->replicate(3, 1).eval();
  }
  s.d = s.tangent;
  const DiscretizedProblem p = discretize(s);
  ASSERT_TRUE(p.chain.valid()) << *p.chain.diagnostic();
  const std::vector<double>& u = p.chain.upper_bounds();
  EXPECT_EQ(u.front(), 0.0);
  EXPECT_EQ(u.back(), 0.0);
  EXPECT_DOUBLE_EQ(u[1], 4.0);
  EXPECT_DOUBLE_EQ(u[2], 4.0);
}

TEST(Discretize, SelectorsFollowSigns) {
  PathSamples s = uniform_samples(3, 0.1, 1.0, 1.0, 0.0, 1.0, -1.0, 2.0, 1.0, 9.0);
  s.c(0, 1) = -1.0;
  s.c(0, 2) = 0.0;
  const DiscretizedProblem p = discretize(s);
  EXPECT_EQ(p.lambda(0, 0), 1);
  EXPECT_EQ(p.lambda(0, 1), 0);
  EXPECT_EQ(p.lambda(0, 2), 1);
  EXPECT_EQ(p.eta(0, 0), 0);
}

TEST(Discretize, RejectsInsufficientTorque) {
  const PathSamples s = uniform_samples(3, 0.1, 1.0, 1.0, 2.0, 1.0, 0.0, 1.0, 1.0, 2.0);
  try {
    discretize(s);
    FAIL() << "expected AssumptionViolated";
  } catch (const AssumptionViolated& e) {
    EXPECT_EQ(e.joint(), 0);
    EXPECT_DOUBLE_EQ(e.position(), 0.0);
  }
}

TEST(Discretize, RejectsNonPositiveLimits) {
  EXPECT_THROW(discretize(uniform_samples(3, 0.1, 1, 1, 0, 1, 0, 1, 0.0, 2)), InvalidInput);
  EXPECT_THROW(discretize(uniform_samples(1, 0.1, 1, 1, 0, 1, 0, 1, 1, 2)), InvalidInput);
}

TEST(RecoverTorque, Statics) {
  const PathSamples s = uniform_samples(5, 0.1, 1.0, 0.5, 0.3, 1.0, 0.0, 1.0, 1.0, 2.0);
  const DiscretizedProblem p = discretize(s);
  const Eigen::MatrixXd tau = recover_torque(p, std::vector<double>(5, 0.0));
  ASSERT_EQ(tau.rows(), 4);
  for (Eigen::Index i = 0; i < 4; ++i) EXPECT_DOUBLE_EQ(tau(i, 0), 0.3);
}

TEST(RecoverTorque, SingleInteriorNode) {
  const double h = 0.1;
  const PathSamples s = uniform_samples(3, h, 1.0, 0.0, 0.0, 1.0, 0.0, 10.0, 10.0, 10.0);
  const DiscretizedProblem p = discretize(s);
  const Eigen::MatrixXd tau = recover_torque(p, {0.0, 2.0 * h, 0.0});
  EXPECT_NEAR(tau(0, 0), 1.0, 1e-15);
  EXPECT_NEAR(tau(1, 0), -1.0, 1e-15);
  const Eigen::MatrixXd qdd = recover_acceleration(p, {0.0, 2.0 * h, 0.0});
  EXPECT_NEAR(qdd(0, 0), 1.0, 1e-15);
  EXPECT_THROW(recover_torque(p, {0.0, 1.0}), InvalidInput);
}

class BundledProblem : public ::testing::Test {
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
RobotModel* BundledProblem::model_ = nullptr;
PathSpline* BundledProblem::path_ = nullptr;

TEST_F(BundledProblem, EveryConstraintPassesTheValidator) {
  const DiscretizedProblem p = discretize(*model_, *path_, 500);
  ASSERT_TRUE(p.chain.valid());
  std::size_t checked = 0;
  for (std::size_t i = 0; i < p.chain.edge_count(); ++i) {
    const EdgeView e = p.chain.edge(i);
    for (const LinearConstraint& c : e.forward_linear) {
      EXPECT_GT(c.slope, 0.0);
      EXPECT_GT(c.intercept, 0.0);
      EXPECT_FALSE(check_assumption(c, Direction::kForward));
      ++checked;
    }
    for (const LinearConstraint& c : e.backward_linear) {
      EXPECT_GT(c.slope, 0.0);
      EXPECT_GT(c.intercept, 0.0);
      EXPECT_FALSE(check_assumption(c, Direction::kBackward));
      ++checked;
    }
  }
  EXPECT_EQ(checked, p.chain.constraint_count());
  EXPECT_GT(checked, 0u);
}

TEST_F(BundledProblem, FeasiblePointsRespectLimits) {
  const DiscretizedProblem p = discretize(*model_, *path_, 300);
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const std::vector<double> top = solve_chain(p.chain).v;
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> x(p.size());
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = top[i] * (0.5 + u(rng));
    x = testing::project_down(p.chain, x);
    ASSERT_LE(testing::chain_violation(p.chain, x), 1e-12);
    const Eigen::MatrixXd tau = recover_torque(p, x);
    const Eigen::MatrixXd qdd = recover_acceleration(p, x);
    for (Eigen::Index i = 0; i < tau.rows(); ++i) {
      for (Eigen::Index j = 0; j < tau.cols(); ++j) {
        EXPECT_LE(std::abs(tau(i, j)), p.samples.torque_limit(j, i) + 1e-9);
        EXPECT_LE(std::abs(qdd(i, j)), p.samples.acceleration_limit(j, i) + 1e-9);
      }
    }
  }
}

TEST_F(BundledProblem, TravelTimeStableUnderRefinement) {
  const auto tf = [&](std::size_t n) {
    const DiscretizedProblem p = discretize(*model_, *path_, n);
    return travel_time(solve_chain(p.chain).v, p.step());
  };
  const double coarse = tf(400);
  const double fine = tf(799);
  EXPECT_TRUE(std::isfinite(coarse));
  EXPECT_LT(std::abs(fine / coarse - 1.0), 0.01);
}

TEST_F(BundledProblem, WeakTorqueViolatesAssumption) {
  RobotModel weak = *model_;
  weak.torque_limit = BoundProfile(Eigen::Vector3d(5.0, 5.0, 5.0));
  try {
    discretize(weak, *path_, 100);
    FAIL() << "expected AssumptionViolated";
  } catch (const AssumptionViolated& e) {
    EXPECT_EQ(e.joint(), 1);
  }
}

}  // namespace
}  // namespace pathspeed
