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

#include "pathspeed/path.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "pathspeed/error.hpp"

namespace pathspeed {
namespace {

constexpr double kSimpsonTolerance = 1e-9;

// Five-point Gauss-Legendre nodes and weights on [-1, 1].
constexpr std::array<double, 5> kGaussNodes = {
    -0.9061798459386640, -0.5384693101056831, 0.0, 0.5384693101056831,
    0.9061798459386640};
constexpr std::array<double, 5> kGaussWeights = {
    0.2369268850561891, 0.4786286704993665, 0.5688888888888889,
    0.4786286704993665, 0.2369268850561891};

template <typename F>
double simpson_step(const F& f, double a, double b, double fa, double fm,
                    double fb, double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) {
    return left + right + delta / 15.0;
  }
  return simpson_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         simpson_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

template <typename F>
double adaptive_simpson(const F& f, double a, double b, double tol) {
  const double fa = f(a);
  const double fb = f(b);
  const double fm = f(0.5 * (a + b));
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return simpson_step(f, a, b, fa, fm, fb, whole, tol, 40);
}

// Second derivatives of the natural cubic spline through equally spaced
// samples (Thomas algorithm on the standard tridiagonal system).
Eigen::VectorXd natural_moments(const Eigen::VectorXd& y, double w) {
  const Eigen::Index m = y.size();
  Eigen::VectorXd moments = Eigen::VectorXd::Zero(m);
  if (m < 3) return moments;
  const Eigen::Index k = m - 2;
  Eigen::VectorXd diag = Eigen::VectorXd::Constant(k, 4.0);
  Eigen::VectorXd rhs(k);
  for (Eigen::Index i = 0; i < k; ++i) {
    rhs(i) = 6.0 * (y(i + 2) - 2.0 * y(i + 1) + y(i)) / (w * w);
  }
  for (Eigen::Index i = 1; i < k; ++i) {
    const double factor = 1.0 / diag(i - 1);
    diag(i) -= factor;
    rhs(i) -= factor * rhs(i - 1);
  }
  moments(k) = rhs(k - 1) / diag(k - 1);
  for (Eigen::Index i = k - 2; i >= 0; --i) {
    moments(i + 1) = (rhs(i) - moments(i + 2)) / diag(i);
  }
  return moments;
}

}  // namespace

PathSpline PathSpline::build(const Eigen::MatrixXd& waypoints,
                             std::size_t table_resolution) {
  const Eigen::Index m = waypoints.rows();
  const Eigen::Index p = waypoints.cols();
  if (m < 2 || p < 1) {
    throw InvalidInput("a path needs at least two waypoints of dimension >= 1");
  }
  if (!waypoints.allFinite()) {
    throw InvalidInput("waypoints contain non-finite values");
  }
  for (Eigen::Index k = 0; k + 1 < m; ++k) {
    if ((waypoints.row(k + 1) - waypoints.row(k)).norm() == 0.0) {
      throw InvalidInput("waypoints " + std::to_string(k) + " and " +
                         std::to_string(k + 1) + " coincide");
    }
  }
  table_resolution = std::max<std::size_t>(table_resolution, 1);

  PathSpline path;
  const Eigen::Index segments = m - 1;
  const double w = 1.0 / static_cast<double>(segments);
  path.segment_width_ = w;
  path.coeff_a_.resize(segments, p);
  path.coeff_b_.resize(segments, p);
  path.coeff_c_.resize(segments, p);
  path.coeff_d_.resize(segments, p);
  for (Eigen::Index j = 0; j < p; ++j) {
    const Eigen::VectorXd y = waypoints.col(j);
    const Eigen::VectorXd mom = natural_moments(y, w);
    for (Eigen::Index k = 0; k < segments; ++k) {
      path.coeff_a_(k, j) = y(k);
      path.coeff_b_(k, j) =
          (y(k + 1) - y(k)) / w - w * (2.0 * mom(k) + mom(k + 1)) / 6.0;
      path.coeff_c_(k, j) = 0.5 * mom(k);
      path.coeff_d_(k, j) = (mom(k + 1) - mom(k)) / (6.0 * w);
    }
  }

  const std::size_t rows = static_cast<std::size_t>(segments) * table_resolution;
  path.lambda_.resize(rows + 1);
  path.arc_.resize(rows + 1);
  path.speed_.resize(rows + 1);
  const double step = 1.0 / static_cast<double>(rows);
  auto speed = [&path](double lam) { return path.speed(lam); };
  path.lambda_[0] = 0.0;
  path.arc_[0] = 0.0;
  path.speed_[0] = speed(0.0);
  for (std::size_t r = 1; r <= rows; ++r) {
    const double lo = path.lambda_[r - 1];
    const double hi = r == rows ? 1.0 : static_cast<double>(r) * step;
    path.lambda_[r] = hi;
    path.arc_[r] = path.arc_[r - 1] +
                   adaptive_simpson(speed, lo, hi, kSimpsonTolerance * step);
    path.speed_[r] = speed(hi);
  }
  const double min_speed =
      *std::min_element(path.speed_.begin(), path.speed_.end());
  if (!(min_speed > 1e-9 * path.arc_.back())) {
    throw InvalidInput("path parametric speed vanishes; cannot reparametrize "
                       "by arc length");
  }
  return path;
}

void PathSpline::parametric(double lambda, Eigen::VectorXd* value,
                            Eigen::VectorXd* d1, Eigen::VectorXd* d2) const {
  const Eigen::Index segments = coeff_a_.rows();
  lambda = std::clamp(lambda, 0.0, 1.0);
  Eigen::Index k = static_cast<Eigen::Index>(lambda / segment_width_);
  k = std::clamp<Eigen::Index>(k, 0, segments - 1);
  const double t = lambda - static_cast<double>(k) * segment_width_;
  const auto a = coeff_a_.row(k).transpose();
  const auto b = coeff_b_.row(k).transpose();
  const auto c = coeff_c_.row(k).transpose();
  const auto d = coeff_d_.row(k).transpose();
  if (value) *value = a + t * (b + t * (c + t * d));
  if (d1) *d1 = b + t * (2.0 * c + 3.0 * t * d);
  if (d2) *d2 = 2.0 * c + 6.0 * t * d;
}

double PathSpline::speed(double lambda) const {
  Eigen::VectorXd d1;
  parametric(lambda, nullptr, &d1, nullptr);
  return d1.norm();
}

double PathSpline::arc_between(double lambda0, double lambda1) const {
  const double half = 0.5 * (lambda1 - lambda0);
  const double mid = 0.5 * (lambda1 + lambda0);
  double sum = 0.0;
  for (std::size_t i = 0; i < kGaussNodes.size(); ++i) {
    sum += kGaussWeights[i] * speed(mid + half * kGaussNodes[i]);
  }
  return half * sum;
}

double PathSpline::parameter_at(double s) const {
  s = std::clamp(s, 0.0, arc_.back());
  auto it = std::upper_bound(arc_.begin(), arc_.end(), s);
  std::size_t k = it == arc_.begin() ? 0 : static_cast<std::size_t>(it - arc_.begin()) - 1;
  k = std::min(k, arc_.size() - 2);

  // Cubic Hermite in s with slopes d(lambda)/ds = 1 / speed.
  const double s0 = arc_[k];
  const double s1 = arc_[k + 1];
  const double ds = s1 - s0;
  const double u = ds > 0.0 ? (s - s0) / ds : 0.0;
  const double h00 = (1.0 + 2.0 * u) * (1.0 - u) * (1.0 - u);
  const double h10 = u * (1.0 - u) * (1.0 - u);
  const double h01 = u * u * (3.0 - 2.0 * u);
  const double h11 = u * u * (u - 1.0);
  double lam = h00 * lambda_[k] + h10 * ds / speed_[k] + h01 * lambda_[k + 1] +
               h11 * ds / speed_[k + 1];

  for (int it_newton = 0; it_newton < 3; ++it_newton) {
    const double residual = s0 + arc_between(lambda_[k], lam) - s;
    lam -= residual / speed(lam);
    lam = std::clamp(lam, lambda_[k], lambda_[k + 1]);
  }
  return lam;
}

PathSpline::Point PathSpline::evaluate(double s) const {
  const double lam = parameter_at(s);
  Point pt;
  Eigen::VectorXd d1, d2;
  parametric(lam, &pt.position, &d1, &d2);
  const double sigma = d1.norm();
  pt.tangent = d1 / sigma;
  const double sigma2 = sigma * sigma;
  pt.curvature = d2 / sigma2 - d1 * (d1.dot(d2) / (sigma2 * sigma2));
  return pt;
}

}  // namespace pathspeed
