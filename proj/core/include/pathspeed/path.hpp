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

#ifndef PATHSPEED_PATH_HPP_
#define PATHSPEED_PATH_HPP_

#include <cstddef>
#include <vector>

#include <Eigen/Core>

namespace pathspeed {

// Joint-space curve gamma(s) parametrized by arc length, so that
// |gamma'(s)| = 1 on [0, length()].
//
// Built from a natural cubic spline through the waypoints at uniformly
// spaced parameter values in [0, 1]. Arc length is tabulated with adaptive
// Simpson quadrature; the inverse map s -> parameter uses cubic Hermite
// interpolation with exact slopes followed by Newton refinement.
class PathSpline {
 public:
  struct Point {
    Eigen::VectorXd position;   // gamma(s)
    Eigen::VectorXd tangent;    // gamma'(s), unit norm
    Eigen::VectorXd curvature;  // gamma''(s)
  };

  // waypoints: one row per waypoint, one column per joint (m x p, m >= 2).
  // table_resolution: arc-length table intervals per spline segment.
  // Throws InvalidInput on fewer than two rows, non-finite entries,
  // coincident consecutive waypoints or a vanishing parametric speed.
  static PathSpline build(const Eigen::MatrixXd& waypoints,
                          std::size_t table_resolution = 64);

  std::size_t dof() const { return static_cast<std::size_t>(coeff_a_.cols()); }
  double length() const { return arc_.back(); }

  // s is clamped to [0, length()].
  Point evaluate(double s) const;
  Eigen::VectorXd position(double s) const { return evaluate(s).position; }
  Eigen::VectorXd tangent(double s) const { return evaluate(s).tangent; }
  Eigen::VectorXd curvature(double s) const { return evaluate(s).curvature; }

  // Spline parameter in [0, 1] reached after arc length s.
  double parameter_at(double s) const;

 private:
  PathSpline() = default;

  // Derivatives of the underlying cubic with respect to its parameter.
  void parametric(double lambda, Eigen::VectorXd* value, Eigen::VectorXd* d1,
                  Eigen::VectorXd* d2) const;
  double speed(double lambda) const;
  double arc_between(double lambda0, double lambda1) const;

  // Segment k covers [k/(m-1), (k+1)/(m-1)]; coefficients in local t.
  Eigen::MatrixXd coeff_a_, coeff_b_, coeff_c_, coeff_d_;
  double segment_width_ = 1.0;
  // Arc-length table.
  std::vector<double> lambda_;
  std::vector<double> arc_;
  std::vector<double> speed_;
};

}  // namespace pathspeed

#endif  // PATHSPEED_PATH_HPP_
