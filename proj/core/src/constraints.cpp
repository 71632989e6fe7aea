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

#include "pathspeed/constraints.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

namespace pathspeed {
namespace {

// 0 followed by 2^-7 .. 2^7.
constexpr std::array<double, 16> kMonotonicityGrid = {
    0.0,    0.0078125, 0.015625, 0.03125, 0.0625, 0.125, 0.25, 0.5,
    1.0,    2.0,       4.0,      8.0,     16.0,   32.0,  64.0, 128.0};

const char* name(Direction d) {
  return d == Direction::kForward ? "forward" : "backward";
}

}  // namespace

double ConcaveConstraint::inverse_at(double y) const {
  if (inverse) return inverse(y);
  const double at_zero = value(0.0);
  if (y < at_zero) return y - at_zero;
  if (y == at_zero) return 0.0;
  if (is_unbounded(y)) return kUnbounded;
  double lo = 0.0;
  double hi = 1.0;
  while (value(hi) < y) {
    lo = hi;
    hi *= 2.0;
    if (is_unbounded(hi)) return kUnbounded;
  }
  for (int it = 0; it < 200 && hi - lo > 1e-15 * std::max(1.0, hi); ++it) {
    const double mid = 0.5 * (lo + hi);
    (value(mid) < y ? lo : hi) = mid;
  }
  return hi;
}

std::optional<std::string> check_assumption(const LinearConstraint& c,
                                            Direction direction) {
  std::ostringstream os;
  if (!std::isfinite(c.slope) || !std::isfinite(c.intercept)) {
    os << name(direction) << " constraint has non-finite coefficients";
    return os.str();
  }
  if (!(c.intercept > 0.0)) {
    os << name(direction) << " constraint " << c.slope << "*x+" << c.intercept
       << " is not positive at 0";
    return os.str();
  }
  const bool slope_ok =
      direction == Direction::kForward ? c.slope >= 0.0 : c.slope > 0.0;
  if (!slope_ok) {
    os << name(direction) << " constraint " << c.slope << "*x+" << c.intercept
       << " is not increasing";
    return os.str();
  }
  return std::nullopt;
}

std::optional<std::string> check_assumption(const ConcaveConstraint& c,
                                            Direction direction) {
  std::ostringstream os;
  if (!c.value) {
    os << name(direction) << " constraint has no evaluator";
    return os.str();
  }
  const double at_zero = c.value(0.0);
  if (!(at_zero > 0.0)) {
    os << name(direction) << " constraint evaluates to " << at_zero
       << " at 0";
    return os.str();
  }
  double previous = at_zero;
  for (std::size_t k = 1; k < kMonotonicityGrid.size(); ++k) {
    const double x = kMonotonicityGrid[k];
    const double fx = c.value(x);
    if (!(fx >= previous)) {
      os << name(direction) << " constraint decreases between "
         << kMonotonicityGrid[k - 1] << " and " << x;
      return os.str();
    }
    previous = fx;
  }
  return std::nullopt;
}

double EdgeView::forward_envelope(double x) const {
  double y = kUnbounded;
  for (const auto& c : forward_linear) y = std::min(y, c(x));
  for (const auto& c : forward_general) y = std::min(y, c(x));
  return y;
}

double EdgeView::backward_envelope(double x) const {
  double y = kUnbounded;
  for (const auto& c : backward_linear) y = std::min(y, c(x));
  for (const auto& c : backward_general) y = std::min(y, c(x));
  return y;
}

double EdgeView::backward_inverse_envelope(double x) const {
  double z = -kUnbounded;
  for (const auto& c : backward_linear) z = std::max(z, c.inverse()(x));
  for (const auto& c : backward_general) z = std::max(z, c.inverse_at(x));
  return z;
}

}  // namespace pathspeed
