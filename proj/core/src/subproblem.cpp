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

#include "pathspeed/subproblem.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>

#include "pathspeed/error.hpp"

namespace pathspeed {
namespace {

using Line = SubproblemWorkspace::Line;

double eval(const Line& l, double x) {
  return l.slope == 0.0 ? l.intercept : l.slope * x + l.intercept;
}

double scaled(double tolerance, double x) {
  return tolerance * std::max(1.0, std::abs(x));
}

// Lines sorted by decreasing slope; keeps only those attaining the lower
// (min) envelope somewhere on x > 0. Equal slopes keep the lower intercept,
// then the lower original index.
void prune_lower_envelope(std::vector<Line>& lines) {
  std::sort(lines.begin(), lines.end(), [](const Line& a, const Line& b) {
    if (a.slope != b.slope) return a.slope > b.slope;
    if (a.intercept != b.intercept) return a.intercept < b.intercept;
    return a.index < b.index;
  });
  std::size_t out = 0;
  for (std::size_t k = 0; k < lines.size(); ++k) {
    const Line l = lines[k];
    if (out > 0 && lines[out - 1].slope == l.slope) continue;
    while (out >= 2) {
      const Line& l1 = lines[out - 2];
      const Line& l2 = lines[out - 1];
      // l2 is hidden when crossing(l1, l2) >= crossing(l2, l3).
      if ((l2.intercept - l1.intercept) * (l2.slope - l.slope) >=
          (l.intercept - l2.intercept) * (l1.slope - l2.slope)) {
        --out;
      } else {
        break;
      }
    }
    lines[out++] = l;
  }
  lines.resize(out);
  // Steep lines that are undercut by their successor already at x = 0.
  std::size_t first = 0;
  while (first + 1 < lines.size() &&
         lines[first + 1].intercept <= lines[first].intercept) {
    ++first;
  }
  lines.erase(lines.begin(), lines.begin() + static_cast<std::ptrdiff_t>(first));
}

// Lines sorted by increasing slope; keeps only those attaining the upper
// (max) envelope somewhere on x > 0. Equal slopes keep the higher intercept.
void prune_upper_envelope(std::vector<Line>& lines) {
  std::sort(lines.begin(), lines.end(), [](const Line& a, const Line& b) {
    if (a.slope != b.slope) return a.slope < b.slope;
    if (a.intercept != b.intercept) return a.intercept > b.intercept;
    return a.index < b.index;
  });
  std::size_t out = 0;
  for (std::size_t k = 0; k < lines.size(); ++k) {
    const Line l = lines[k];
    if (out > 0 && lines[out - 1].slope == l.slope) continue;
    while (out >= 2) {
      const Line& l1 = lines[out - 2];
      const Line& l2 = lines[out - 1];
      if ((l1.intercept - l2.intercept) * (l.slope - l2.slope) >=
          (l2.intercept - l.intercept) * (l2.slope - l1.slope)) {
        --out;
      } else {
        break;
      }
    }
    lines[out++] = l;
  }
  lines.resize(out);
  std::size_t first = 0;
  while (first + 1 < lines.size() &&
         lines[first + 1].intercept >= lines[first].intercept) {
    ++first;
  }
  lines.erase(lines.begin(), lines.begin() + static_cast<std::ptrdiff_t>(first));
}

SubproblemResult unbounded_result() {
  SubproblemResult r;
  r.left = kUnbounded;
  r.right = kUnbounded;
  r.iterations = 1;
  return r;
}

// Bounds on v[i+1] from the forward side, box included, with the index of
// the attaining constraint (box = forward_count).
struct ForwardValue {
  double y;
  std::size_t index;
};

ForwardValue forward_min(const EdgeView& edge, double box_right, double x) {
  ForwardValue best{kUnbounded, edge.forward_count()};
  std::size_t k = 0;
  for (const auto& c : edge.forward_linear) {
    const double v = c(x);
    if (v < best.y) best = {v, k};
    ++k;
  }
  for (const auto& c : edge.forward_general) {
    const double v = c(x);
    if (v < best.y) best = {v, k};
    ++k;
  }
  if (box_right < best.y) best = {box_right, edge.forward_count()};
  return best;
}

struct BackwardValue {
  double z;
  std::size_t index;
};

BackwardValue backward_max(const EdgeView& edge, double x) {
  BackwardValue best{-kUnbounded, 0};
  std::size_t j = 0;
  for (const auto& c : edge.backward_linear) {
    const double v = c.inverse()(x);
    if (v > best.z) best = {v, j};
    ++j;
  }
  for (const auto& c : edge.backward_general) {
    const double v = c.inverse_at(x);
    if (v > best.z) best = {v, j};
    ++j;
  }
  return best;
}

double backward_at(const EdgeView& edge, std::size_t j, double y) {
  return j < edge.backward_linear.size()
             ? edge.backward_linear[j](y)
             : edge.backward_general[j - edge.backward_linear.size()](y);
}

double forward_at(const EdgeView& edge, double box_right, std::size_t k,
                  double x) {
  if (k == edge.forward_count()) return box_right;
  return k < edge.forward_linear.size()
             ? edge.forward_linear[k](x)
             : edge.forward_general[k - edge.forward_linear.size()](x);
}

// Root of f_j(b_k(x)) = x on (0, x_hi), where the left side is positive at
// 0 and below x at x_hi. Returns the feasible end of the final bracket.
double solve_pair(const EdgeView& edge, double box_right, std::size_t k,
                  std::size_t j, double x_hi) {
  const bool box = k == edge.forward_count();
  if (box) return backward_at(edge, j, box_right);
  if (k < edge.forward_linear.size() && j < edge.backward_linear.size()) {
    const LinearConstraint b = edge.forward_linear[k];
    const LinearConstraint f_inv = edge.backward_linear[j].inverse();
    const double denom = f_inv.slope - b.slope;
    if (denom > 0.0) return (b.intercept - f_inv.intercept) / denom;
    return x_hi;
  }
  double lo = 0.0;
  double hi = x_hi;
  for (int it = 0; it < 200 && hi - lo > 1e-15 * std::max(1.0, hi); ++it) {
    const double mid = 0.5 * (lo + hi);
    const double g = backward_at(edge, j, forward_at(edge, box_right, k, mid)) - mid;
    (g > 0.0 ? lo : hi) = mid;
  }
  return lo;
}

}  // namespace

SubproblemResult solve_2d_general(const EdgeView& edge, double box_left,
                                  double box_right,
                                  const SubproblemOptions& options) {
  const std::size_t t = edge.forward_count();
  const std::size_t r = edge.backward_count();

  double x = box_left;
  if (is_unbounded(x) && r > 0) {
    if (!is_unbounded(box_right)) {
      x = edge.backward_envelope(box_right);
    } else {
      // Any point where the forward envelope drops below the inverse
      // backward envelope lies beyond the optimum.
      x = 1.0;
      while (forward_min(edge, box_right, x).y >= backward_max(edge, x).z) {
        x *= 2.0;
        if (x > 1e300) return unbounded_result();
      }
    }
  }

  SubproblemResult result;
  const std::size_t budget = (t + 1) * r + 2;
  for (;;) {
    if (++result.iterations > budget) {
      throw IterationBudgetExceeded(
          "general subproblem did not converge; a constraint is not concave "
          "increasing");
    }
    const ForwardValue fwd = forward_min(edge, box_right, x);
    const BackwardValue bwd = backward_max(edge, x);
    if (options.record_trace) {
      result.trace.push_back({x, fwd.y, bwd.z, fwd.index, bwd.index, 0, 0});
    }
    result.left = x;
    result.right = fwd.y;
    if (fwd.y >= bwd.z - scaled(options.tolerance, x)) break;

    const double next = solve_pair(edge, box_right, fwd.index, bwd.index, x);
    ++result.equations_solved;
    if (!(next < x)) break;
    x = std::max(next, 0.0);
  }
  result.left = std::min(result.left, box_left);
  return result;
}

SubproblemResult solve_2d_linear(const EdgeView& edge, double box_left,
                                 double box_right,
                                 const SubproblemOptions& options) {
  SubproblemWorkspace workspace;
  return solve_2d_linear(edge, box_left, box_right, workspace, options);
}

SubproblemResult solve_2d_linear(const EdgeView& edge, double box_left,
                                 double box_right,
                                 SubproblemWorkspace& ws,
                                 const SubproblemOptions& options) {
  if (!edge.linear()) {
    throw InvalidInput("solve_2d_linear requires linear constraints only");
  }
  const std::size_t t = edge.forward_linear.size();

  ws.forward.clear();
  for (std::size_t k = 0; k < t; ++k) {
    ws.forward.push_back(
        {edge.forward_linear[k].slope, edge.forward_linear[k].intercept, k});
  }
  if (!is_unbounded(box_right)) ws.forward.push_back({0.0, box_right, t});
  ws.backward.clear();
  for (std::size_t j = 0; j < edge.backward_linear.size(); ++j) {
    const LinearConstraint inv = edge.backward_linear[j].inverse();
    ws.backward.push_back({inv.slope, inv.intercept, j});
  }
  prune_lower_envelope(ws.forward);
  prune_upper_envelope(ws.backward);

  SubproblemResult result;
  if (ws.forward.empty()) {
    // Nothing bounds v[i+1].
    result.left = box_left;
    result.right = kUnbounded;
    result.iterations = 1;
    return result;
  }
  if (ws.backward.empty()) {
    result.left = box_left;
    result.right = std::min(box_right, edge.forward_envelope(box_left));
    result.iterations = 1;
    return result;
  }

  double x = box_left;
  if (is_unbounded(x)) {
    if (!is_unbounded(box_right)) {
      x = edge.backward_envelope(box_right);
    } else {
      // Asymptotically the flattest forward line and the steepest inverse
      // backward line dominate; the LP is bounded iff they cross.
      const Line& flat = ws.forward.back();
      const Line& steep = ws.backward.back();
      if (!(steep.slope > flat.slope)) return unbounded_result();
      x = (flat.intercept - steep.intercept) / (steep.slope - flat.slope);
    }
  }

  std::size_t xi = ws.forward.size() - 1;
  std::size_t phi = ws.backward.size() - 1;
  const std::size_t budget = ws.forward.size() + ws.backward.size() + 1;
  for (;;) {
    if (++result.iterations > budget) {
      throw IterationBudgetExceeded(
          "linear subproblem exceeded its iteration bound");
    }
    while (xi > 0 && eval(ws.forward[xi - 1], x) < eval(ws.forward[xi], x)) {
      --xi;
    }
    const double y = eval(ws.forward[xi], x);
    while (phi > 0 &&
           eval(ws.backward[phi - 1], x) > eval(ws.backward[phi], x)) {
      --phi;
    }
    const double z = eval(ws.backward[phi], x);
    if (options.record_trace) {
      result.trace.push_back(
          {x, y, z, ws.forward[xi].index, ws.backward[phi].index, xi, phi});
    }
    result.left = x;
    result.right = y;
    if (y >= z - scaled(options.tolerance, x)) break;

    const double denom = ws.backward[phi].slope - ws.forward[xi].slope;
    // Positive whenever the active pair crosses in (0, x): the forward line
    // is above the inverse line at 0 and below it at x.
    assert(denom > 0.0);
    if (!(denom > 0.0)) break;
    const double next =
        (ws.forward[xi].intercept - ws.backward[phi].intercept) / denom;
    ++result.equations_solved;
    if (!(next < x)) break;
    x = std::max(next, 0.0);
  }
  result.left = std::min(result.left, box_left);
  return result;
}

}  // namespace pathspeed
