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

#ifndef PATHSPEED_ERROR_HPP_
#define PATHSPEED_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace pathspeed {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input data violates a documented precondition (negative box bound,
// constraint that is not positive at the origin, malformed waypoints, ...).
class InvalidInput : public Error {
 public:
  using Error::Error;
};

// Torque limits cannot hold the manipulator against the external forces at
// some sample of the path.
class AssumptionViolated : public Error {
 public:
  AssumptionViolated(const std::string& what, int joint, double s)
      : Error(what), joint_(joint), s_(s) {}

  int joint() const { return joint_; }
  double position() const { return s_; }

 private:
  int joint_;
  double s_;
};

// A two-dimensional subproblem did not terminate inside its iteration
// budget. Only happens when a constraint breaks concavity or monotonicity.
class IterationBudgetExceeded : public Error {
 public:
  using Error::Error;
};

// Time integration of the path position stopped making progress.
class Stall : public Error {
 public:
  Stall(const std::string& what, double s) : Error(what), s_(s) {}
  double position() const { return s_; }

 private:
  double s_;
};

}  // namespace pathspeed

#endif  // PATHSPEED_ERROR_HPP_
