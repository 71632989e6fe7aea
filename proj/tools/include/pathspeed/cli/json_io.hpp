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

#ifndef PATHSPEED_CLI_JSON_IO_HPP_
#define PATHSPEED_CLI_JSON_IO_HPP_

#include <nlohmann/json.hpp>

#include "pathspeed/robot.hpp"

namespace pathspeed {

// {"inertia": [[Ix, Iy, Iz] x 3], "mass": [..], "length": [..],
//  "center_of_mass": [..], "gravity": g}
void to_json(nlohmann::json& j, const ElbowParameters& p);
void from_json(const nlohmann::json& j, ElbowParameters& p);

}  // namespace pathspeed

#endif  // PATHSPEED_CLI_JSON_IO_HPP_
