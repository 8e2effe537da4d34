// Copyright 2026 The Horoshift Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <string>
#include <vector>

#include "horo/group.hpp"

// The groups and rays every experiment and test in this project runs on.
namespace horo::fixtures {

// Z^2 = <a, b | [a, b]>; a moves right, b moves up.
GroupSpec Z2();
// F_2 = <a, b>.
GroupSpec F2();
// Z^2 * Z = <a, b, c | [a, b]>, the fundamental group of a torus wedge a circle.
GroupSpec Z2StarZ();

// Periodic ray from a prefix word and a period word.
RayWalk Ray(const GroupSpec& group, const std::string& prefix, const std::string& period,
            int r_max);

// The ray a c a^2 c a^3 c ... truncated to at least `length` letters. It is
// not eventually periodic, so it is a finite-prefix ray.
RayWalk IncreasingPowersRay(const GroupSpec& group, int length);
std::string IncreasingPowersWord(int length);

}  // namespace horo::fixtures
