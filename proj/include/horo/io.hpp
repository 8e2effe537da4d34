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

#include <istream>
#include <ostream>
#include <string>

#include <nlohmann/json.hpp>

#include "horo/ball.hpp"
#include "horo/fields.hpp"
#include "horo/group.hpp"
#include "horo/symbolic.hpp"

namespace horo::io {

using Json = nlohmann::json;

std::string ReadFile(const std::string& path);
void WriteFile(const std::string& path, const std::string& content);

// {"factors": [{"kind": "free_abelian" | "free", "rank": d, "generator_names": [...]}]}
GroupSpec GroupFromJson(const Json& j);
Json GroupToJson(const GroupSpec& group);

struct RaySpec {
  std::string prefix;
  std::string period;  // empty: finite-prefix ray
};

RaySpec RaySpecFromJson(const Json& j);
Json RaySpecToJson(const RaySpec& spec);
// Verified to DefaultHorizon(r_max, |period|), or to the prefix length.
RayWalk MakeRay(const GroupSpec& group, const RaySpec& spec, int r_max);

// normal_form,h_value; undefined values are written as an empty cell.
void WriteFieldCsv(const ScalarField& h, std::ostream& out);
// Every row must name a distinct ball vertex; unnamed vertices are undefined.
ScalarField ReadFieldCsv(BallPtr ball, std::istream& in);

// normal_form, then one column per letter; absent entries are empty cells.
void WriteDerivativeCsv(const DerivativeField& sigma, std::ostream& out);
DerivativeField ReadDerivativeCsv(BallPtr ball, std::istream& in);

// {"support": [normal_form...], "patterns": [[symbol...]...]} where a symbol
// is an array of integers or nulls (wildcards), or null for "anything".
ForbiddenSet ForbiddenSetFromJson(const GroupSpec& group, const Json& j, int width);
Json ForbiddenSetToJson(const GroupSpec& group, const ForbiddenSet& set);

}  // namespace horo::io
