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

#include "horo/fixtures.hpp"

namespace horo::fixtures {

GroupSpec Z2() { return GroupSpec({{FactorKind::kFreeAbelian, {"a", "b"}}}); }

GroupSpec F2() { return GroupSpec({{FactorKind::kFree, {"a", "b"}}}); }

GroupSpec Z2StarZ() {
  return GroupSpec({{FactorKind::kFreeAbelian, {"a", "b"}}, {FactorKind::kFree, {"c"}}});
}

RayWalk Ray(const GroupSpec& group, const std::string& prefix, const std::string& period,
            int r_max) {
  std::vector<Letter> p = group.parse_word(prefix);
  std::vector<Letter> q = group.parse_word(period);
  const int horizon = period.empty() ? static_cast<int>(p.size())
                                     : RayWalk::DefaultHorizon(r_max, q.size());
  return RayWalk(group, std::move(p), std::move(q), horizon);
}

std::string IncreasingPowersWord(int length) {
  std::string word;
  int letters = 0;
  for (int k = 1; letters < length; ++k) {
    for (int i = 0; i < k; ++i) word += "a ";
    word += "c ";
    letters += k + 1;
  }
  word.pop_back();
  return word;
}

RayWalk IncreasingPowersRay(const GroupSpec& group, int length) {
  std::vector<Letter> prefix = group.parse_word(IncreasingPowersWord(length));
  const int horizon = static_cast<int>(prefix.size());
  return RayWalk(group, std::move(prefix), {}, horizon);
}

}  // namespace horo::fixtures
