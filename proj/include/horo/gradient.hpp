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

#include <cstdint>
#include <optional>
#include <vector>

#include "horo/fields.hpp"

namespace horo {

// A vertex path along which h drops by exactly one per step and which is a
// geodesic. Construction validates both.
class GradientPath {
 public:
  GradientPath(const ScalarField& h, std::vector<int> vertices);

  const std::vector<int>& vertices() const { return vertices_; }
  int length() const { return static_cast<int>(vertices_.size()) - 1; }
  int operator[](int t) const { return vertices_[static_cast<std::size_t>(t)]; }

 private:
  std::vector<int> vertices_;
};

// Neighbors w of v with h(w) = h(v) - 1, in letter order.
std::vector<int> GradientSuccessors(const ScalarField& h, int v);

enum class GradientPolicy { kFirst, kAll, kRandom };

struct GradientOptions {
  GradientPolicy policy = GradientPolicy::kFirst;
  std::uint64_t seed = 0;
  int margin = 0;               // stop at dist_from_center >= radius - margin
  std::size_t leaf_cap = 10'000;
};

// Successor tree rooted at the start vertex. Node 0 is the root.
struct GradientTree {
  struct Node {
    int vertex = -1;
    int parent = -1;
  };
  std::vector<Node> nodes;
  std::vector<int> leaves;  // node indices
  bool truncated = false;
  // The start vertex has no successors although it lies inside the margin.
  bool stalled_inside_margin = false;

  std::vector<int> path_to(int leaf) const;
  std::vector<GradientPath> paths(const ScalarField& h) const;
};

// Iterated projection onto descending level sets, one unit at a time. For
// kFirst and kRandom the tree is a single chain.
GradientTree GradientRay(const ScalarField& h, int start, const GradientOptions& options = {});

// h(v_0) - h(v_n) == n == d(v_0, v_n) for a path of adjacent vertices.
bool IsGradientArc(const ScalarField& h, const std::vector<int>& path);

struct FellowTravelProfile {
  std::vector<std::int64_t> distance;  // d(alpha(i + t), beta(j + t))
  int alpha_offset = 0;                // i: steps skipped on alpha to align h-values
  int beta_offset = 0;                 // j
  std::int64_t max = 0;
  // Nondecreasing over the second half of the profile: divergence evidence,
  // never a verdict.
  bool tail_nondecreasing = true;

  // Largest distance at t >= from (0 when the profile is shorter).
  std::int64_t sup_from(int from) const;
};

// Profile of two gradient paths after aligning them at equal h-values (the
// higher start is advanced to the lower start's level).
FellowTravelProfile FellowTravel(const ScalarField& h, const GradientPath& alpha,
                                 const GradientPath& beta);

}  // namespace horo
