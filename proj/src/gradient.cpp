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

#include "horo/gradient.hpp"

#include <algorithm>
#include <random>

#include "horo/error.hpp"

namespace horo {

GradientPath::GradientPath(const ScalarField& h, std::vector<int> vertices)
    : vertices_(std::move(vertices)) {
  if (vertices_.empty()) throw PreconditionError("empty gradient path");
  const Ball& ball = h.ball();
  for (std::size_t i = 0; i + 1 < vertices_.size(); ++i) {
    const int u = vertices_[i];
    const int w = vertices_[i + 1];
    bool adjacent = false;
    for (Letter s = 0; s < ball.num_letters() && !adjacent; ++s) adjacent = ball.neighbor(u, s) == w;
    if (!adjacent || !h.defined(u) || !h.defined(w) || h[w] != h[u] - 1) {
      throw PreconditionError("not a gradient step at position " + std::to_string(i));
    }
  }
  if (!IsGeodesic(ball, vertices_)) throw InvariantError("gradient path is not a geodesic");
}

std::vector<int> GradientSuccessors(const ScalarField& h, int v) {
  const Ball& ball = h.ball();
  if (!h.defined(v)) throw PreconditionError("field undefined at the start vertex");
  std::vector<int> out;
  for (Letter s = 0; s < ball.num_letters(); ++s) {
    const int w = ball.neighbor(v, s);
    if (w >= 0 && h.defined(w) && h[w] == h[v] - 1) out.push_back(w);
  }
  return out;
}

std::vector<int> GradientTree::path_to(int leaf) const {
  std::vector<int> path;
  for (int n = leaf; n >= 0; n = nodes[static_cast<std::size_t>(n)].parent) {
    path.push_back(nodes[static_cast<std::size_t>(n)].vertex);
  }
  std::reverse(path.begin(), path.end());
  return path;
}

std::vector<GradientPath> GradientTree::paths(const ScalarField& h) const {
  std::vector<GradientPath> out;
  out.reserve(leaves.size());
  for (int leaf : leaves) out.emplace_back(h, path_to(leaf));
  return out;
}

GradientTree GradientRay(const ScalarField& h, int start, const GradientOptions& options) {
  const Ball& ball = h.ball();
  if (start < 0 || start >= ball.size()) throw PreconditionError("start vertex is not in the ball");
  const int stop_at = ball.radius() - options.margin;
  GradientTree tree;
  tree.nodes.push_back({start, -1});
  if (ball.dist_from_center(start) < stop_at && GradientSuccessors(h, start).empty()) {
    tree.stalled_inside_margin = true;
  }

  if (options.policy != GradientPolicy::kAll) {
    std::mt19937_64 rng(options.seed);
    int node = 0;
    for (;;) {
      const int v = tree.nodes[static_cast<std::size_t>(node)].vertex;
      if (ball.dist_from_center(v) >= stop_at) break;
      const std::vector<int> succ = GradientSuccessors(h, v);
      if (succ.empty()) break;
      const std::size_t pick =
          options.policy == GradientPolicy::kFirst ? 0 : static_cast<std::size_t>(rng() % succ.size());
      tree.nodes.push_back({succ[pick], node});
      node = static_cast<int>(tree.nodes.size()) - 1;
    }
    tree.leaves.push_back(node);
    return tree;
  }

  // Depth-first expansion in letter order; leaves come out in lexicographic
  // order of their letter sequences.
  std::vector<int> stack{0};
  while (!stack.empty()) {
    const int node = stack.back();
    stack.pop_back();
    const int v = tree.nodes[static_cast<std::size_t>(node)].vertex;
    std::vector<int> succ;
    if (ball.dist_from_center(v) < stop_at) succ = GradientSuccessors(h, v);
    if (succ.empty()) {
      if (tree.leaves.size() >= options.leaf_cap) {
        tree.truncated = true;
        break;
      }
      tree.leaves.push_back(node);
      continue;
    }
    for (auto it = succ.rbegin(); it != succ.rend(); ++it) {
      tree.nodes.push_back({*it, node});
      stack.push_back(static_cast<int>(tree.nodes.size()) - 1);
    }
  }
  return tree;
}

bool IsGradientArc(const ScalarField& h, const std::vector<int>& path) {
  if (path.empty()) return false;
  const Ball& ball = h.ball();
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    bool adjacent = false;
    for (Letter s = 0; s < ball.num_letters() && !adjacent; ++s) {
      adjacent = ball.neighbor(path[i], s) == path[i + 1];
    }
    if (!adjacent) throw PreconditionError("path vertices are not adjacent");
  }
  for (int v : path) {
    if (!h.defined(v)) return false;
  }
  const auto n = static_cast<std::int64_t>(path.size()) - 1;
  return h[path.front()] - h[path.back()] == n && ball.distance(path.front(), path.back()) == n;
}

std::int64_t FellowTravelProfile::sup_from(int from) const {
  std::int64_t best = 0;
  for (std::size_t t = static_cast<std::size_t>(std::max(from, 0)); t < distance.size(); ++t) {
    best = std::max(best, distance[t]);
  }
  return best;
}

FellowTravelProfile FellowTravel(const ScalarField& h, const GradientPath& alpha,
                                 const GradientPath& beta) {
  FellowTravelProfile profile;
  const std::int64_t ha = h[alpha[0]];
  const std::int64_t hb = h[beta[0]];
  if (ha > hb) profile.alpha_offset = static_cast<int>(ha - hb);
  if (hb > ha) profile.beta_offset = static_cast<int>(hb - ha);
  const int len = std::min(alpha.length() - profile.alpha_offset,
                           beta.length() - profile.beta_offset);
  const Ball& ball = h.ball();
  for (int t = 0; t <= len; ++t) {
    profile.distance.push_back(
        ball.distance(alpha[profile.alpha_offset + t], beta[profile.beta_offset + t]));
  }
  const int tail_start = len / 2;
  for (int t = 0; t <= len; ++t) {
    profile.max = std::max(profile.max, profile.distance[t]);
    if (t > tail_start && profile.distance[t] < profile.distance[t - 1]) {
      profile.tail_nondecreasing = false;
    }
  }
  return profile;
}

}  // namespace horo
