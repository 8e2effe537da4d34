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

#include "horo/ball.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <string>

#include "horo/error.hpp"

namespace horo {

BallPtr Ball::Build(const GroupSpec& group, const Element& center, int radius,
                    const BallOptions& options) {
  group.check(center);
  if (radius < 0) throw ConfigError("ball radius must be nonnegative");
  std::shared_ptr<Ball> ball(new Ball(group, radius));
  const int letters = group.num_letters();
  ball->num_letters_ = letters;
  ball->vertices_.push_back(center);
  ball->index_.emplace(center, 0);
  ball->dist_.push_back(0);

  std::size_t layer_begin = 0;
  for (int layer = 0; layer <= radius; ++layer) {
    const std::size_t layer_end = ball->vertices_.size();
    const std::size_t count = layer_end - layer_begin;
    std::vector<Element> products(count * static_cast<std::size_t>(letters));
    const auto expand = [&](std::int64_t i) {
      const std::size_t v = layer_begin + static_cast<std::size_t>(i) / letters;
      const Letter s = static_cast<Letter>(static_cast<std::size_t>(i) % letters);
      products[static_cast<std::size_t>(i)] = group.multiply_letter(ball->vertices_[v], s);
    };
    const auto total = static_cast<std::int64_t>(products.size());
    if (options.exec == Exec::kParallel) {
#pragma omp parallel for schedule(static)
      for (std::int64_t i = 0; i < total; ++i) expand(i);
    } else {
      for (std::int64_t i = 0; i < total; ++i) expand(i);
    }
    ball->adjacency_.resize(layer_end * static_cast<std::size_t>(letters), -1);
    for (std::size_t i = 0; i < products.size(); ++i) {
      const std::size_t v = layer_begin + i / letters;
      const auto it = ball->index_.find(products[i]);
      int w = -1;
      if (it != ball->index_.end()) {
        w = it->second;
      } else if (layer < radius) {
        if (ball->vertices_.size() >= options.vertex_cap) {
          throw CapError("ball of radius " + std::to_string(radius) + " exceeds the cap of " +
                         std::to_string(options.vertex_cap) + " vertices");
        }
        w = static_cast<int>(ball->vertices_.size());
        ball->index_.emplace(products[i], w);
        ball->vertices_.push_back(std::move(products[i]));
        ball->dist_.push_back(layer + 1);
      }
      ball->adjacency_[v * static_cast<std::size_t>(letters) + i % letters] = w;
    }
    layer_begin = layer_end;
    if (layer_begin == ball->vertices_.size()) break;
  }
  ball->adjacency_.resize(ball->vertices_.size() * static_cast<std::size_t>(letters), -1);
  return ball;
}

std::optional<int> Ball::find(const Element& e) const {
  const auto it = index_.find(e);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

int Ball::index_of(const Element& e) const {
  const auto v = find(e);
  if (!v) throw PreconditionError("element " + group_.format(e) + " is outside the ball");
  return *v;
}

std::vector<int> Ball::bfs_distances(int source) const {
  std::vector<int> dist(vertices_.size(), -1);
  std::deque<int> queue{source};
  dist[static_cast<std::size_t>(source)] = 0;
  while (!queue.empty()) {
    const int u = queue.front();
    queue.pop_front();
    for (Letter s = 0; s < num_letters_; ++s) {
      const int w = neighbor(u, s);
      if (w >= 0 && dist[static_cast<std::size_t>(w)] < 0) {
        dist[static_cast<std::size_t>(w)] = dist[static_cast<std::size_t>(u)] + 1;
        queue.push_back(w);
      }
    }
  }
  return dist;
}

std::vector<Element> Ball::elements(std::span<const int> vertices) const {
  std::vector<Element> out;
  out.reserve(vertices.size());
  for (int v : vertices) out.push_back(element(v));
  return out;
}

namespace {

void CheckVertex(const Ball& ball, int v) {
  if (v < 0 || v >= ball.size()) {
    throw PreconditionError("vertex index " + std::to_string(v) + " is not in the ball");
  }
}

[[noreturn]] void ThrowEscape(const Ball& ball, int x, int y) {
  throw PreconditionError("a geodesic from " + ball.group().format(ball.element(x)) + " to " +
                          ball.group().format(ball.element(y)) + " leaves the ball");
}

}  // namespace

namespace {

struct IntervalDag {
  std::vector<int> order;  // breadth-first from x
  std::unordered_map<int, std::vector<int>> next;
};

// Geodesic interval from x to y as a DAG: u -> w when d(w,y) = d(u,y) - 1.
IntervalDag BuildInterval(const Ball& ball, int x, int y) {
  CheckVertex(ball, x);
  CheckVertex(ball, y);
  const GroupSpec& group = ball.group();
  const Element& target = ball.element(y);
  IntervalDag dag;
  std::unordered_map<int, std::int64_t> to_y{{x, ball.distance(x, y)}};
  std::deque<int> queue{x};
  while (!queue.empty()) {
    const int u = queue.front();
    queue.pop_front();
    dag.order.push_back(u);
    const std::int64_t k = to_y.at(u);
    std::vector<int>& succ = dag.next[u];
    if (k == 0) continue;
    for (Letter s = 0; s < ball.num_letters(); ++s) {
      const int w = ball.neighbor(u, s);
      if (w < 0) {
        if (group.distance(group.multiply_letter(ball.element(u), s), target) == k - 1) {
          ThrowEscape(ball, x, y);
        }
        continue;
      }
      if (ball.distance(w, y) != k - 1) continue;
      succ.push_back(w);
      if (to_y.emplace(w, k - 1).second) queue.push_back(w);
    }
  }
  return dag;
}

}  // namespace

std::vector<int> GeodesicInterval(const Ball& ball, int x, int y) {
  return BuildInterval(ball, x, y).order;
}

GeodesicSet AllGeodesics(const Ball& ball, int x, int y, std::size_t cap) {
  const IntervalDag dag = BuildInterval(ball, x, y);
  const auto& next = dag.next;

  GeodesicSet result;
  std::vector<int> path{x};
  std::vector<std::size_t> cursor{0};
  while (!path.empty()) {
    const int u = path.back();
    if (u == y) {
      if (result.paths.size() >= cap) {
        result.truncated = true;
        break;
      }
      result.paths.push_back({path});
      path.pop_back();
      cursor.pop_back();
      continue;
    }
    const std::vector<int>& succ = next.at(u);
    std::size_t& i = cursor.back();
    if (i == succ.size()) {
      path.pop_back();
      cursor.pop_back();
      continue;
    }
    path.push_back(succ[i++]);
    cursor.push_back(0);
  }
  return result;
}

GeodesicSegment FirstGeodesic(const Ball& ball, int x, int y) {
  CheckVertex(ball, x);
  CheckVertex(ball, y);
  const GroupSpec& group = ball.group();
  GeodesicSegment seg{{x}};
  int u = x;
  std::int64_t k = ball.distance(x, y);
  while (k > 0) {
    bool stepped = false;
    for (Letter s = 0; s < ball.num_letters() && !stepped; ++s) {
      const int w = ball.neighbor(u, s);
      if (w < 0) {
        if (group.distance(group.multiply_letter(ball.element(u), s), ball.element(y)) == k - 1) {
          ThrowEscape(ball, x, y);
        }
        continue;
      }
      if (ball.distance(w, y) == k - 1) {
        seg.vertices.push_back(w);
        u = w;
        stepped = true;
      }
    }
    if (!stepped) throw InvariantError("no geodesic step found");
    --k;
  }
  return seg;
}

bool IsGeodesic(const Ball& ball, std::span<const int> vertices) {
  if (vertices.empty()) return false;
  for (std::size_t i = 0; i + 1 < vertices.size(); ++i) {
    bool adjacent = false;
    for (Letter s = 0; s < ball.num_letters(); ++s) {
      if (ball.neighbor(vertices[i], s) == vertices[i + 1]) {
        adjacent = true;
        break;
      }
    }
    if (!adjacent) return false;
  }
  return ball.distance(vertices.front(), vertices.back()) ==
         static_cast<std::int64_t>(vertices.size()) - 1;
}

std::vector<int> Project(const Ball& ball, int x, std::span<const int> target) {
  if (target.empty()) throw PreconditionError("projection onto an empty set");
  CheckVertex(ball, x);
  std::int64_t best = std::numeric_limits<std::int64_t>::max();
  std::vector<int> argmin;
  for (int t : target) {
    CheckVertex(ball, t);
    const std::int64_t d = ball.distance(x, t);
    if (d < best) {
      best = d;
      argmin.clear();
    }
    if (d == best) argmin.push_back(t);
  }
  std::sort(argmin.begin(), argmin.end());
  argmin.erase(std::unique(argmin.begin(), argmin.end()), argmin.end());
  return argmin;
}

Tripod TripodNumbers(std::int64_t dxy, std::int64_t dxz, std::int64_t dyz) {
  Tripod t;
  t.a2 = dxy + dxz - dyz;
  t.b2 = dxy + dyz - dxz;
  t.c2 = dxz + dyz - dxy;
  if (t.a2 < 0 || t.b2 < 0 || t.c2 < 0) {
    throw PreconditionError("side lengths violate the triangle inequality");
  }
  t.half_integer = (t.a2 % 2) != 0;
  t.a = t.a2 / 2;
  t.b = t.b2 / 2;
  t.c = t.c2 / 2;
  return t;
}

TriangleSides DefaultSides(const Ball& ball, int x, int y, int z) {
  return {FirstGeodesic(ball, x, y), FirstGeodesic(ball, x, z), FirstGeodesic(ball, y, z)};
}

Tripod InternalPoints(const Ball& ball, int x, int y, int z) {
  return InternalPoints(ball, DefaultSides(ball, x, y, z));
}

Tripod InternalPoints(const Ball& ball, const TriangleSides& sides) {
  for (const GeodesicSegment* side : {&sides.xy, &sides.xz, &sides.yz}) {
    if (!IsGeodesic(ball, side->vertices)) throw PreconditionError("triangle side is not a geodesic");
  }
  if (sides.xy.vertices.front() != sides.xz.vertices.front() ||
      sides.xy.vertices.back() != sides.yz.vertices.front() ||
      sides.xz.vertices.back() != sides.yz.vertices.back()) {
    throw PreconditionError("triangle sides do not share endpoints");
  }
  Tripod t = TripodNumbers(sides.xy.length(), sides.xz.length(), sides.yz.length());
  t.i_z = sides.xy.vertices[static_cast<std::size_t>(t.a)];
  t.i_y = sides.xz.vertices[static_cast<std::size_t>(t.a)];
  t.i_x = sides.yz.vertices[static_cast<std::size_t>(t.b)];
  return t;
}

void WriteDot(const Ball& ball, std::ostream& out) {
  const GroupSpec& group = ball.group();
  out << "digraph ball {\n";
  for (int v = 0; v < ball.size(); ++v) {
    out << "  v" << v << " [label=\"" << group.format(ball.element(v)) << "\\nd="
        << ball.dist_from_center(v) << "\"];\n";
  }
  for (int v = 0; v < ball.size(); ++v) {
    for (Letter s = 0; s < ball.num_letters(); s += 2) {
      const int w = ball.neighbor(v, s);
      if (w >= 0) {
        out << "  v" << v << " -> v" << w << " [label=\"" << group.letter_name(s) << "\"];\n";
      }
    }
  }
  out << "}\n";
}

void WriteDistanceCsv(const Ball& ball, std::ostream& out) {
  out << "index,normal_form,dist_from_center\n";
  for (int v = 0; v < ball.size(); ++v) {
    out << v << ',' << ball.group().format(ball.element(v)) << ',' << ball.dist_from_center(v)
        << '\n';
  }
}

}  // namespace horo
