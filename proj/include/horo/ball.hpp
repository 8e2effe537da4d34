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

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <ostream>
#include <span>
#include <unordered_map>
#include <vector>

#include "horo/exec.hpp"
#include "horo/group.hpp"

namespace horo {

struct BallOptions {
  std::size_t vertex_cap = 5'000'000;
  Exec exec = Exec::kParallel;
};

// The radius-R ball of Cay(G, S) around `center`, materialized as a labeled
// graph. Vertices are in breadth-first order with neighbors explored in
// letter order; adjacency entries point to -1 when the neighbor lies outside.
class Ball {
 public:
  static std::shared_ptr<const Ball> Build(const GroupSpec& group, const Element& center,
                                           int radius, const BallOptions& options = {});

  const GroupSpec& group() const { return group_; }
  const Element& center() const { return vertices_.front(); }
  int radius() const { return radius_; }
  int size() const { return static_cast<int>(vertices_.size()); }
  int num_letters() const { return num_letters_; }

  const Element& element(int v) const { return vertices_[static_cast<std::size_t>(v)]; }
  std::optional<int> find(const Element& e) const;
  // Like find, but throws PreconditionError when `e` is outside the ball.
  int index_of(const Element& e) const;

  int neighbor(int v, Letter s) const {
    return adjacency_[static_cast<std::size_t>(v) * num_letters_ + s];
  }
  int dist_from_center(int v) const { return dist_[static_cast<std::size_t>(v)]; }

  // Exact word-metric distance (global, not restricted to the ball).
  std::int64_t distance(int u, int v) const {
    return group_.distance(element(u), element(v));
  }
  // Graph distances inside the ball from `source`; -1 where unreachable.
  std::vector<int> bfs_distances(int source) const;

  std::vector<Element> elements(std::span<const int> vertices) const;

 private:
  Ball(const GroupSpec& group, int radius) : group_(group), radius_(radius) {}

  GroupSpec group_;
  int radius_ = 0;
  int num_letters_ = 0;
  std::vector<Element> vertices_;
  std::unordered_map<Element, int, ElementHash> index_;
  std::vector<int> adjacency_;
  std::vector<int> dist_;
};

using BallPtr = std::shared_ptr<const Ball>;

// A vertex path v_0..v_n in a ball whose length equals d(v_0, v_n).
struct GeodesicSegment {
  std::vector<int> vertices;

  int length() const { return static_cast<int>(vertices.size()) - 1; }
};

struct GeodesicSet {
  std::vector<GeodesicSegment> paths;
  bool truncated = false;
};

// Every vertex on some geodesic from x to y, breadth-first from x. Throws a
// precondition error if a geodesic leaves the ball.
std::vector<int> GeodesicInterval(const Ball& ball, int x, int y);

// All geodesics from x to y in generator (lexicographic) order. Throws
// PreconditionError if some geodesic between x and y leaves the ball.
GeodesicSet AllGeodesics(const Ball& ball, int x, int y, std::size_t cap = 100'000);

// The lexicographically-first geodesic from x to y.
GeodesicSegment FirstGeodesic(const Ball& ball, int x, int y);

// Checks adjacency and length == d(v_0, v_n).
bool IsGeodesic(const Ball& ball, std::span<const int> vertices);

// Vertices of `target` nearest to x, in ascending index order.
std::vector<int> Project(const Ball& ball, int x, std::span<const int> target);

// Tripod numbers and internal points of a geodesic triangle. Doubled values
// are exact; a, b, c are floor-rounded when `half_integer` is set.
struct Tripod {
  std::int64_t a2 = 0, b2 = 0, c2 = 0;
  std::int64_t a = 0, b = 0, c = 0;
  bool half_integer = false;
  int i_x = -1, i_y = -1, i_z = -1;  // on [y,z], [x,z], [x,y]
};

// Doubled tripod numbers from the three side lengths.
Tripod TripodNumbers(std::int64_t dxy, std::int64_t dxz, std::int64_t dyz);

struct TriangleSides {
  GeodesicSegment xy, xz, yz;
};

TriangleSides DefaultSides(const Ball& ball, int x, int y, int z);

Tripod InternalPoints(const Ball& ball, int x, int y, int z);
Tripod InternalPoints(const Ball& ball, const TriangleSides& sides);

void WriteDot(const Ball& ball, std::ostream& out);
void WriteDistanceCsv(const Ball& ball, std::ostream& out);

}  // namespace horo
