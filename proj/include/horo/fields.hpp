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
#include <limits>
#include <string>
#include <vector>

#include "horo/ball.hpp"
#include "horo/exec.hpp"
#include "horo/group.hpp"

namespace horo {

// Marks a vertex where a (translated or loaded) field has no value.
inline constexpr std::int64_t kUndefined = std::numeric_limits<std::int64_t>::min();

enum class Provenance { kBusemann, kFile, kSynthetic };

const char* ProvenanceName(Provenance p);

// An integer-valued function on the vertices of a ball.
class ScalarField {
 public:
  ScalarField(BallPtr ball, std::vector<std::int64_t> values, Provenance provenance);

  const Ball& ball() const { return *ball_; }
  const BallPtr& ball_ptr() const { return ball_; }
  Provenance provenance() const { return provenance_; }

  std::int64_t operator[](int v) const { return values_[static_cast<std::size_t>(v)]; }
  bool defined(int v) const { return values_[static_cast<std::size_t>(v)] != kUndefined; }
  const std::vector<std::int64_t>& values() const { return values_; }

  // Busemann fields record the stabilization time of each vertex.
  const std::vector<int>& stabilization_times() const { return t_stab_; }
  void set_stabilization_times(std::vector<int> t) { t_stab_ = std::move(t); }

  bool operator==(const ScalarField& other) const {
    return ball_ == other.ball_ && values_ == other.values_;
  }

 private:
  BallPtr ball_;
  std::vector<std::int64_t> values_;
  Provenance provenance_;
  std::vector<int> t_stab_;
};

struct BusemannOptions {
  Exec exec = Exec::kParallel;
  int window = 0;  // 0: 2 * radius + |period|
  int t_max = 0;   // 0: 10 * radius + window
};

// h(v) = lim_t d(v, c(t)) - t, certified by constancy over a full window.
// Throws a resource-cap error listing the vertices that do not stabilize.
ScalarField Busemann(BallPtr ball, const RayWalk& ray, const BusemannOptions& options = {});

struct LipschitzViolation {
  int u = -1;
  Letter s = 0;
  int w = -1;
  std::int64_t hu = 0, hw = 0;
};

struct LipschitzReport {
  bool pass = true;
  std::vector<LipschitzViolation> violations;
};

LipschitzReport CheckLipschitz(const ScalarField& h);

struct DistanceLikeViolation {
  int x = -1;
  std::int64_t level = 0;
  std::int64_t lhs = 0;  // h(x)
  std::int64_t rhs = 0;  // level + d(x, h^-1(level)); kUndefined when the level set is empty
};

struct DistanceLikeReport {
  bool pass = true;
  std::int64_t checked = 0;  // (x, level) pairs examined
  std::int64_t level_min = 0, level_max = 0;
  bool degenerate_range = false;
  bool bounded_below_in_window = false;
  std::vector<DistanceLikeViolation> violations;  // worst first, capped
};

DistanceLikeReport CheckDistanceLike(const ScalarField& h, int margin, Exec exec = Exec::kParallel);

struct LevelSet {
  std::int64_t level = 0;
  std::vector<int> members;
  bool empty() const { return members.empty(); }
};

LevelSet LevelSetOf(const ScalarField& h, std::int64_t level);

// h - h(p): the representative vanishing at p.
ScalarField Normalize(const ScalarField& h, int p);

// (g h)(v) = h(g^-1 v), undefined where g^-1 v leaves the ball.
ScalarField Translate(const ScalarField& h, const Element& g);

// min_i (d(v, p_i) + o_i) over a few seeded random sources; always
// 1-Lipschitz. Sign-flipped with probability 1/2.
ScalarField RandomLipschitzField(BallPtr ball, std::uint64_t seed);

}  // namespace horo
