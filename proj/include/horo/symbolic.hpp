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
#include <optional>
#include <string>
#include <vector>

#include "horo/ball.hpp"
#include "horo/exec.hpp"
#include "horo/fields.hpp"
#include "horo/group.hpp"

namespace horo {

// Entry of a configuration on an edge that leaves the window (or a masked
// vertex): no data.
inline constexpr std::int8_t kAbsent = std::numeric_limits<std::int8_t>::min();
// Pattern entry that matches anything.
inline constexpr std::int8_t kWildcard = std::numeric_limits<std::int8_t>::max();

// A symbol is a vector of small integers, one per component. For derivative
// fields the components are the letters of S in letter order.
using Symbol = std::vector<std::int8_t>;

// The alphabet {-1,0,1}^S, never materialized.
class Alphabet {
 public:
  explicit Alphabet(const GroupSpec& group);

  int width() const { return width_; }
  std::uint64_t size() const;  // 3^|S|
  // Base-3 index with component 0 most significant and digit value + 1.
  std::uint64_t index(const Symbol& letter) const;
  Symbol letter(std::uint64_t index) const;
  bool contains(const Symbol& letter) const;
  std::string format(const Symbol& letter) const;  // {a:-1,a':1,...}

 private:
  std::vector<std::string> names_;
  int width_;
};

// A windowed configuration: one symbol of fixed width per ball vertex.
class Configuration {
 public:
  Configuration(BallPtr ball, int width);

  const Ball& ball() const { return *ball_; }
  const BallPtr& ball_ptr() const { return ball_; }
  int width() const { return width_; }

  std::int8_t at(int v, int s) const { return values_[Offset(v, s)]; }
  void set(int v, int s, std::int8_t x) { values_[Offset(v, s)] = x; }
  bool present(int v, int s) const { return at(v, s) != kAbsent; }
  Symbol symbol(int v) const;
  void set_symbol(int v, const Symbol& symbol);
  const std::vector<std::int8_t>& values() const { return values_; }

  bool operator==(const Configuration& other) const {
    return ball_ == other.ball_ && width_ == other.width_ && values_ == other.values_;
  }

 private:
  std::size_t Offset(int v, int s) const {
    return static_cast<std::size_t>(v) * static_cast<std::size_t>(width_) + static_cast<std::size_t>(s);
  }

  BallPtr ball_;
  int width_;
  std::vector<std::int8_t> values_;
};

// sigma(v)(s) = h(vs) - h(v): a configuration of width |S|.
using DerivativeField = Configuration;

// Throws a precondition error if h is not 1-Lipschitz. Edges leaving the
// ball, or touching an undefined value, are absent.
DerivativeField Derivative(const ScalarField& h);

// A constant letter on every in-ball edge.
DerivativeField ConstantDerivative(BallPtr ball, const Symbol& letter);

struct EdgeDefect {
  int v = -1;
  Letter s = 0;
  std::int8_t forward = 0, backward = 0;  // sigma(v)(s), sigma(vs)(s')
};

struct LoopDefect {
  int v = -1;  // corner of the square v, vs, vst, vt
  Letter s = 0, t = 0;
  int sum = 0;
};

struct LoopReport {
  bool pass = true;
  std::vector<int> out_of_range;  // vertices carrying a value outside {-1,0,1}
  std::vector<EdgeDefect> edges;
  std::vector<LoopDefect> loops;
  std::int64_t squares_checked = 0;
};

LoopReport LoopCheck(const DerivativeField& sigma);

// Sums increments outward from `base`. Throws a precondition error when the
// loop check fails (naming a failing edge or square).
ScalarField Integrate(const DerivativeField& sigma, int base, std::int64_t base_value);

// (g sigma)(v) = sigma(g^-1 v). Vertices with g^-1 v outside the ball, and
// edges leaving the ball, are absent. Throws if the overlap is empty.
Configuration ShiftAct(const Element& g, const Configuration& sigma);

struct OverlapComparison {
  bool equal = true;
  std::int64_t compared = 0;
  std::optional<std::pair<int, int>> first_mismatch;  // (vertex, component)
};

// Compares two configurations wherever both are present.
OverlapComparison CompareOnOverlap(const Configuration& a, const Configuration& b);

struct Pattern {
  std::vector<Element> support;
  std::vector<Symbol> symbols;  // one per support element, may hold wildcards
};

// (g p)(g f) = p(f).
Pattern ShiftAct(const GroupSpec& group, const Element& g, const Pattern& p);

// Finite list of patterns on one shared support.
class ForbiddenSet {
 public:
  ForbiddenSet(std::vector<Element> support, std::vector<std::vector<Symbol>> patterns);

  const std::vector<Element>& support() const { return support_; }
  const std::vector<std::vector<Symbol>>& patterns() const { return patterns_; }
  std::size_t size() const { return patterns_.size(); }

 private:
  std::vector<Element> support_;
  std::vector<std::vector<Symbol>> patterns_;
};

struct PatternMatch {
  Element g;       // (g sigma)|_F is forbidden
  int anchor = -1;  // vertex g^-1
  int pattern = -1;
};

struct ScanReport {
  std::vector<PatternMatch> matches;  // ordered by anchor, then pattern
  std::int64_t positions_tested = 0;
  std::int64_t positions_skipped = 0;  // support would leave the ball
};

// Throws a precondition error when no translate of the support fits.
ScanReport ForbiddenScan(const Configuration& sigma, const ForbiddenSet& forbidden,
                         Exec exec = Exec::kParallel);

// sigma(v)(s) != -sigma(vs)(s') as forbidden patterns on the support {1, s}.
ForbiddenSet AntisymmetryForbiddenSet(const GroupSpec& group);

// Three equal symbols in a row, column or diagonal of the 3x3 block
// {a^i b^j : 0 <= i, j <= 2}; width-1 configurations over {0, 1}.
ForbiddenSet TicTacToeForbiddenSet(const GroupSpec& group);

struct CodingResult {
  ScalarField h;
  DerivativeField sigma;
  ScalarField normalized;
  DistanceLikeReport distance_like;
  LoopReport loops;
};

// Busemann field of a ray based at the ball center, its derivative, and the
// checks the pair must pass.
CodingResult CodingPipeline(BallPtr ball, const RayWalk& ray, int margin);

}  // namespace horo
