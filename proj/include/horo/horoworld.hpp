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
#include <vector>

#include "horo/ball.hpp"
#include "horo/exec.hpp"
#include "horo/fields.hpp"
#include "horo/group.hpp"

namespace horo {

struct Horosphere {
  std::int64_t r = 0;
  std::vector<int> members;  // h = -r
  bool empty() const { return members.empty(); }
};

struct Horoball {
  std::int64_t r = 0;
  std::vector<int> members;  // h <= -r
  bool empty() const { return members.empty(); }
};

Horosphere HorosphereOf(const ScalarField& h, std::int64_t r);
Horoball HoroballOf(const ScalarField& h, std::int64_t r);

// Length of the longest initial segment along which every geodesic from the
// ball center to v stays within distance 1 of the ray. The ray must start at
// the center.
std::int64_t FellowTravelDepth(const Ball& ball, const RayWalk& ray, int v);

struct ConvergenceRow {
  int n = 0;
  std::int64_t sphere_size = 0;  // |H_n within the ball|
  std::int64_t depth = -1;       // m(n); -1 for an empty sphere
  int argmin = -1;               // first vertex realizing m(n)
  bool witness = false;          // 2 m(n) < n - 2 slack
};

struct ConvergenceReport {
  std::vector<ConvergenceRow> rows;
  std::int64_t slack = 1;
  bool convergent_evidence = true;
  std::vector<int> witness_sequence;  // argmin of each witnessing row
};

// m(n) = min over H_n of the fellow-travel depth, for 0 <= n <= horizon.
ConvergenceReport ConvergenceWitness(const ScalarField& h, const RayWalk& ray, int horizon,
                                     Exec exec = Exec::kParallel);

struct ConvexityFinding {
  int x = -1, y = -1;
  int outside = -1;  // a vertex of the interval [x, y] outside the horoball
};

struct HoroballConvexityReport {
  bool pass = true;
  std::int64_t members = 0;
  std::int64_t pairs_checked = 0;
  std::int64_t pairs_skipped = 0;  // some geodesic leaves the ball
  std::vector<ConvexityFinding> findings;  // capped, ordered by (x, y)
};

HoroballConvexityReport HoroballConvexity(const ScalarField& h, std::int64_t r,
                                          Exec exec = Exec::kParallel);

struct SumBound {
  std::int64_t min = 0;
  std::vector<int> minimizers;
};

// min over the ball of h1 + h2 and where it is attained.
SumBound SumBoundOf(const ScalarField& h1, const ScalarField& h2);

struct IntersectionRow {
  int radius = 0;
  std::int64_t size = 0;
  std::int64_t diameter = 0;  // -1 for an empty intersection
  std::int64_t sum_min = 0;
};

struct IntersectionReport {
  std::vector<IntersectionRow> rows;
  bool bounded_evidence = false;  // diameter equal on the two largest radii
};

// Busemann fields of both rays on balls of the given radii (centred at the
// identity) and the intersection of their r1 / r2 horoballs.
IntersectionReport HoroballIntersection(const GroupSpec& group, const RayWalk& zeta,
                                        const RayWalk& eta, std::int64_t r1, std::int64_t r2,
                                        const std::vector<int>& radii);

struct DivergenceReport {
  std::vector<std::int64_t> values;  // h(c'(t)) while c'(t) is in the ball
  bool tail_increasing = false;      // strictly, for t >= len / 2
  bool divergence_evidence = false;
};

// Throws a precondition error if `other` agrees with `zeta` inside the ball.
DivergenceReport DivergenceAlongOtherRay(const ScalarField& h, const RayWalk& zeta,
                                         const RayWalk& other);

struct ProjectionReport {
  bool pass = true;
  std::int64_t checked = 0;
  std::vector<int> violations;
};

// b_c(p(x)) <= b_c(x) for every projection p(x) of x onto the ray.
ProjectionReport ProjectionInequality(const ScalarField& h, const RayWalk& ray);

struct SphereMinimum {
  std::int64_t value = 0;
  std::vector<int> argmin;
  std::int64_t argmin_diameter = 0;
  bool unique_with_expected_value = false;  // single argmin, value h(x0) - r
};

// Minimum of h on the sphere S_r(x0); the sphere must fit in the ball.
SphereMinimum SphereMinimumOf(const ScalarField& h, int x0, int r);

}  // namespace horo
