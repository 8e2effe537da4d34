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
#include <string>
#include <vector>

#include "horo/ball.hpp"
#include "horo/exec.hpp"
#include "horo/fields.hpp"
#include "horo/group.hpp"

namespace horo {

// Thin-triangle constants, convexity defects, contraction and Morse-gauge
// lower bounds. Every quantity here is measured from below: a finite search
// can exhibit a witness, never certify a bound.

enum class SlimCondition { kOne = 1, kTwo = 2 };

// Least delta for which the triangle with the given sides satisfies the
// condition, measured on vertices with the global metric.
std::int64_t SlimConstant(const Ball& ball, const TriangleSides& sides, SlimCondition condition);
std::int64_t SlimConstant(const Ball& ball, int x, int y, int z, SlimCondition condition);

// Largest slim-condition-1 constant over every choice of geodesic sides.
std::int64_t WorstSlimConstant(const Ball& ball, int x, int y, int z, std::size_t cap = 200);

// Rectangle p q r s measured through the diagonal [p, r]: the larger
// condition-1 constant of triangles (p, q, r) and (p, r, s).
std::int64_t RectangleThinness(const Ball& ball, int p, int q, int r, int s);

struct ConvexityDefect {
  // d(x, x_t) * den - ((den - num) d(x, y) + num d(x, z)).
  std::int64_t defect = 0;
  std::int64_t bound = 0;  // 2 * delta' * den with delta' from slim condition 2
  bool within_bound = true;
  bool interior_point = false;  // x_t lies strictly inside an edge of [y, z]
};

// x_t is the point of [y, z] at arc length (num/den) d(y, z) from y.
ConvexityDefect ConvexityDefectOf(const Ball& ball, const TriangleSides& sides,
                                  std::int64_t num, std::int64_t den);
ConvexityDefect ConvexityDefectOf(const Ball& ball, int x, int y, int z, std::int64_t num,
                                  std::int64_t den);

struct KConvexity {
  std::int64_t k_hat = 0;
  // Arg-max witness: the segment and the vertex position along it.
  std::vector<int> segment;
  int position = 0;
  std::int64_t segments = 0;
};

// Least K with h(x_i) <= (1 - i/n) h(x_0) + (i/n) h(x_n) + K along every
// segment of the family.
KConvexity KConvexityOf(const ScalarField& h, const std::vector<GeodesicSegment>& family);

// Same quantity over every geodesic between ball vertex pairs whose
// geodesics all stay in the ball; at most `per_pair_cap` geodesics per pair.
KConvexity KConvexityOverBall(const ScalarField& h, std::size_t per_pair_cap = 1000,
                              Exec exec = Exec::kParallel);

struct SampleBall {
  Element center;
  int radius = 0;
};

struct ContractionSample {
  Element center;
  int radius = 0;
  std::int64_t distance_to_path = 0;
  std::int64_t diameter = 0;  // diameter of the projection of the ball onto the path
};

struct ContractionProfile {
  std::vector<Element> geodesic;
  std::vector<ContractionSample> samples;
  // Per distinct radius (ascending), the largest measured diameter.
  std::vector<std::pair<int, std::int64_t>> max_by_radius;
  std::int64_t d_hat = 0;
  bool growing = false;           // positive least-squares slope
  bool strictly_growing = false;  // max_by_radius strictly increasing
};

// `path` must be a geodesic (d(path[i], path[j]) = |i - j|). Samples must be
// disjoint from it.
ContractionProfile ContractionProfileOf(const GroupSpec& group, const std::vector<Element>& path,
                                        const std::vector<SampleBall>& samples,
                                        Exec exec = Exec::kParallel);

// Candidate balls path[k] * s^(r+1) for every vertex k, letter s and radius r,
// keeping those at distance > r from the path.
std::vector<SampleBall> CandidateSampleBalls(const GroupSpec& group,
                                             const std::vector<Element>& path,
                                             const std::vector<int>& radii);

// Keeps, per radius, only the sample with the largest diameter.
ContractionProfile WorstCaseContraction(const GroupSpec& group, const std::vector<Element>& path,
                                        const std::vector<int>& radii, Exec exec = Exec::kParallel);

struct Rational {
  std::int64_t num = 1;
  std::int64_t den = 1;
};

// For a unit-speed path: p d(s, t) >= q |s - t| - p eps on all pairs, with
// lambda = p / q >= 1. The upper quasi-isometry bound holds automatically.
bool IsQuasiGeodesic(const GroupSpec& group, const std::vector<Element>& path, Rational lambda,
                     std::int64_t epsilon);

struct ExcursionOptions {
  int budget = 4;                      // endpoint pairs with d <= budget
  std::size_t per_pair_node_cap = 200'000;
  bool dfs = true;
  bool detours = true;
  Exec exec = Exec::kParallel;
};

struct ExcursionWitness {
  std::vector<Element> path;
  std::int64_t excursion = 0;
  std::string family;  // "dfs" or "detour"
};

struct GaugeEstimate {
  Rational lambda;
  std::int64_t epsilon = 0;
  int budget = 0;
  std::int64_t n_hat = 0;  // lower bound for N(lambda, epsilon)
  ExcursionWitness witness;
  std::string scope;
  bool partial = false;  // some DFS hit its node cap
  std::int64_t paths_examined = 0;
};

// Largest distance to `gamma` of any (lambda, eps)-quasi-geodesic found with
// endpoints on gamma: exhaustive in-ball DFS plus the flat detour family
// s^k . w . s^-k.
GaugeEstimate QuasigeodesicExcursion(const Ball& ball, const std::vector<Element>& gamma,
                                     Rational lambda, std::int64_t epsilon,
                                     const ExcursionOptions& options = {});

}  // namespace horo
