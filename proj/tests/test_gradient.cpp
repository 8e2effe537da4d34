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

#include <gtest/gtest.h>

#include <cstdlib>
#include <functional>
#include <set>

#include "horo/error.hpp"
#include "horo/fixtures.hpp"
#include "horo/gradient.hpp"
#include "oracles.hpp"

namespace {

using horo::Ball;
using horo::BallPtr;
using horo::GroupSpec;
using horo::ScalarField;
namespace fx = horo::fixtures;

using Point = std::pair<std::int64_t, std::int64_t>;

int Index(const Ball& ball, const std::string& nf) { return ball.index_of(ball.group().parse_element(nf)); }

ScalarField Synthetic(const BallPtr& ball, const std::function<std::int64_t(Point)>& f) {
  std::vector<std::int64_t> values;
  for (int v = 0; v < ball->size(); ++v) values.push_back(f(oracle::XY(ball->group(), ball->element(v))));
  return ScalarField(ball, values, horo::Provenance::kSynthetic);
}

std::vector<Point> Coords(const Ball& ball, const std::vector<int>& path) {
  std::vector<Point> out;
  for (int v : path) out.push_back(oracle::XY(ball.group(), ball.element(v)));
  return out;
}

std::vector<int> RayPath(const Ball& ball, const horo::RayWalk& ray, int length) {
  std::vector<int> out;
  for (int t = 0; t <= length; ++t) out.push_back(ball.index_of(ray.at(t)));
  return out;
}

TEST(GradientTest, Successors) {
  const GroupSpec z2 = fx::Z2();
  const BallPtr zb = Ball::Build(z2, z2.identity(), 5);
  const ScalarField diag = Synthetic(zb, [](Point p) { return -(p.first + p.second); });
  EXPECT_EQ(horo::GradientSuccessors(diag, 0), (std::vector<int>{Index(*zb, "a"), Index(*zb, "b")}));
  const ScalarField axis = Synthetic(zb, [](Point p) { return -p.first + std::llabs(p.second); });
  EXPECT_EQ(horo::GradientSuccessors(axis, 0), std::vector<int>{Index(*zb, "a")});

  const GroupSpec f2 = fx::F2();
  const BallPtr fb = Ball::Build(f2, f2.identity(), 5);
  const ScalarField tree = horo::Busemann(fb, fx::Ray(f2, "", "a", 5));
  EXPECT_EQ(horo::GradientSuccessors(tree, Index(*fb, "b")), std::vector<int>{0});
}

TEST(GradientTest, TreeRayIsUnique) {
  const GroupSpec f2 = fx::F2();
  const BallPtr fb = Ball::Build(f2, f2.identity(), 5);
  const ScalarField h = horo::Busemann(fb, fx::Ray(f2, "", "a", 5));
  horo::GradientOptions all;
  all.policy = horo::GradientPolicy::kAll;
  const horo::GradientTree tree = horo::GradientRay(h, Index(*fb, "b"), all);
  ASSERT_EQ(tree.leaves.size(), 1u);
  std::vector<int> expected{Index(*fb, "b")};
  for (const char* nf : {"1", "a", "a a", "a a a", "a a a a", "a a a a a"}) expected.push_back(Index(*fb, nf));
  EXPECT_EQ(tree.path_to(tree.leaves[0]), expected);
}

TEST(GradientTest, AllMonotoneLatticePaths) {
  const GroupSpec z2 = fx::Z2();
  const BallPtr zb = Ball::Build(z2, z2.identity(), 4);
  const ScalarField h = Synthetic(zb, [](Point p) { return -(p.first + p.second); });
  horo::GradientOptions all;
  all.policy = horo::GradientPolicy::kAll;
  const horo::GradientTree tree = horo::GradientRay(h, 0, all);
  EXPECT_EQ(tree.leaves.size(), 16u);
  std::set<std::vector<Point>> seen;
  for (const horo::GradientPath& path : tree.paths(h)) {
    const std::vector<Point> c = Coords(*zb, path.vertices());
    ASSERT_EQ(c.size(), 5u);
    for (std::size_t i = 1; i < c.size(); ++i) {
      const std::int64_t dx = c[i].first - c[i - 1].first, dy = c[i].second - c[i - 1].second;
      EXPECT_TRUE((dx == 1 && dy == 0) || (dx == 0 && dy == 1));
    }
    seen.insert(c);
  }
  EXPECT_EQ(seen.size(), 16u);
}

// Right/down moves from (0, 2) under -x + |y|, enumerated until the ball boundary.
void Enumerate(Point p, int radius, std::vector<Point>& path, std::set<std::vector<Point>>& out) {
  path.push_back(p);
  if (std::llabs(p.first) + std::llabs(p.second) >= radius) {
    out.insert(path);
  } else {
    Enumerate({p.first + 1, p.second}, radius, path, out);
    if (p.second > 0) Enumerate({p.first, p.second - 1}, radius, path, out);
  }
  path.pop_back();
}

TEST(GradientTest, AxisFieldFromAbove) {
  const GroupSpec z2 = fx::Z2();
  const BallPtr zb = Ball::Build(z2, z2.identity(), 6);
  const ScalarField h = horo::Busemann(zb, fx::Ray(z2, "", "a", 6));
  horo::GradientOptions all;
  all.policy = horo::GradientPolicy::kAll;
  const horo::GradientTree tree = horo::GradientRay(h, Index(*zb, "b b"), all);
  std::set<std::vector<Point>> got, expected;
  for (const horo::GradientPath& path : tree.paths(h)) got.insert(Coords(*zb, path.vertices()));
  std::vector<Point> scratch;
  Enumerate({0, 2}, 6, scratch, expected);
  EXPECT_EQ(got, expected);
}

TEST(GradientTest, PoliciesAndCaps) {
  const GroupSpec z2 = fx::Z2();
  const BallPtr zb = Ball::Build(z2, z2.identity(), 6);
  const ScalarField h = Synthetic(zb, [](Point p) { return -(p.first + p.second); });
  const horo::GradientTree first = horo::GradientRay(h, 0);
  ASSERT_EQ(first.leaves.size(), 1u);
  EXPECT_EQ(first.path_to(first.leaves[0]).size(), 7u);

  horo::GradientOptions random;
  random.policy = horo::GradientPolicy::kRandom;
  random.seed = 11;
  const horo::GradientTree r1 = horo::GradientRay(h, 0, random);
  const horo::GradientTree r2 = horo::GradientRay(h, 0, random);
  EXPECT_EQ(r1.path_to(r1.leaves[0]), r2.path_to(r2.leaves[0]));
  EXPECT_TRUE(horo::IsGradientArc(h, r1.path_to(r1.leaves[0])));

  horo::GradientOptions margin;
  margin.margin = 2;
  const horo::GradientTree short_ray = horo::GradientRay(h, 0, margin);
  EXPECT_EQ(short_ray.path_to(short_ray.leaves[0]).size(), 5u);

  horo::GradientOptions capped;
  capped.policy = horo::GradientPolicy::kAll;
  capped.leaf_cap = 10;
  const horo::GradientTree tree = horo::GradientRay(h, 0, capped);
  EXPECT_TRUE(tree.truncated);
  EXPECT_LE(tree.leaves.size(), 10u);
}

TEST(GradientTest, IsGradientArcExamples) {
  const GroupSpec z2 = fx::Z2();
  const BallPtr zb = Ball::Build(z2, z2.identity(), 4);
  const ScalarField h = Synthetic(zb, [](Point p) { return -(p.first + p.second); });
  EXPECT_TRUE(horo::IsGradientArc(h, {0, Index(*zb, "a"), Index(*zb, "a b")}));
  EXPECT_FALSE(horo::IsGradientArc(h, {0, Index(*zb, "a"), 0}));

  const GroupSpec f2 = fx::F2();
  const BallPtr fb = Ball::Build(f2, f2.identity(), 4);
  const ScalarField tree = horo::Busemann(fb, fx::Ray(f2, "", "a", 4));
  EXPECT_FALSE(horo::IsGradientArc(tree, {Index(*fb, "b"), 0, Index(*fb, "b'")}));
  EXPECT_THROW(horo::GradientPath(tree, {Index(*fb, "b"), 0, Index(*fb, "b'")}), horo::Error);
}

TEST(GradientTest, Concatenation) {
  const GroupSpec z2 = fx::Z2();
  const BallPtr zb = Ball::Build(z2, z2.identity(), 6);
  const ScalarField h = Synthetic(zb, [](Point p) { return -(p.first + p.second); });
  const std::vector<int> first{0, Index(*zb, "a"), Index(*zb, "a b")};
  const std::vector<int> second{Index(*zb, "a b"), Index(*zb, "a a b"), Index(*zb, "a a b b")};
  ASSERT_TRUE(horo::IsGradientArc(h, first));
  ASSERT_TRUE(horo::IsGradientArc(h, second));
  std::vector<int> joined = first;
  joined.insert(joined.end(), second.begin() + 1, second.end());
  EXPECT_TRUE(horo::IsGradientArc(h, joined));
}

TEST(FellowTravelTest, StaircasesDiverge) {
  const GroupSpec z2 = fx::Z2();
  const BallPtr zb = Ball::Build(z2, z2.identity(), 10);
  const horo::RayWalk alpha_ray = fx::Ray(z2, "a a", "b b b b b b a a a a a a", 10);
  const horo::RayWalk beta_ray = fx::Ray(z2, "b b", "a a a a a a b b b b b b", 10);
  const ScalarField h = horo::Busemann(zb, alpha_ray);
  for (int v = 0; v < zb->size(); ++v) {
    const auto [x, y] = oracle::XY(z2, zb->element(v));
    ASSERT_EQ(h[v], -(x + y));
  }
  const horo::GradientPath alpha(h, RayPath(*zb, alpha_ray, 10));
  const horo::GradientPath beta(h, RayPath(*zb, beta_ray, 10));
  const horo::FellowTravelProfile profile = horo::FellowTravel(h, alpha, beta);
  EXPECT_EQ(Coords(*zb, {alpha[8]})[0], Point(2, 6));
  EXPECT_EQ(Coords(*zb, {beta[8]})[0], Point(6, 2));
  EXPECT_EQ(profile.distance[8], 8);
  // |x_a - x_b| + |y_a - y_b| along R^2 U^6 R^6 and its transpose.
  EXPECT_EQ(profile.distance, (std::vector<std::int64_t>{0, 2, 4, 2, 0, 2, 4, 6, 8, 6, 4}));
  EXPECT_EQ(profile.max, 8);

  // a a b b b ... against b b a a a ...: both are gradient rays and drift apart linearly.
  const horo::RayWalk up = fx::Ray(z2, "a a", "b", 10);
  const horo::RayWalk right = fx::Ray(z2, "b b", "a", 10);
  const horo::FellowTravelProfile apart =
      horo::FellowTravel(h, horo::GradientPath(h, RayPath(*zb, up, 10)),
                         horo::GradientPath(h, RayPath(*zb, right, 10)));
  EXPECT_EQ(apart.distance, (std::vector<std::int64_t>{0, 2, 4, 2, 0, 2, 4, 6, 8, 10, 12}));
  EXPECT_EQ(apart.max, 12);
  EXPECT_TRUE(apart.tail_nondecreasing);
}

TEST(FellowTravelTest, TreeRaysMerge) {
  const GroupSpec f2 = fx::F2();
  const BallPtr fb = Ball::Build(f2, f2.identity(), 6);
  const ScalarField h = horo::Busemann(fb, fx::Ray(f2, "", "a", 6));
  const horo::GradientTree from_b = horo::GradientRay(h, Index(*fb, "b"));
  const horo::GradientTree from_e = horo::GradientRay(h, 0);
  const horo::GradientPath alpha(h, from_b.path_to(from_b.leaves[0]));
  const horo::GradientPath beta(h, from_e.path_to(from_e.leaves[0]));
  const horo::FellowTravelProfile profile = horo::FellowTravel(h, alpha, beta);
  EXPECT_EQ(profile.alpha_offset, 1);
  EXPECT_EQ(profile.beta_offset, 0);
  EXPECT_GT(profile.distance.size(), 3u);
  EXPECT_EQ(profile.sup_from(0), 0);

  const horo::FellowTravelProfile self = horo::FellowTravel(h, beta, beta);
  for (std::int64_t d : self.distance) EXPECT_EQ(d, 0);
}

}  // namespace
