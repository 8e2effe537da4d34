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

#include <random>

#include "horo/ball.hpp"
#include "horo/error.hpp"
#include "horo/fixtures.hpp"
#include "horo/group.hpp"
#include "oracles.hpp"

namespace {

using horo::Element;
using horo::GroupSpec;
namespace fx = horo::fixtures;

TEST(GroupTest, AbelianMultiplicationAddsVectors) {
  const GroupSpec z2 = fx::Z2();
  EXPECT_EQ(z2.multiply(z2.parse_element("a"), z2.parse_element("b")), z2.parse_element("a b"));
  EXPECT_EQ(z2.format(z2.parse_element("b a b' a")), "a a");
}

TEST(GroupTest, FreeReduction) {
  const GroupSpec f2 = fx::F2();
  EXPECT_TRUE(f2.multiply(f2.parse_element("a"), f2.parse_element("a'")).is_identity());
  EXPECT_EQ(f2.format(f2.parse_element("a b b' a")), "a a");
  EXPECT_EQ(f2.length(f2.parse_element("a a")), 2);
}

TEST(GroupTest, FreeProductNormalForm) {
  const GroupSpec g = fx::Z2StarZ();
  const Element e = g.multiply(g.multiply(g.parse_element("a b"), g.parse_element("c")), g.parse_element("a"));
  ASSERT_EQ(e.syllables().size(), 3u);
  EXPECT_EQ(e.syllables()[0].data, (std::vector<int>{1, 1}));
  EXPECT_EQ(e.syllables()[1].factor, 1);
  EXPECT_EQ(e.syllables()[2].data, (std::vector<int>{1, 0}));
  EXPECT_EQ(g.format(e), "a b c a");
}

TEST(GroupTest, DistanceExamples) {
  const GroupSpec z2 = fx::Z2();
  EXPECT_EQ(z2.distance(z2.identity(), z2.parse_element("a a a b b b b")), 7);
  const GroupSpec f2 = fx::F2();
  EXPECT_EQ(f2.distance(f2.identity(), f2.parse_element("a b a b'")), 4);
  const GroupSpec g = fx::Z2StarZ();
  const Element target = g.parse_element("a a c b");
  EXPECT_EQ(g.distance(g.identity(), target), 4);
  // Breadth-first search on the oracle's Cayley graph agrees.
  const auto bfs = oracle::BfsBall(oracle::Z2StarZ(), 4);
  EXPECT_EQ(bfs.at(oracle::Reduce(oracle::Z2StarZ(), "aacb")).second, 4);
}

void CheckAgainstOracle(const GroupSpec& group, const oracle::Presentation& p, int radius) {
  const auto bfs = oracle::BfsBall(p, radius);
  const horo::BallPtr ball = horo::Ball::Build(group, group.identity(), radius);
  ASSERT_EQ(static_cast<std::size_t>(ball->size()), bfs.size());
  for (int v = 0; v < ball->size(); ++v) {
    const std::string word = oracle::Spell(group, ball->element(v));
    const auto it = bfs.find(oracle::Reduce(p, word));
    ASSERT_NE(it, bfs.end()) << word;
    EXPECT_EQ(it->second.second, ball->dist_from_center(v)) << word;
    EXPECT_EQ(group.length(ball->element(v)), it->second.second) << word;
  }
}

TEST(GroupTest, NormalFormsMatchOracleEnumeration) {
  CheckAgainstOracle(fx::Z2(), oracle::Z2(), 6);
  CheckAgainstOracle(fx::F2(), oracle::F2(), 5);
  CheckAgainstOracle(fx::Z2StarZ(), oracle::Z2StarZ(), 4);
}

// Global distances against graph distances in a ball large enough to contain
// every geodesic between points of the inner ball.
void CheckDistancesAgainstBfs(const GroupSpec& group, int radius) {
  const horo::BallPtr big = horo::Ball::Build(group, group.identity(), 2 * radius);
  for (int u = 0; u < big->size() && big->dist_from_center(u) <= radius; ++u) {
    const std::vector<int> d = big->bfs_distances(u);
    for (int v = 0; v < big->size() && big->dist_from_center(v) <= radius; ++v) {
      ASSERT_EQ(group.distance(big->element(u), big->element(v)), d[static_cast<std::size_t>(v)]);
    }
  }
}

TEST(GroupTest, DistanceEqualsGraphDistanceZ2) { CheckDistancesAgainstBfs(fx::Z2(), 6); }
TEST(GroupTest, DistanceEqualsGraphDistanceF2) { CheckDistancesAgainstBfs(fx::F2(), 4); }
TEST(GroupTest, DistanceEqualsGraphDistanceZ2StarZ) { CheckDistancesAgainstBfs(fx::Z2StarZ(), 4); }

TEST(GroupTest, InverseAndAssociativity) {
  for (const GroupSpec& group : {fx::Z2(), fx::F2(), fx::Z2StarZ()}) {
    const horo::BallPtr ball = horo::Ball::Build(group, group.identity(), 4);
    for (int v = 0; v < ball->size(); ++v) {
      const Element& a = ball->element(v);
      EXPECT_TRUE(group.multiply(a, group.inverse(a)).is_identity());
      EXPECT_TRUE(group.multiply(group.inverse(a), a).is_identity());
    }
    std::mt19937_64 rng(11);
    for (int i = 0; i < 500; ++i) {
      const Element& a = ball->element(static_cast<int>(rng() % ball->size()));
      const Element& b = ball->element(static_cast<int>(rng() % ball->size()));
      const Element& c = ball->element(static_cast<int>(rng() % ball->size()));
      EXPECT_EQ(group.multiply(group.multiply(a, b), c), group.multiply(a, group.multiply(b, c)));
      EXPECT_EQ(group.multiply(a, group.identity()), a);
      EXPECT_EQ(group.distance(a, b), group.distance(b, a));
      EXPECT_LE(group.distance(a, c), group.distance(a, b) + group.distance(b, c));
    }
  }
}

TEST(GroupTest, ParseFormatRoundTrip) {
  const GroupSpec g = fx::Z2StarZ();
  const horo::BallPtr ball = horo::Ball::Build(g, g.identity(), 3);
  for (int v = 0; v < ball->size(); ++v) {
    EXPECT_EQ(g.parse_element(g.format(ball->element(v))), ball->element(v));
  }
  EXPECT_EQ(g.format(g.identity()), "1");
  EXPECT_TRUE(g.parse_element("1").is_identity());
  EXPECT_TRUE(g.parse_element("").is_identity());
}

TEST(GroupTest, Errors) {
  EXPECT_THROW(GroupSpec({}), horo::Error);
  EXPECT_THROW(GroupSpec({{horo::FactorKind::kFree, {"a", "a"}}}), horo::Error);
  EXPECT_THROW(GroupSpec({{horo::FactorKind::kFree, {}}}), horo::Error);
  EXPECT_THROW(GroupSpec({{horo::FactorKind::kFree, {"x'"}}}), horo::Error);
  const GroupSpec f2 = fx::F2();
  EXPECT_THROW(f2.parse_word("a z"), horo::Error);
  // Elements carry a tag of their presentation; Z^2 elements are not F_2 elements.
  const GroupSpec other = fx::Z2();
  EXPECT_EQ(fx::F2().tag(), f2.tag());
  EXPECT_THROW(f2.multiply(f2.identity(), other.generator(0)), horo::Error);
  try {
    f2.distance(f2.identity(), other.generator(0));
    FAIL();
  } catch (const horo::Error& e) {
    EXPECT_EQ(e.kind(), horo::ErrorKind::kPrecondition);
  }
}

TEST(RayTest, Evaluation) {
  const GroupSpec f2 = fx::F2();
  const horo::RayWalk a = fx::Ray(f2, "", "a", 4);
  EXPECT_EQ(a.at(3), f2.parse_element("a a a"));
  const GroupSpec z2 = fx::Z2();
  const horo::RayWalk rr = fx::Ray(z2, "a a", "b", 4);
  EXPECT_EQ(rr.at(2), z2.parse_element("a a"));
  EXPECT_TRUE(rr.at(0).is_identity());
  EXPECT_EQ(rr.horizon(), horo::RayWalk::DefaultHorizon(4, 1));
  for (int s = 0; s <= rr.horizon(); ++s) {
    EXPECT_EQ(z2.length(rr.at(s)), s);
    for (int t = 0; t <= rr.horizon(); ++t) EXPECT_EQ(z2.distance(rr.at(s), rr.at(t)), std::abs(t - s));
  }
  // Periodic rays extend past the verified horizon.
  EXPECT_EQ(z2.length(rr.at(100)), 100);
}

TEST(RayTest, RejectsNonGeodesicWords) {
  const GroupSpec f2 = fx::F2();
  EXPECT_THROW(fx::Ray(f2, "a", "a'", 4), horo::Error);
  EXPECT_THROW(fx::Ray(f2, "", "a b a'", 4), horo::Error);
  const GroupSpec z2 = fx::Z2();
  EXPECT_THROW(fx::Ray(z2, "a", "b a'", 4), horo::Error);
}

TEST(RayTest, FiniteRayStopsAtItsPrefix) {
  const GroupSpec g = fx::Z2StarZ();
  const horo::RayWalk ray = fx::IncreasingPowersRay(g, 20);
  EXPECT_FALSE(ray.periodic());
  EXPECT_EQ(fx::IncreasingPowersWord(9), "a c a a c a a a c");
  EXPECT_GE(ray.horizon(), 20);
  for (int t = 0; t <= ray.horizon(); ++t) EXPECT_EQ(g.length(ray.at(t)), t);
  EXPECT_THROW(ray.at(ray.horizon() + 1), horo::Error);
}

}  // namespace
