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

#include <algorithm>
#include <cstdlib>
#include <functional>

#include "horo/error.hpp"
#include "horo/fixtures.hpp"
#include "horo/morse.hpp"
#include "oracles.hpp"

namespace {

using horo::Ball;
using horo::BallPtr;
using horo::Element;
using horo::GroupSpec;
using horo::ScalarField;
namespace fx = horo::fixtures;

using Point = std::pair<std::int64_t, std::int64_t>;

std::int64_t L1(Point p, Point q) { return std::llabs(p.first - q.first) + std::llabs(p.second - q.second); }

Element Power(const GroupSpec& group, horo::Letter s, std::int64_t n) {
  Element out = group.identity();
  for (std::int64_t i = 0; i < std::llabs(n); ++i) {
    out = group.multiply_letter(out, n > 0 ? s : horo::InverseLetter(s));
  }
  return out;
}

Element At(const GroupSpec& z2, std::int64_t x, std::int64_t y) {
  return z2.multiply(Power(z2, 0, x), Power(z2, 2, y));
}

int IndexXY(const Ball& ball, std::int64_t x, std::int64_t y) { return ball.index_of(At(ball.group(), x, y)); }

horo::GeodesicSegment Walk(const Ball& ball, const std::vector<Point>& pts) {
  horo::GeodesicSegment seg;
  for (const Point& p : pts) seg.vertices.push_back(IndexXY(ball, p.first, p.second));
  return seg;
}

std::vector<Point> Line(Point from, Point to) {
  std::vector<Point> out{from};
  Point p = from;
  while (p != to) {
    if (p.first != to.first) {
      p.first += p.first < to.first ? 1 : -1;
    } else {
      p.second += p.second < to.second ? 1 : -1;
    }
    out.push_back(p);
  }
  return out;
}

std::vector<int> InnerVertices(const Ball& ball, int radius) {
  std::vector<int> out;
  for (int v = 0; v < ball.size() && ball.dist_from_center(v) <= radius; ++v) out.push_back(v);
  return out;
}

TEST(SlimTest, PlaneTriangleWithStaircaseSide) {
  const GroupSpec z2 = fx::Z2();
  const BallPtr ball = Ball::Build(z2, z2.identity(), 6);
  const std::vector<Point> xy = Line({0, 0}, {4, 0});
  const std::vector<Point> xz = Line({0, 0}, {0, 4});
  const std::vector<Point> yz{{4, 0}, {3, 0}, {3, 1}, {2, 1}, {2, 2}, {1, 2}, {1, 3}, {0, 3}, {0, 4}};
  // Independent l1 oracle: largest distance from a side vertex to the other two sides.
  std::int64_t oracle_delta = 0;
  const std::vector<const std::vector<Point>*> sides{&xy, &xz, &yz};
  for (std::size_t i = 0; i < 3; ++i) {
    for (const Point& p : *sides[i]) {
      std::int64_t best = 1 << 20;
      for (std::size_t j = 0; j < 3; ++j) {
        if (j == i) continue;
        for (const Point& q : *sides[j]) best = std::min(best, L1(p, q));
      }
      oracle_delta = std::max(oracle_delta, best);
    }
  }
  ASSERT_EQ(oracle_delta, 2);
  const horo::TriangleSides t{Walk(*ball, xy), Walk(*ball, xz), Walk(*ball, yz)};
  EXPECT_EQ(horo::SlimConstant(*ball, t, horo::SlimCondition::kOne), 2);
  EXPECT_GE(horo::SlimConstant(*ball, t, horo::SlimCondition::kTwo), 2);

  const int x = IndexXY(*ball, 0, 0), y = IndexXY(*ball, 4, 0), z = IndexXY(*ball, 0, 4);
  // The lexicographically first [y, z] turns at the origin and the triangle collapses.
  EXPECT_EQ(horo::SlimConstant(*ball, x, y, z, horo::SlimCondition::kOne), 0);
  // The worst side through the corner (4, 4) is 4 from both axes.
  const BallPtr big = Ball::Build(z2, z2.identity(), 8);
  EXPECT_EQ(horo::WorstSlimConstant(*big, IndexXY(*big, 0, 0), IndexXY(*big, 4, 0), IndexXY(*big, 0, 4)), 4);
  EXPECT_EQ(horo::SlimConstant(*ball, x, x, z, horo::SlimCondition::kOne), 0);
  EXPECT_EQ(horo::SlimConstant(*ball, x, x, x, horo::SlimCondition::kTwo), 0);
}

TEST(SlimTest, TreeTrianglesAreTripods) {
  const GroupSpec f2 = fx::F2();
  const BallPtr ball = Ball::Build(f2, f2.identity(), 4);
  const std::vector<int> inner = InnerVertices(*ball, 2);
  for (int x : inner) {
    for (int y : inner) {
      for (int z : inner) {
        ASSERT_EQ(horo::SlimConstant(*ball, x, y, z, horo::SlimCondition::kOne), 0);
        ASSERT_EQ(horo::SlimConstant(*ball, x, y, z, horo::SlimCondition::kTwo), 0);
        if (ball->distance(y, z) % 2 == 0) {
          EXPECT_LE(horo::ConvexityDefectOf(*ball, x, y, z, 1, 2).defect, 0);
        }
      }
    }
  }
}

TEST(SlimTest, ConditionTwoDominatesConditionOne) {
  for (const GroupSpec& group : {fx::Z2(), fx::Z2StarZ()}) {
    const BallPtr ball = Ball::Build(group, group.identity(), 4);
    const std::vector<int> inner = InnerVertices(*ball, 2);
    for (int x : inner) {
      for (int y : inner) {
        for (int z : inner) {
          const std::int64_t one = horo::SlimConstant(*ball, x, y, z, horo::SlimCondition::kOne);
          const std::int64_t two = horo::SlimConstant(*ball, x, y, z, horo::SlimCondition::kTwo);
          ASSERT_GE(two, one);
          const horo::ConvexityDefect d = horo::ConvexityDefectOf(*ball, x, y, z, 1, 2);
          EXPECT_TRUE(d.within_bound);
          EXPECT_LE(d.defect, d.bound);
        }
      }
    }
  }
}

TEST(SlimTest, RectangleAndDefectEndpoints) {
  const GroupSpec z2 = fx::Z2();
  const BallPtr ball = Ball::Build(z2, z2.identity(), 6);
  const int x = IndexXY(*ball, 0, 0), y = IndexXY(*ball, 4, 0), z = IndexXY(*ball, 0, 4);
  EXPECT_EQ(horo::ConvexityDefectOf(*ball, x, y, z, 0, 2).defect, 0);
  EXPECT_EQ(horo::ConvexityDefectOf(*ball, x, y, z, 2, 2).defect, 0);
  const horo::ConvexityDefect half = horo::ConvexityDefectOf(*ball, x, y, z, 1, 2);
  EXPECT_TRUE(half.within_bound);

  const GroupSpec f2 = fx::F2();
  const BallPtr fb = Ball::Build(f2, f2.identity(), 4);
  const auto idx = [&](const char* nf) { return fb->index_of(f2.parse_element(nf)); };
  EXPECT_EQ(horo::RectangleThinness(*fb, idx("a"), idx("b"), idx("a'"), idx("b'")), 0);
  EXPECT_GE(horo::RectangleThinness(*ball, x, IndexXY(*ball, 2, 0), IndexXY(*ball, 2, 2), IndexXY(*ball, 0, 2)), 0);
}

// Largest ceil-excess of h over every monotone lattice path whose box fits the l1 ball.
std::int64_t LatticeKHat(int radius, const std::function<std::int64_t(Point)>& h) {
  std::int64_t best = 0;
  std::vector<Point> pts;
  for (int x = -radius; x <= radius; ++x) {
    for (int y = -radius; y <= radius; ++y) {
      if (std::abs(x) + std::abs(y) <= radius) pts.push_back({x, y});
    }
  }
  const auto inside = [&](std::int64_t x, std::int64_t y) { return std::llabs(x) + std::llabs(y) <= radius; };
  for (const Point& p : pts) {
    for (const Point& q : pts) {
      if (!inside(p.first, q.second) || !inside(q.first, p.second)) continue;
      const std::int64_t n = L1(p, q);
      if (n < 2) continue;
      const std::int64_t x0 = std::min(p.first, q.first), x1 = std::max(p.first, q.first);
      const std::int64_t y0 = std::min(p.second, q.second), y1 = std::max(p.second, q.second);
      for (std::int64_t x = x0; x <= x1; ++x) {
        for (std::int64_t y = y0; y <= y1; ++y) {
          const std::int64_t i = L1(p, {x, y});
          const std::int64_t num = n * h({x, y}) - ((n - i) * h(p) + i * h(q));
          if (num > 0) best = std::max(best, (num + n - 1) / n);
        }
      }
    }
  }
  return best;
}

ScalarField Synthetic(const BallPtr& ball, const std::function<std::int64_t(Point)>& f) {
  std::vector<std::int64_t> values;
  for (int v = 0; v < ball->size(); ++v) values.push_back(f(oracle::XY(ball->group(), ball->element(v))));
  return ScalarField(ball, values, horo::Provenance::kSynthetic);
}

TEST(KConvexityTest, TreeBusemannIsConvex) {
  const GroupSpec f2 = fx::F2();
  const BallPtr ball = Ball::Build(f2, f2.identity(), 5);
  const ScalarField h = horo::Busemann(ball, fx::Ray(f2, "", "a", 5));
  EXPECT_EQ(horo::KConvexityOverBall(h).k_hat, 0);
  const std::vector<std::int64_t> zero(static_cast<std::size_t>(ball->size()), 0);
  EXPECT_EQ(horo::KConvexityOverBall(ScalarField(ball, zero, horo::Provenance::kSynthetic)).k_hat, 0);
}

TEST(KConvexityTest, PlaneFieldsMatchLatticeOracle) {
  const GroupSpec z2 = fx::Z2();
  const std::vector<std::function<std::int64_t(Point)>> fields{
      [](Point p) { return -(p.first + p.second); },
      [](Point p) { return -p.first + std::llabs(p.second); },
  };
  for (int radius : {3, 4, 5}) {
    const BallPtr ball = Ball::Build(z2, z2.identity(), radius);
    for (const auto& f : fields) {
      const horo::KConvexity k = horo::KConvexityOverBall(Synthetic(ball, f));
      EXPECT_EQ(k.k_hat, LatticeKHat(radius, f)) << "radius " << radius;
      EXPECT_FALSE(k.segment.empty());
    }
  }
  // -(x+y) is affine along monotone paths of one orientation only: L^p U^q
  // climbs then falls, with excess 2pq/(p+q).
  const BallPtr five = Ball::Build(z2, z2.identity(), 5);
  EXPECT_EQ(horo::KConvexityOverBall(Synthetic(five, fields[0])).k_hat, 5);
}

TEST(KConvexityTest, ExplicitFamily) {
  const GroupSpec z2 = fx::Z2();
  const BallPtr ball = Ball::Build(z2, z2.identity(), 5);
  const ScalarField h = Synthetic(ball, [](Point p) { return -(p.first + p.second); });
  const horo::GeodesicSegment ne = Walk(*ball, Line({0, 0}, {2, 2}));
  EXPECT_EQ(horo::KConvexityOf(h, {ne}).k_hat, 0);
  const horo::GeodesicSegment bend = Walk(*ball, {{0, 0}, {-1, 0}, {-2, 0}, {-2, 1}, {-2, 2}});
  const horo::KConvexity k = horo::KConvexityOf(h, {ne, bend});
  EXPECT_EQ(k.k_hat, 2);
  EXPECT_EQ(k.segment, bend.vertices);
  EXPECT_EQ(k.position, 2);
  EXPECT_THROW(horo::KConvexityOf(h, {}), horo::Error);
}

std::vector<Element> AxisPath(const GroupSpec& group, horo::Letter s, int from, int to) {
  std::vector<Element> out;
  for (int i = from; i <= to; ++i) out.push_back(Power(group, s, i));
  return out;
}

TEST(ContractionTest, PlaneAxisIsNotContracting) {
  const GroupSpec z2 = fx::Z2();
  const std::vector<Element> axis = AxisPath(z2, 0, -12, 12);
  std::vector<horo::SampleBall> samples;
  for (int m = 1; m <= 5; ++m) samples.push_back({At(z2, 3, m), m - 1});
  const horo::ContractionProfile p = horo::ContractionProfileOf(z2, axis, samples);
  ASSERT_EQ(p.samples.size(), 5u);
  for (int m = 1; m <= 5; ++m) {
    EXPECT_EQ(p.samples[static_cast<std::size_t>(m - 1)].diameter, 2 * (m - 1));
    EXPECT_EQ(p.samples[static_cast<std::size_t>(m - 1)].distance_to_path, m);
  }
  EXPECT_TRUE(p.strictly_growing);
  EXPECT_TRUE(p.growing);
  EXPECT_EQ(p.d_hat, 8);
  EXPECT_THROW(horo::ContractionProfileOf(z2, axis, {{At(z2, 0, 1), 1}}), horo::Error);
}

TEST(ContractionTest, TreeAxisContracts) {
  const GroupSpec f2 = fx::F2();
  const std::vector<Element> axis = AxisPath(f2, 0, -6, 6);
  const horo::ContractionProfile p = horo::WorstCaseContraction(f2, axis, {1, 2, 3});
  EXPECT_EQ(p.d_hat, 0);
  EXPECT_FALSE(p.growing);
  for (const auto& s : p.samples) EXPECT_GT(s.distance_to_path, s.radius);
}

TEST(ContractionTest, IncreasingPowersRayIsNotContracting) {
  const GroupSpec g = fx::Z2StarZ();
  const horo::RayWalk ray = fx::IncreasingPowersRay(g, 27);
  std::vector<Element> path;
  for (int t = 0; t <= 27; ++t) path.push_back(ray.at(t));
  const horo::ContractionProfile p = horo::WorstCaseContraction(g, path, {1, 2, 3});
  ASSERT_EQ(p.max_by_radius.size(), 3u);
  EXPECT_EQ(p.max_by_radius[0].second, 2);
  EXPECT_EQ(p.max_by_radius[1].second, 4);
  EXPECT_EQ(p.max_by_radius[2].second, 6);
  EXPECT_TRUE(p.strictly_growing);
}

TEST(QuasiGeodesicTest, DetourQualifiesIffHeightAtMostBase) {
  const GroupSpec z2 = fx::Z2();
  for (int d : {4, 6}) {
    for (int k = 0; k <= d + 2; ++k) {
      std::vector<Element> path;
      for (const Point& p : Line({0, 0}, {0, k})) path.push_back(At(z2, p.first, p.second));
      for (const Point& p : Line({1, k}, {d, k})) path.push_back(At(z2, p.first, p.second));
      for (const Point& p : Line({d, k - 1}, {d, 0})) {
        if (k > 0) path.push_back(At(z2, p.first, p.second));
      }
      EXPECT_EQ(horo::IsQuasiGeodesic(z2, path, {3, 1}, 0), k <= d) << "d=" << d << " k=" << k;
    }
  }
}

TEST(ExcursionTest, PlaneAxisGrowsWithBudget) {
  const GroupSpec z2 = fx::Z2();
  const BallPtr ball = Ball::Build(z2, z2.identity(), 6);
  const std::vector<Element> axis = AxisPath(z2, 0, -3, 3);
  horo::ExcursionOptions options;
  options.dfs = false;
  std::int64_t previous = -1;
  for (int budget = 1; budget <= 6; ++budget) {
    options.budget = budget;
    const horo::GaugeEstimate g = horo::QuasigeodesicExcursion(*ball, axis, {3, 1}, 0, options);
    EXPECT_EQ(g.n_hat, budget);
    EXPECT_GE(g.n_hat, previous);
    previous = g.n_hat;
    EXPECT_EQ(g.witness.family, "detour");
    EXPECT_TRUE(horo::IsQuasiGeodesic(z2, g.witness.path, {3, 1}, 0));
  }
}

TEST(ExcursionTest, DfsFindsDetoursAndIsMonotone) {
  const GroupSpec z2 = fx::Z2();
  const BallPtr ball = Ball::Build(z2, z2.identity(), 4);
  const std::vector<Element> axis = AxisPath(z2, 0, -2, 2);
  horo::ExcursionOptions options;
  options.detours = false;
  std::int64_t previous = -1;
  for (int budget = 1; budget <= 3; ++budget) {
    options.budget = budget;
    const horo::GaugeEstimate g = horo::QuasigeodesicExcursion(*ball, axis, {3, 1}, 0, options);
    EXPECT_GE(g.n_hat, budget);
    EXPECT_GE(g.n_hat, previous);
    previous = g.n_hat;
  }
}

TEST(ExcursionTest, TreeHasNoExcursion) {
  const GroupSpec f2 = fx::F2();
  const BallPtr ball = Ball::Build(f2, f2.identity(), 4);
  const std::vector<Element> axis = AxisPath(f2, 0, -3, 3);
  horo::ExcursionOptions options;
  options.budget = 4;
  const horo::GaugeEstimate g = horo::QuasigeodesicExcursion(*ball, axis, {3, 1}, 0, options);
  EXPECT_EQ(g.n_hat, 0);
  EXPECT_FALSE(g.partial);

  const horo::GaugeEstimate point =
      horo::QuasigeodesicExcursion(*ball, {f2.identity()}, {3, 1}, 0, options);
  EXPECT_EQ(point.n_hat, 0);
  EXPECT_THROW(horo::QuasigeodesicExcursion(*ball, axis, {1, 2}, 0, options), horo::Error);
}

}  // namespace
