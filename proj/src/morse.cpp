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

#include "horo/morse.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <sstream>
#include <unordered_set>

#include "horo/error.hpp"

namespace horo {
namespace {

constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max();

std::int64_t MinDistance(const Ball& ball, int u, const std::vector<int>& set) {
  std::int64_t best = kInf;
  for (int v : set) best = std::min(best, ball.distance(u, v));
  return best;
}

// max over u in `from` of d(u, `to`).
std::int64_t DirectedGap(const Ball& ball, const std::vector<int>& from, const std::vector<int>& to) {
  std::int64_t worst = 0;
  for (int u : from) worst = std::max(worst, MinDistance(ball, u, to));
  return worst;
}

std::vector<int> Slice(const std::vector<int>& v, std::int64_t begin, std::int64_t end) {
  return {v.begin() + begin, v.begin() + end + 1};
}

void CheckSides(const Ball& ball, const TriangleSides& sides) {
  for (const GeodesicSegment* side : {&sides.xy, &sides.xz, &sides.yz}) {
    if (!IsGeodesic(ball, side->vertices)) throw PreconditionError("triangle side is not a geodesic");
  }
}

}  // namespace

std::int64_t SlimConstant(const Ball& ball, const TriangleSides& sides, SlimCondition condition) {
  CheckSides(ball, sides);
  const std::vector<int>& xy = sides.xy.vertices;
  const std::vector<int>& xz = sides.xz.vertices;
  const std::vector<int>& yz = sides.yz.vertices;
  if (condition == SlimCondition::kOne) {
    const auto without = [](const std::vector<int>& p, const std::vector<int>& q) {
      std::vector<int> u = p;
      u.insert(u.end(), q.begin(), q.end());
      return u;
    };
    return std::max({DirectedGap(ball, xy, without(xz, yz)), DirectedGap(ball, xz, without(xy, yz)),
                     DirectedGap(ball, yz, without(xy, xz))});
  }
  const Tripod t = TripodNumbers(sides.xy.length(), sides.xz.length(), sides.yz.length());
  // Legs from each corner to its two internal points.
  const std::vector<std::pair<std::vector<int>, std::vector<int>>> legs = {
      {Slice(xy, 0, t.a), Slice(xz, 0, t.a)},
      {Slice(xy, t.a, sides.xy.length()), Slice(yz, 0, t.b)},
      {Slice(xz, t.a, sides.xz.length()), Slice(yz, t.b, sides.yz.length())},
  };
  std::int64_t delta = 0;
  for (const auto& [first, second] : legs) {
    delta = std::max({delta, DirectedGap(ball, first, second), DirectedGap(ball, second, first)});
  }
  return delta;
}

std::int64_t SlimConstant(const Ball& ball, int x, int y, int z, SlimCondition condition) {
  return SlimConstant(ball, DefaultSides(ball, x, y, z), condition);
}

std::int64_t WorstSlimConstant(const Ball& ball, int x, int y, int z, std::size_t cap) {
  const GeodesicSet xy = AllGeodesics(ball, x, y, cap);
  const GeodesicSet xz = AllGeodesics(ball, x, z, cap);
  const GeodesicSet yz = AllGeodesics(ball, y, z, cap);
  std::int64_t worst = 0;
  for (const auto& a : xy.paths) {
    for (const auto& b : xz.paths) {
      for (const auto& c : yz.paths) {
        worst = std::max(worst, SlimConstant(ball, {a, b, c}, SlimCondition::kOne));
      }
    }
  }
  return worst;
}

std::int64_t RectangleThinness(const Ball& ball, int p, int q, int r, int s) {
  return std::max(SlimConstant(ball, p, q, r, SlimCondition::kOne),
                  SlimConstant(ball, p, r, s, SlimCondition::kOne));
}

ConvexityDefect ConvexityDefectOf(const Ball& ball, const TriangleSides& sides, std::int64_t num,
                                  std::int64_t den) {
  if (den <= 0 || num < 0 || num > den) throw PreconditionError("t must lie in [0, 1]");
  CheckSides(ball, sides);
  const int x = sides.xy.vertices.front();
  const std::int64_t dxy = sides.xy.length();
  const std::int64_t dxz = sides.xz.length();
  const std::int64_t dyz = sides.yz.length();
  const std::int64_t pos = num * dyz;
  const std::int64_t u = pos / den;
  const std::int64_t theta = pos % den;
  const auto& yz = sides.yz.vertices;
  std::int64_t scaled;
  ConvexityDefect out;
  if (theta == 0) {
    scaled = den * ball.distance(x, yz[static_cast<std::size_t>(u)]);
  } else {
    // Interior edge point: reach it through the nearer endpoint.
    out.interior_point = true;
    scaled = std::min(den * ball.distance(x, yz[static_cast<std::size_t>(u)]) + theta,
                      den * ball.distance(x, yz[static_cast<std::size_t>(u + 1)]) + den - theta);
  }
  out.defect = scaled - ((den - num) * dxy + num * dxz);
  out.bound = 2 * SlimConstant(ball, sides, SlimCondition::kTwo) * den;
  out.within_bound = out.defect <= out.bound;
  return out;
}

ConvexityDefect ConvexityDefectOf(const Ball& ball, int x, int y, int z, std::int64_t num,
                                  std::int64_t den) {
  return ConvexityDefectOf(ball, DefaultSides(ball, x, y, z), num, den);
}

namespace {

// ceil(excess / n) at the worst position of one segment.
std::pair<std::int64_t, int> SegmentExcess(const ScalarField& h, const std::vector<int>& seg) {
  const auto n = static_cast<std::int64_t>(seg.size()) - 1;
  std::pair<std::int64_t, int> best{0, 0};
  if (n <= 0) return best;
  const std::int64_t h0 = h[seg.front()];
  const std::int64_t h1 = h[seg.back()];
  for (std::int64_t i = 0; i <= n; ++i) {
    const std::int64_t excess = n * h[seg[static_cast<std::size_t>(i)]] - (n - i) * h0 - i * h1;
    const std::int64_t k = excess >= 0 ? (excess + n - 1) / n : -((-excess) / n);
    if (k > best.first) best = {k, static_cast<int>(i)};
  }
  return best;
}

}  // namespace

KConvexity KConvexityOf(const ScalarField& h, const std::vector<GeodesicSegment>& family) {
  if (family.empty()) throw PreconditionError("empty geodesic family");
  KConvexity out;
  for (const GeodesicSegment& seg : family) {
    for (int v : seg.vertices) {
      if (!h.defined(v)) throw PreconditionError("segment leaves the field's domain");
    }
    const auto [k, pos] = SegmentExcess(h, seg.vertices);
    if (k > out.k_hat || out.segment.empty()) {
      out.k_hat = std::max<std::int64_t>(k, 0);
      out.segment = seg.vertices;
      out.position = pos;
    }
    ++out.segments;
  }
  return out;
}

KConvexity KConvexityOverBall(const ScalarField& h, std::size_t per_pair_cap, Exec exec) {
  const Ball& ball = h.ball();
  const int n = ball.size();
  std::vector<KConvexity> per(static_cast<std::size_t>(n));
  const auto run = [&](int x) {
    KConvexity& local = per[static_cast<std::size_t>(x)];
    if (!h.defined(x)) return;
    for (int y = x + 1; y < n; ++y) {
      if (!h.defined(y)) continue;
      GeodesicSet set;
      try {
        set = AllGeodesics(ball, x, y, per_pair_cap);
      } catch (const Error&) {
        continue;
      }
      for (const GeodesicSegment& seg : set.paths) {
        const auto [k, pos] = SegmentExcess(h, seg.vertices);
        if (k > local.k_hat || local.segment.empty()) {
          local.k_hat = std::max<std::int64_t>(k, 0);
          local.segment = seg.vertices;
          local.position = pos;
        }
        ++local.segments;
      }
    }
  };
  if (exec == Exec::kParallel) {
#pragma omp parallel for schedule(dynamic, 4)
    for (int x = 0; x < n; ++x) run(x);
  } else {
    for (int x = 0; x < n; ++x) run(x);
  }
  KConvexity out;
  for (KConvexity& local : per) {
    out.segments += local.segments;
    if (local.segment.empty()) continue;
    if (out.segment.empty() || local.k_hat > out.k_hat) {
      out.k_hat = local.k_hat;
      out.segment = std::move(local.segment);
      out.position = local.position;
    }
  }
  if (out.segments == 0) throw PreconditionError("no geodesic fits in the ball");
  return out;
}

namespace {

std::vector<Element> GroupBall(const GroupSpec& group, const Element& center, int radius) {
  std::vector<Element> out{center};
  std::unordered_set<Element, ElementHash> seen{center};
  std::size_t begin = 0;
  for (int layer = 0; layer < radius; ++layer) {
    const std::size_t end = out.size();
    for (std::size_t i = begin; i < end; ++i) {
      for (Letter s = 0; s < group.num_letters(); ++s) {
        Element w = group.multiply_letter(out[i], s);
        if (seen.insert(w).second) out.push_back(std::move(w));
      }
    }
    begin = end;
  }
  return out;
}

std::int64_t DistanceToPath(const GroupSpec& group, const Element& e, const std::vector<Element>& path) {
  std::int64_t best = kInf;
  for (const Element& p : path) best = std::min(best, group.distance(e, p));
  return best;
}

ContractionSample MeasureSample(const GroupSpec& group, const std::vector<Element>& path,
                                const SampleBall& sample) {
  ContractionSample out{sample.center, sample.radius, DistanceToPath(group, sample.center, path), 0};
  if (out.distance_to_path <= sample.radius) return out;
  std::size_t lo = path.size();
  std::size_t hi = 0;
  for (const Element& e : GroupBall(group, sample.center, sample.radius)) {
    std::int64_t best = kInf;
    for (std::size_t k = 0; k < path.size(); ++k) {
      const std::int64_t d = group.distance(e, path[k]);
      if (d < best) best = d;
    }
    for (std::size_t k = 0; k < path.size(); ++k) {
      if (group.distance(e, path[k]) == best) {
        lo = std::min(lo, k);
        hi = std::max(hi, k);
      }
    }
  }
  out.diameter = static_cast<std::int64_t>(hi - lo);
  return out;
}

void Summarize(ContractionProfile& profile) {
  std::vector<std::pair<int, std::int64_t>> by_radius;
  for (const ContractionSample& s : profile.samples) {
    auto it = std::find_if(by_radius.begin(), by_radius.end(),
                           [&](const auto& p) { return p.first == s.radius; });
    if (it == by_radius.end()) {
      by_radius.emplace_back(s.radius, s.diameter);
    } else {
      it->second = std::max(it->second, s.diameter);
    }
    profile.d_hat = std::max(profile.d_hat, s.diameter);
  }
  std::sort(by_radius.begin(), by_radius.end());
  profile.max_by_radius = by_radius;
  const auto n = static_cast<std::int64_t>(by_radius.size());
  std::int64_t sr = 0, sd = 0, srd = 0;
  for (const auto& [r, d] : by_radius) {
    sr += r;
    sd += d;
    srd += r * d;
  }
  profile.growing = n >= 2 && n * srd - sr * sd > 0;
  profile.strictly_growing = n >= 2;
  for (std::size_t i = 1; i < by_radius.size(); ++i) {
    if (by_radius[i].second <= by_radius[i - 1].second) profile.strictly_growing = false;
  }
}

void CheckPathGeodesic(const GroupSpec& group, const std::vector<Element>& path) {
  if (path.empty()) throw PreconditionError("empty geodesic");
  for (std::size_t i = 0; i < path.size(); ++i) {
    if (group.distance(path.front(), path[i]) != static_cast<std::int64_t>(i)) {
      throw PreconditionError("path is not a geodesic at position " + std::to_string(i));
    }
  }
}

}  // namespace

ContractionProfile ContractionProfileOf(const GroupSpec& group, const std::vector<Element>& path,
                                        const std::vector<SampleBall>& samples, Exec exec) {
  CheckPathGeodesic(group, path);
  std::vector<ContractionSample> measured(samples.size());
  const auto count = static_cast<std::int64_t>(samples.size());
  if (exec == Exec::kParallel) {
#pragma omp parallel for schedule(dynamic, 1)
    for (std::int64_t i = 0; i < count; ++i) measured[i] = MeasureSample(group, path, samples[i]);
  } else {
    for (std::int64_t i = 0; i < count; ++i) measured[i] = MeasureSample(group, path, samples[i]);
  }
  ContractionProfile profile;
  profile.geodesic = path;
  for (ContractionSample& s : measured) {
    if (s.distance_to_path > s.radius) profile.samples.push_back(std::move(s));
  }
  if (profile.samples.empty()) throw PreconditionError("no sample ball is disjoint from the geodesic");
  Summarize(profile);
  return profile;
}

std::vector<SampleBall> CandidateSampleBalls(const GroupSpec& group, const std::vector<Element>& path,
                                             const std::vector<int>& radii) {
  std::vector<SampleBall> out;
  for (int r : radii) {
    if (r < 0) throw ConfigError("sample radius must be nonnegative");
    for (const Element& p : path) {
      for (Letter s = 0; s < group.num_letters(); ++s) {
        Element c = p;
        for (int i = 0; i <= r; ++i) c = group.multiply_letter(c, s);
        if (DistanceToPath(group, c, path) > r) out.push_back({std::move(c), r});
      }
    }
  }
  return out;
}

ContractionProfile WorstCaseContraction(const GroupSpec& group, const std::vector<Element>& path,
                                        const std::vector<int>& radii, Exec exec) {
  ContractionProfile all =
      ContractionProfileOf(group, path, CandidateSampleBalls(group, path, radii), exec);
  ContractionProfile worst;
  worst.geodesic = all.geodesic;
  for (const ContractionSample& s : all.samples) {
    auto it = std::find_if(worst.samples.begin(), worst.samples.end(),
                           [&](const auto& w) { return w.radius == s.radius; });
    if (it == worst.samples.end()) {
      worst.samples.push_back(s);
    } else if (s.diameter > it->diameter) {
      *it = s;
    }
  }
  std::sort(worst.samples.begin(), worst.samples.end(),
            [](const auto& a, const auto& b) { return a.radius < b.radius; });
  Summarize(worst);
  return worst;
}

bool IsQuasiGeodesic(const GroupSpec& group, const std::vector<Element>& path, Rational lambda,
                     std::int64_t epsilon) {
  for (std::size_t t = 0; t < path.size(); ++t) {
    for (std::size_t s = 0; s < t; ++s) {
      const auto gap = static_cast<std::int64_t>(t - s);
      if (lambda.num * group.distance(path[s], path[t]) < lambda.den * gap - lambda.num * epsilon) {
        return false;
      }
    }
  }
  return true;
}

namespace {

struct PairResult {
  std::int64_t excursion = -1;
  std::vector<int> path;
  std::int64_t paths = 0;
  bool capped = false;
};

// Depth-first search over in-ball lattice paths from `from` to `to` that stay
// (lambda, eps)-quasi-geodesic at every extension.
PairResult SearchPair(const Ball& ball, int from, int to, std::int64_t max_len, Rational lambda,
                      std::int64_t epsilon, const std::vector<std::int64_t>& to_gamma,
                      std::size_t node_cap) {
  PairResult result;
  std::vector<int> path{from};
  std::vector<Letter> cursor{0};
  std::vector<std::int64_t> running{to_gamma[from]};
  std::size_t nodes = 1;
  if (from == to) {
    result.excursion = to_gamma[from];
    result.path = path;
    result.paths = 1;
  }
  while (!path.empty()) {
    Letter& s = cursor.back();
    if (s >= ball.num_letters() || static_cast<std::int64_t>(path.size()) - 1 >= max_len) {
      path.pop_back();
      cursor.pop_back();
      running.pop_back();
      continue;
    }
    const int v = ball.neighbor(path.back(), s++);
    if (v < 0) continue;
    const auto t = static_cast<std::int64_t>(path.size());
    if (ball.distance(v, to) > max_len - t) continue;
    bool ok = true;
    for (std::int64_t i = 0; i < t && ok; ++i) {
      ok = lambda.num * ball.distance(path[static_cast<std::size_t>(i)], v) >=
           lambda.den * (t - i) - lambda.num * epsilon;
    }
    if (!ok) continue;
    if (++nodes > node_cap) {
      result.capped = true;
      break;
    }
    path.push_back(v);
    cursor.push_back(0);
    running.push_back(std::max(running.back(), to_gamma[v]));
    if (v == to) {
      ++result.paths;
      if (running.back() > result.excursion) {
        result.excursion = running.back();
        result.path = path;
      }
    }
  }
  return result;
}

std::optional<Letter> StepLetter(const GroupSpec& group, const Element& a, const Element& b) {
  for (Letter s = 0; s < group.num_letters(); ++s) {
    if (group.multiply_letter(a, s) == b) return s;
  }
  return std::nullopt;
}

}  // namespace

GaugeEstimate QuasigeodesicExcursion(const Ball& ball, const std::vector<Element>& gamma,
                                     Rational lambda, std::int64_t epsilon,
                                     const ExcursionOptions& options) {
  const GroupSpec& group = ball.group();
  if (lambda.den <= 0 || lambda.num < lambda.den) throw ConfigError("lambda must be a rational >= 1");
  if (epsilon < 0) throw ConfigError("epsilon must be nonnegative");
  if (options.budget < 0) throw ConfigError("budget must be nonnegative");
  CheckPathGeodesic(group, gamma);

  GaugeEstimate out;
  out.lambda = lambda;
  out.epsilon = epsilon;
  out.budget = options.budget;
  out.witness.excursion = -1;
  const auto n = static_cast<int>(gamma.size());
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n && j - i <= options.budget; ++j) pairs.emplace_back(i, j);
  }
  const auto max_len = [&](int i, int j) {
    return lambda.num * (static_cast<std::int64_t>(j - i) + epsilon) / lambda.den;
  };

  if (options.dfs) {
    const int size = ball.size();
    std::vector<std::int64_t> to_gamma(static_cast<std::size_t>(size));
    if (options.exec == Exec::kParallel) {
#pragma omp parallel for schedule(static)
      for (int v = 0; v < size; ++v) to_gamma[v] = DistanceToPath(group, ball.element(v), gamma);
    } else {
      for (int v = 0; v < size; ++v) to_gamma[v] = DistanceToPath(group, ball.element(v), gamma);
    }
    std::vector<int> index(gamma.size(), -1);
    for (int i = 0; i < n; ++i) {
      if (auto v = ball.find(gamma[static_cast<std::size_t>(i)])) index[i] = *v;
    }
    std::vector<PairResult> results(pairs.size());
    const auto run = [&](std::int64_t k) {
      const auto [i, j] = pairs[static_cast<std::size_t>(k)];
      if (index[i] < 0 || index[j] < 0) return;
      results[k] = SearchPair(ball, index[i], index[j], max_len(i, j), lambda, epsilon, to_gamma,
                              options.per_pair_node_cap);
    };
    const auto count = static_cast<std::int64_t>(pairs.size());
    if (options.exec == Exec::kParallel) {
#pragma omp parallel for schedule(dynamic, 1)
      for (std::int64_t k = 0; k < count; ++k) run(k);
    } else {
      for (std::int64_t k = 0; k < count; ++k) run(k);
    }
    for (PairResult& r : results) {
      out.paths_examined += r.paths;
      out.partial = out.partial || r.capped;
      if (r.excursion > out.witness.excursion) {
        out.witness = {ball.elements(r.path), r.excursion, "dfs"};
      }
    }
  }

  if (options.detours) {
    std::vector<Letter> flat;
    for (Letter s = 0; s < group.num_letters(); ++s) {
      if (group.factor_kind(s) == FactorKind::kFreeAbelian) flat.push_back(s);
    }
    std::vector<Letter> steps;
    for (int i = 0; i + 1 < n; ++i) {
      const auto s = StepLetter(group, gamma[static_cast<std::size_t>(i)], gamma[static_cast<std::size_t>(i) + 1]);
      if (!s) throw PreconditionError("consecutive geodesic points are not adjacent");
      steps.push_back(*s);
    }
    for (const auto& [i, j] : pairs) {
      const std::int64_t limit = max_len(i, j);
      for (Letter s : flat) {
        for (std::int64_t k = 1; 2 * k + (j - i) <= limit; ++k) {
          std::vector<Element> path{gamma[static_cast<std::size_t>(i)]};
          for (std::int64_t r = 0; r < k; ++r) path.push_back(group.multiply_letter(path.back(), s));
          for (int m = i; m < j; ++m) path.push_back(group.multiply_letter(path.back(), steps[m]));
          for (std::int64_t r = 0; r < k; ++r) {
            path.push_back(group.multiply_letter(path.back(), InverseLetter(s)));
          }
          if (!(path.back() == gamma[static_cast<std::size_t>(j)])) continue;
          ++out.paths_examined;
          if (!IsQuasiGeodesic(group, path, lambda, epsilon)) continue;
          std::int64_t excursion = 0;
          for (const Element& e : path) excursion = std::max(excursion, DistanceToPath(group, e, gamma));
          if (excursion > out.witness.excursion) out.witness = {path, excursion, "detour"};
        }
      }
    }
  }

  out.n_hat = std::max<std::int64_t>(out.witness.excursion, 0);
  std::ostringstream scope;
  scope << "endpoint pairs on the geodesic with d <= " << options.budget << "; ";
  if (options.dfs) scope << "exhaustive in-ball DFS (node cap " << options.per_pair_node_cap << " per pair)";
  if (options.dfs && options.detours) scope << " + ";
  if (options.detours) scope << "flat detours s^k w s^-k";
  out.scope = scope.str();
  return out;
}

}  // namespace horo
