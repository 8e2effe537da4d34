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

#include "horo/fields.hpp"

#include <algorithm>
#include <deque>
#include <random>
#include <sstream>

#include "horo/error.hpp"

namespace horo {

const char* ProvenanceName(Provenance p) {
  switch (p) {
    case Provenance::kBusemann: return "busemann-of-ray";
    case Provenance::kFile: return "file";
    case Provenance::kSynthetic: return "synthetic";
  }
  return "unknown";
}

ScalarField::ScalarField(BallPtr ball, std::vector<std::int64_t> values, Provenance provenance)
    : ball_(std::move(ball)), values_(std::move(values)), provenance_(provenance) {
  if (!ball_) throw PreconditionError("field without a ball");
  if (values_.size() != static_cast<std::size_t>(ball_->size())) {
    throw PreconditionError("field has " + std::to_string(values_.size()) +
                            " values for a ball of " + std::to_string(ball_->size()) +
                            " vertices");
  }
}

namespace {

struct Stabilized {
  std::int64_t value = 0;
  int t = -1;  // -1: did not stabilize
};

// d(v, c(t)) - t is nonincreasing in t and bounded below by -d(v, c(0));
// the limit is accepted once it is constant over [t, t + window].
Stabilized StabilizeVertex(const GroupSpec& group, const Element& v,
                           const std::vector<Element>& points, int window) {
  const int t_max = static_cast<int>(points.size()) - 1;
  std::vector<std::int64_t> vals;
  vals.reserve(points.size());
  const std::int64_t floor = -group.distance(v, points[0]);
  for (int t = 0; t <= t_max; ++t) {
    const std::int64_t value = group.distance(v, points[static_cast<std::size_t>(t)]) - t;
    if (value < floor || (!vals.empty() && value > vals.back())) {
      throw InvariantError("Busemann sequence not monotone at " + group.format(v));
    }
    vals.push_back(value);
    const int start = t - window;
    if (start >= 0 && vals[static_cast<std::size_t>(start)] == value) {
      return {value, start};
    }
  }
  return {};
}

}  // namespace

ScalarField Busemann(BallPtr ball, const RayWalk& ray, const BusemannOptions& options) {
  const GroupSpec& group = ball->group();
  if (group.tag() != ray.group().tag()) throw PreconditionError("ray and ball use different groups");
  const int radius = ball->radius();
  const int window =
      options.window > 0 ? options.window : 2 * radius + static_cast<int>(ray.period().size());
  int t_max = options.t_max > 0 ? options.t_max : 10 * radius + window;
  if (!ray.periodic()) t_max = std::min(t_max, ray.horizon());

  std::vector<Element> points;
  points.reserve(static_cast<std::size_t>(t_max) + 1);
  for (int t = 0; t <= t_max; ++t) {
    points.push_back(t <= ray.horizon() ? ray.cached(t)
                                        : group.multiply_letter(points.back(), ray.letter(t - 1)));
    if (group.length(points.back()) != t) {
      throw PreconditionError("ray is not geodesic at t = " + std::to_string(t));
    }
  }

  const int n = ball->size();
  std::vector<Stabilized> out(static_cast<std::size_t>(n));
  if (options.exec == Exec::kParallel) {
#pragma omp parallel for schedule(dynamic, 16)
    for (int v = 0; v < n; ++v) out[v] = StabilizeVertex(group, ball->element(v), points, window);
  } else {
    for (int v = 0; v < n; ++v) out[v] = StabilizeVertex(group, ball->element(v), points, window);
  }

  std::vector<std::int64_t> values(static_cast<std::size_t>(n));
  std::vector<int> t_stab(static_cast<std::size_t>(n));
  std::vector<int> failed;
  for (int v = 0; v < n; ++v) {
    if (out[v].t < 0) failed.push_back(v);
    values[v] = out[v].value;
    t_stab[v] = out[v].t;
  }
  if (!failed.empty()) {
    std::ostringstream msg;
    msg << "Busemann values did not stabilize within t <= " << t_max << " (window " << window
        << ") at " << failed.size() << " vertices:";
    for (std::size_t i = 0; i < failed.size() && i < 8; ++i) {
      msg << ' ' << group.format(ball->element(failed[i]));
    }
    throw CapError(msg.str());
  }
  ScalarField h(std::move(ball), std::move(values), Provenance::kBusemann);
  h.set_stabilization_times(std::move(t_stab));
  return h;
}

LipschitzReport CheckLipschitz(const ScalarField& h) {
  LipschitzReport report;
  const Ball& ball = h.ball();
  for (int u = 0; u < ball.size(); ++u) {
    if (!h.defined(u)) continue;
    for (Letter s = 0; s < ball.num_letters(); s += 2) {
      const int w = ball.neighbor(u, s);
      if (w < 0 || !h.defined(w)) continue;
      const std::int64_t diff = h[u] - h[w];
      if (diff > 1 || diff < -1) report.violations.push_back({u, s, w, h[u], h[w]});
    }
  }
  report.pass = report.violations.empty();
  return report;
}

namespace {

constexpr std::size_t kViolationCap = 64;

// Stage B of the distance-like audit: no member of a checked level may be
// closer to x than h(x) - level (global metric).
void CloserMemberScan(const ScalarField& h, const std::vector<int>& inner, std::int64_t lo,
                      std::vector<DistanceLikeViolation>& out, Exec exec) {
  const Ball& ball = h.ball();
  const int n = ball.size();
  const auto scan = [&](int x, std::vector<DistanceLikeViolation>& local) {
    for (int m = 0; m < n; ++m) {
      if (!h.defined(m) || h[m] < lo || h[m] > h[x]) continue;
      const std::int64_t need = h[x] - h[m];
      const std::int64_t radial = std::abs(ball.dist_from_center(x) - ball.dist_from_center(m));
      if (radial >= need) continue;
      const std::int64_t d = ball.distance(x, m);
      if (d < need) local.push_back({x, h[m], h[x], h[m] + d});
    }
  };
  const int count = static_cast<int>(inner.size());
  if (exec == Exec::kParallel) {
    std::vector<std::vector<DistanceLikeViolation>> per(static_cast<std::size_t>(count));
#pragma omp parallel for schedule(dynamic, 8)
    for (int i = 0; i < count; ++i) scan(inner[i], per[i]);
    for (auto& v : per) out.insert(out.end(), v.begin(), v.end());
  } else {
    for (int i = 0; i < count; ++i) scan(inner[i], out);
  }
}

}  // namespace

DistanceLikeReport CheckDistanceLike(const ScalarField& h, int margin, Exec exec) {
  const Ball& ball = h.ball();
  if (margin < 0) throw PreconditionError("margin must be nonnegative");
  if (margin >= ball.radius() && ball.radius() > 0) {
    throw PreconditionError("margin " + std::to_string(margin) + " leaves nothing to check in a ball of radius " +
                            std::to_string(ball.radius()));
  }
  DistanceLikeReport report;
  std::int64_t hmin = std::numeric_limits<std::int64_t>::max();
  int argmin = -1;
  for (int v = 0; v < ball.size(); ++v) {
    if (h.defined(v) && h[v] < hmin) {
      hmin = h[v];
      argmin = v;
    }
  }
  if (argmin < 0) throw PreconditionError("field has no defined values");
  report.bounded_below_in_window = ball.dist_from_center(argmin) < ball.radius();

  std::vector<int> inner;
  std::int64_t hi = std::numeric_limits<std::int64_t>::min();
  for (int v = 0; v < ball.size(); ++v) {
    if (h.defined(v) && ball.dist_from_center(v) <= ball.radius() - margin) {
      inner.push_back(v);
      hi = std::max(hi, h[v]);
    }
  }
  const std::int64_t lo = hmin + margin;
  report.level_min = lo;
  report.level_max = hi;
  report.degenerate_range = hi <= lo;
  if (hi < lo) return report;

  std::vector<DistanceLikeViolation> violations;
  // Stage A: for every level, a member at exactly h(x) - level must exist.
  for (std::int64_t level = lo; level <= hi; ++level) {
    std::vector<int> members = LevelSetOf(h, level).members;
    std::vector<int> dist(static_cast<std::size_t>(ball.size()), -1);
    std::deque<int> queue;
    for (int m : members) {
      dist[m] = 0;
      queue.push_back(m);
    }
    while (!queue.empty()) {
      const int u = queue.front();
      queue.pop_front();
      for (Letter s = 0; s < ball.num_letters(); ++s) {
        const int w = ball.neighbor(u, s);
        if (w >= 0 && dist[w] < 0) {
          dist[w] = dist[u] + 1;
          queue.push_back(w);
        }
      }
    }
    for (int x : inner) {
      if (h[x] < level) continue;
      ++report.checked;
      const std::int64_t need = h[x] - level;
      if (members.empty()) {
        violations.push_back({x, level, h[x], kUndefined});
        continue;
      }
      if (dist[x] == need) continue;
      std::int64_t best = std::numeric_limits<std::int64_t>::max();
      for (int m : members) best = std::min(best, ball.distance(x, m));
      if (best != need) violations.push_back({x, level, h[x], level + best});
    }
  }
  // Stage B: nothing closer than allowed, measured globally.
  CloserMemberScan(h, inner, lo, violations, exec);

  const auto gap = [](const DistanceLikeViolation& v) {
    if (v.rhs == kUndefined) return std::numeric_limits<std::int64_t>::max();
    return std::abs(v.lhs - v.rhs);
  };
  std::stable_sort(violations.begin(), violations.end(),
                   [&](const auto& a, const auto& b) { return gap(a) > gap(b); });
  report.pass = violations.empty();
  if (violations.size() > kViolationCap) violations.resize(kViolationCap);
  report.violations = std::move(violations);
  return report;
}

LevelSet LevelSetOf(const ScalarField& h, std::int64_t level) {
  LevelSet set{level, {}};
  for (int v = 0; v < h.ball().size(); ++v) {
    if (h.defined(v) && h[v] == level) set.members.push_back(v);
  }
  return set;
}

ScalarField Normalize(const ScalarField& h, int p) {
  if (!h.defined(p)) throw PreconditionError("cannot normalize at an undefined vertex");
  const std::int64_t offset = h[p];
  std::vector<std::int64_t> values = h.values();
  for (auto& x : values) {
    if (x != kUndefined) x -= offset;
  }
  ScalarField out(h.ball_ptr(), std::move(values), h.provenance());
  out.set_stabilization_times(h.stabilization_times());
  return out;
}

ScalarField Translate(const ScalarField& h, const Element& g) {
  const Ball& ball = h.ball();
  const GroupSpec& group = ball.group();
  const Element g_inv = group.inverse(g);
  std::vector<std::int64_t> values(static_cast<std::size_t>(ball.size()), kUndefined);
  for (int v = 0; v < ball.size(); ++v) {
    if (const auto u = ball.find(group.multiply(g_inv, ball.element(v)))) values[v] = h[*u];
  }
  return ScalarField(h.ball_ptr(), std::move(values), h.provenance());
}

ScalarField RandomLipschitzField(BallPtr ball, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const int n = ball->size();
  const int sources = 1 + static_cast<int>(rng() % 4);
  const bool flip = (rng() & 1) != 0;
  std::vector<int> where;
  std::vector<std::int64_t> offset;
  for (int i = 0; i < sources; ++i) {
    where.push_back(static_cast<int>(rng() % static_cast<std::uint64_t>(n)));
    offset.push_back(static_cast<std::int64_t>(rng() % 7) - 3);
  }
  std::vector<std::int64_t> values(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) {
    std::int64_t best = std::numeric_limits<std::int64_t>::max();
    for (int i = 0; i < sources; ++i) best = std::min(best, ball->distance(v, where[i]) + offset[i]);
    values[v] = flip ? -best : best;
  }
  return ScalarField(std::move(ball), std::move(values), Provenance::kSynthetic);
}

}  // namespace horo
