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

#include "horo/horoworld.hpp"

#include <algorithm>

#include "horo/error.hpp"

namespace horo {

Horosphere HorosphereOf(const ScalarField& h, std::int64_t r) {
  return {r, LevelSetOf(h, -r).members};
}

Horoball HoroballOf(const ScalarField& h, std::int64_t r) {
  Horoball out{r, {}};
  for (int v = 0; v < h.ball().size(); ++v) {
    if (h.defined(v) && h[v] <= -r) out.members.push_back(v);
  }
  return out;
}

namespace {

void CheckRayAtCenter(const Ball& ball, const RayWalk& ray) {
  if (ball.group().tag() != ray.group().tag()) throw PreconditionError("ray and ball use different groups");
  if (!(ray.at(0) == ball.center())) throw PreconditionError("the ray must start at the ball center");
}

// d(u, im c) <= 1; only c(t) with |t - |u|| <= 1 can be that close.
bool NearRay(const Ball& ball, const RayWalk& ray, int u) {
  const std::int64_t du = ball.dist_from_center(u);
  for (std::int64_t t = std::max<std::int64_t>(du - 1, 0); t <= du + 1; ++t) {
    if (!ray.periodic() && t > ray.horizon()) break;
    if (ball.group().distance(ball.element(u), ray.at(t)) <= 1) return true;
  }
  return false;
}

std::int64_t DepthFrom(const Ball& ball, const std::vector<char>& near, int v) {
  std::int64_t depth = ball.dist_from_center(v);
  for (int u : GeodesicInterval(ball, 0, v)) {
    if (!near[static_cast<std::size_t>(u)]) depth = std::min<std::int64_t>(depth, ball.dist_from_center(u) - 1);
  }
  return depth;
}

std::vector<char> NearFlags(const Ball& ball, const RayWalk& ray, Exec exec) {
  const int n = ball.size();
  std::vector<char> near(static_cast<std::size_t>(n));
  if (exec == Exec::kParallel) {
#pragma omp parallel for schedule(static)
    for (int u = 0; u < n; ++u) near[u] = NearRay(ball, ray, u);
  } else {
    for (int u = 0; u < n; ++u) near[u] = NearRay(ball, ray, u);
  }
  return near;
}

}  // namespace

std::int64_t FellowTravelDepth(const Ball& ball, const RayWalk& ray, int v) {
  CheckRayAtCenter(ball, ray);
  std::vector<char> near(static_cast<std::size_t>(ball.size()));
  for (int u : GeodesicInterval(ball, 0, v)) near[static_cast<std::size_t>(u)] = NearRay(ball, ray, u);
  return DepthFrom(ball, near, v);
}

ConvergenceReport ConvergenceWitness(const ScalarField& h, const RayWalk& ray, int horizon, Exec exec) {
  const Ball& ball = h.ball();
  CheckRayAtCenter(ball, ray);
  if (horizon < 0 || horizon > ball.radius()) {
    throw PreconditionError("horizon " + std::to_string(horizon) + " exceeds the usable radius " +
                            std::to_string(ball.radius()));
  }
  const std::vector<char> near = NearFlags(ball, ray, exec);
  const int size = ball.size();
  std::vector<std::int64_t> depth(static_cast<std::size_t>(size), -1);
  const auto run = [&](int v) {
    if (h.defined(v) && h[v] <= 0 && -h[v] <= horizon) depth[v] = DepthFrom(ball, near, v);
  };
  if (exec == Exec::kParallel) {
#pragma omp parallel for schedule(dynamic, 16)
    for (int v = 0; v < size; ++v) run(v);
  } else {
    for (int v = 0; v < size; ++v) run(v);
  }
  ConvergenceReport report;
  for (int n = 0; n <= horizon; ++n) {
    ConvergenceRow row;
    row.n = n;
    for (int v = 0; v < size; ++v) {
      if (!h.defined(v) || h[v] != -n) continue;
      ++row.sphere_size;
      if (row.depth < 0 || depth[v] < row.depth) {
        row.depth = depth[v];
        row.argmin = v;
      }
    }
    row.witness = row.depth >= 0 && 2 * row.depth < n - 2 * report.slack;
    if (row.witness) {
      report.convergent_evidence = false;
      report.witness_sequence.push_back(row.argmin);
    }
    report.rows.push_back(row);
  }
  return report;
}

HoroballConvexityReport HoroballConvexity(const ScalarField& h, std::int64_t r, Exec exec) {
  constexpr std::size_t kFindingCap = 64;
  const Ball& ball = h.ball();
  const std::vector<int> members = HoroballOf(h, r).members;
  const auto m = static_cast<int>(members.size());
  struct Local {
    std::int64_t checked = 0, skipped = 0;
    std::vector<ConvexityFinding> findings;
  };
  std::vector<Local> per(members.size());
  const auto run = [&](int i) {
    Local& local = per[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < m; ++j) {
      std::vector<int> interval;
      try {
        interval = GeodesicInterval(ball, members[i], members[j]);
      } catch (const Error&) {
        ++local.skipped;
        continue;
      }
      ++local.checked;
      for (int u : interval) {
        if (!h.defined(u) || h[u] > -r) {
          if (local.findings.size() < kFindingCap) local.findings.push_back({members[i], members[j], u});
          break;
        }
      }
    }
  };
  if (exec == Exec::kParallel) {
#pragma omp parallel for schedule(dynamic, 4)
    for (int i = 0; i < m; ++i) run(i);
  } else {
    for (int i = 0; i < m; ++i) run(i);
  }
  HoroballConvexityReport report;
  report.members = m;
  for (Local& local : per) {
    report.pairs_checked += local.checked;
    report.pairs_skipped += local.skipped;
    for (auto& f : local.findings) {
      report.pass = false;
      if (report.findings.size() < kFindingCap) report.findings.push_back(f);
    }
  }
  return report;
}

SumBound SumBoundOf(const ScalarField& h1, const ScalarField& h2) {
  if (h1.ball_ptr() != h2.ball_ptr()) throw PreconditionError("fields live on different balls");
  SumBound out;
  bool any = false;
  for (int v = 0; v < h1.ball().size(); ++v) {
    if (!h1.defined(v) || !h2.defined(v)) continue;
    const std::int64_t s = h1[v] + h2[v];
    if (!any || s < out.min) {
      out.min = s;
      out.minimizers.clear();
      any = true;
    }
    if (s == out.min) out.minimizers.push_back(v);
  }
  if (!any) throw PreconditionError("fields share no defined vertex");
  return out;
}

IntersectionReport HoroballIntersection(const GroupSpec& group, const RayWalk& zeta, const RayWalk& eta,
                                        std::int64_t r1, std::int64_t r2, const std::vector<int>& radii) {
  if (radii.empty()) throw ConfigError("no radii given");
  IntersectionReport report;
  for (int radius : radii) {
    BallPtr ball = Ball::Build(group, group.identity(), radius);
    const ScalarField h1 = Busemann(ball, zeta);
    const ScalarField h2 = Busemann(ball, eta);
    if (h1.values() == h2.values()) {
      throw PreconditionError("the two rays give the same field on the radius " + std::to_string(radius) + " ball");
    }
    std::vector<int> both;
    for (int v = 0; v < ball->size(); ++v) {
      if (h1[v] <= -r1 && h2[v] <= -r2) both.push_back(v);
    }
    IntersectionRow row{radius, static_cast<std::int64_t>(both.size()), both.empty() ? -1 : 0,
                        SumBoundOf(h1, h2).min};
    for (std::size_t i = 0; i < both.size(); ++i) {
      for (std::size_t j = i + 1; j < both.size(); ++j) {
        row.diameter = std::max(row.diameter, ball->distance(both[i], both[j]));
      }
    }
    report.rows.push_back(row);
  }
  const std::size_t n = report.rows.size();
  report.bounded_evidence = n >= 2 && report.rows[n - 1].diameter == report.rows[n - 2].diameter;
  return report;
}

DivergenceReport DivergenceAlongOtherRay(const ScalarField& h, const RayWalk& zeta, const RayWalk& other) {
  const Ball& ball = h.ball();
  CheckRayAtCenter(ball, other);
  bool same = true;
  DivergenceReport report;
  for (std::int64_t t = 0; t <= ball.radius(); ++t) {
    if (!other.periodic() && t > other.horizon()) break;
    const Element p = other.at(t);
    const bool zeta_has_t = zeta.periodic() || t <= zeta.horizon();
    if (!zeta_has_t || !(zeta.at(t) == p)) same = false;
    const auto v = ball.find(p);
    if (!v || !h.defined(*v)) break;
    report.values.push_back(h[*v]);
  }
  if (same) throw PreconditionError("the ray agrees with the field's own ray inside the ball");
  const std::size_t len = report.values.size();
  report.tail_increasing = len >= 2;
  for (std::size_t t = std::max<std::size_t>(len / 2, 1); t < len; ++t) {
    if (report.values[t] <= report.values[t - 1]) report.tail_increasing = false;
  }
  report.divergence_evidence = report.tail_increasing;
  return report;
}

ProjectionReport ProjectionInequality(const ScalarField& h, const RayWalk& ray) {
  const Ball& ball = h.ball();
  CheckRayAtCenter(ball, ray);
  ProjectionReport report;
  for (int v = 0; v < ball.size(); ++v) {
    if (!h.defined(v)) continue;
    // d(v, c(t)) >= t - |v|, so projections have t <= 2|v|.
    const std::int64_t t_max = 2 * static_cast<std::int64_t>(ball.dist_from_center(v));
    std::int64_t best = -1;
    std::vector<std::int64_t> feet;
    for (std::int64_t t = 0; t <= t_max; ++t) {
      if (!ray.periodic() && t > ray.horizon()) break;
      const std::int64_t d = ball.group().distance(ball.element(v), ray.at(t));
      if (best < 0 || d < best) {
        best = d;
        feet.clear();
      }
      if (d == best) feet.push_back(t);
    }
    ++report.checked;
    // b_c(c(t)) = -t.
    for (std::int64_t t : feet) {
      if (-t > h[v]) {
        report.pass = false;
        report.violations.push_back(v);
        break;
      }
    }
  }
  return report;
}

SphereMinimum SphereMinimumOf(const ScalarField& h, int x0, int r) {
  const Ball& ball = h.ball();
  if (r < 0 || ball.dist_from_center(x0) + r > ball.radius()) {
    throw PreconditionError("sphere does not fit in the ball");
  }
  SphereMinimum out;
  bool any = false;
  for (int v = 0; v < ball.size(); ++v) {
    if (ball.distance(x0, v) != r) continue;
    if (!h.defined(v)) throw PreconditionError("field undefined on the sphere");
    if (!any || h[v] < out.value) {
      out.value = h[v];
      out.argmin.clear();
      any = true;
    }
    if (h[v] == out.value) out.argmin.push_back(v);
  }
  for (std::size_t i = 0; i < out.argmin.size(); ++i) {
    for (std::size_t j = i + 1; j < out.argmin.size(); ++j) {
      out.argmin_diameter = std::max(out.argmin_diameter, ball.distance(out.argmin[i], out.argmin[j]));
    }
  }
  out.unique_with_expected_value = out.argmin.size() == 1 && out.value == h[x0] - r;
  return out;
}

}  // namespace horo
