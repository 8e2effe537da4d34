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

#include "horo/symbolic.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

#include "horo/error.hpp"

namespace horo {

Alphabet::Alphabet(const GroupSpec& group) : width_(group.num_letters()) {
  for (Letter s = 0; s < width_; ++s) names_.push_back(group.letter_name(s));
}

std::uint64_t Alphabet::size() const {
  std::uint64_t n = 1;
  for (int i = 0; i < width_; ++i) n *= 3;
  return n;
}

bool Alphabet::contains(const Symbol& letter) const {
  if (static_cast<int>(letter.size()) != width_) return false;
  return std::all_of(letter.begin(), letter.end(), [](std::int8_t x) { return x >= -1 && x <= 1; });
}

std::uint64_t Alphabet::index(const Symbol& letter) const {
  if (!contains(letter)) throw PreconditionError("not a letter of the alphabet");
  std::uint64_t idx = 0;
  for (std::int8_t x : letter) idx = idx * 3 + static_cast<std::uint64_t>(x + 1);
  return idx;
}

Symbol Alphabet::letter(std::uint64_t index) const {
  if (index >= size()) throw PreconditionError("letter index out of range");
  Symbol out(static_cast<std::size_t>(width_));
  for (int i = width_ - 1; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = static_cast<std::int8_t>(index % 3) - 1;
    index /= 3;
  }
  return out;
}

std::string Alphabet::format(const Symbol& letter) const {
  std::ostringstream os;
  os << '{';
  for (int i = 0; i < width_; ++i) {
    if (i) os << ',';
    os << names_[static_cast<std::size_t>(i)] << ':';
    const std::int8_t x = letter.at(static_cast<std::size_t>(i));
    if (x == kAbsent) {
      os << "null";
    } else if (x == kWildcard) {
      os << '*';
    } else {
      os << static_cast<int>(x);
    }
  }
  os << '}';
  return os.str();
}

Configuration::Configuration(BallPtr ball, int width)
    : ball_(std::move(ball)),
      width_(width),
      values_(static_cast<std::size_t>(ball_->size()) * static_cast<std::size_t>(width), kAbsent) {
  if (width <= 0) throw PreconditionError("configuration width must be positive");
}

Symbol Configuration::symbol(int v) const {
  const auto begin = values_.begin() + static_cast<std::ptrdiff_t>(Offset(v, 0));
  return {begin, begin + width_};
}

void Configuration::set_symbol(int v, const Symbol& symbol) {
  if (static_cast<int>(symbol.size()) != width_) throw PreconditionError("symbol width mismatch");
  std::copy(symbol.begin(), symbol.end(), values_.begin() + static_cast<std::ptrdiff_t>(Offset(v, 0)));
}

DerivativeField Derivative(const ScalarField& h) {
  const LipschitzReport lip = CheckLipschitz(h);
  if (!lip.pass) {
    const auto& bad = lip.violations.front();
    throw PreconditionError("field is not 1-Lipschitz: edge " + h.ball().group().format(h.ball().element(bad.u)) +
                            " -" + h.ball().group().letter_name(bad.s) + "-> " +
                            h.ball().group().format(h.ball().element(bad.w)));
  }
  const Ball& ball = h.ball();
  DerivativeField sigma(h.ball_ptr(), ball.num_letters());
  for (int v = 0; v < ball.size(); ++v) {
    if (!h.defined(v)) continue;
    for (Letter s = 0; s < ball.num_letters(); ++s) {
      const int w = ball.neighbor(v, s);
      if (w >= 0 && h.defined(w)) sigma.set(v, s, static_cast<std::int8_t>(h[w] - h[v]));
    }
  }
  return sigma;
}

DerivativeField ConstantDerivative(BallPtr ball, const Symbol& letter) {
  DerivativeField sigma(ball, ball->num_letters());
  if (static_cast<int>(letter.size()) != ball->num_letters()) throw PreconditionError("letter width mismatch");
  for (int v = 0; v < ball->size(); ++v) {
    for (Letter s = 0; s < ball->num_letters(); ++s) {
      if (ball->neighbor(v, s) >= 0) sigma.set(v, s, letter[static_cast<std::size_t>(s)]);
    }
  }
  return sigma;
}

LoopReport LoopCheck(const DerivativeField& sigma) {
  const Ball& ball = sigma.ball();
  if (sigma.width() != ball.num_letters()) throw PreconditionError("not a derivative-width configuration");
  LoopReport report;
  for (int v = 0; v < ball.size(); ++v) {
    for (Letter s = 0; s < ball.num_letters(); ++s) {
      const std::int8_t x = sigma.at(v, s);
      if (x != kAbsent && (x < -1 || x > 1)) {
        report.out_of_range.push_back(v);
        break;
      }
    }
    for (Letter s = 0; s < ball.num_letters(); s += 2) {
      const int w = ball.neighbor(v, s);
      if (w < 0 || !sigma.present(v, s) || !sigma.present(w, InverseLetter(s))) continue;
      if (sigma.at(v, s) != -sigma.at(w, InverseLetter(s))) {
        report.edges.push_back({v, s, sigma.at(v, s), sigma.at(w, InverseLetter(s))});
      }
    }
  }
  const std::vector<std::pair<Letter, Letter>> pairs = ball.group().commuting_pairs();
  for (int v = 0; v < ball.size(); ++v) {
    for (const auto& [s, t] : pairs) {
      const int vs = ball.neighbor(v, s);
      const int vt = ball.neighbor(v, t);
      if (vs < 0 || vt < 0) continue;
      const int vst = ball.neighbor(vs, t);
      if (vst < 0) continue;
      if (!sigma.present(v, s) || !sigma.present(vs, t) || !sigma.present(vst, InverseLetter(s)) ||
          !sigma.present(vt, InverseLetter(t))) {
        continue;
      }
      ++report.squares_checked;
      const int sum = sigma.at(v, s) + sigma.at(vs, t) + sigma.at(vst, InverseLetter(s)) +
                      sigma.at(vt, InverseLetter(t));
      if (sum != 0) report.loops.push_back({v, s, t, sum});
    }
  }
  report.pass = report.out_of_range.empty() && report.edges.empty() && report.loops.empty();
  return report;
}

namespace {

std::string DescribeLoopFailure(const GroupSpec& group, const Ball& ball, const LoopReport& report) {
  std::ostringstream os;
  if (!report.out_of_range.empty()) {
    os << "value outside {-1,0,1} at " << group.format(ball.element(report.out_of_range.front()));
  } else if (!report.edges.empty()) {
    const EdgeDefect& e = report.edges.front();
    os << "edge antisymmetry fails at " << group.format(ball.element(e.v)) << " along "
       << group.letter_name(e.s) << ": " << static_cast<int>(e.forward) << " vs "
       << static_cast<int>(e.backward);
  } else {
    const LoopDefect& l = report.loops.front();
    os << "relator square " << group.letter_name(l.s) << ' ' << group.letter_name(l.t) << ' '
       << group.letter_name(InverseLetter(l.s)) << ' ' << group.letter_name(InverseLetter(l.t)) << " at "
       << group.format(ball.element(l.v)) << " sums to " << l.sum;
  }
  return os.str();
}

std::vector<int> PathToRoot(const std::vector<int>& parent, int v) {
  std::vector<int> path{v};
  while (parent[static_cast<std::size_t>(path.back())] >= 0) {
    path.push_back(parent[static_cast<std::size_t>(path.back())]);
  }
  return path;
}

}  // namespace

ScalarField Integrate(const DerivativeField& sigma, int base, std::int64_t base_value) {
  const Ball& ball = sigma.ball();
  const GroupSpec& group = ball.group();
  if (base < 0 || base >= ball.size()) throw PreconditionError("base vertex outside the ball");
  const LoopReport report = LoopCheck(sigma);
  if (!report.pass) throw PreconditionError("derivative is path-dependent: " + DescribeLoopFailure(group, ball, report));

  std::vector<std::int64_t> values(static_cast<std::size_t>(ball.size()), kUndefined);
  std::vector<int> parent(static_cast<std::size_t>(ball.size()), -1);
  values[static_cast<std::size_t>(base)] = base_value;
  std::deque<int> queue{base};
  while (!queue.empty()) {
    const int v = queue.front();
    queue.pop_front();
    for (Letter s = 0; s < ball.num_letters(); ++s) {
      const int w = ball.neighbor(v, s);
      if (w < 0 || !sigma.present(v, s)) continue;
      const std::int64_t candidate = values[static_cast<std::size_t>(v)] + sigma.at(v, s);
      std::int64_t& hw = values[static_cast<std::size_t>(w)];
      if (hw == kUndefined) {
        hw = candidate;
        parent[static_cast<std::size_t>(w)] = v;
        queue.push_back(w);
      } else if (hw != candidate) {
        // Two tree paths disagree: report the cycle they close.
        std::vector<int> a = PathToRoot(parent, v);
        std::vector<int> b = PathToRoot(parent, w);
        std::reverse(a.begin(), a.end());
        std::ostringstream os;
        os << "integration is path-dependent around the cycle";
        for (int u : a) os << ' ' << group.format(ball.element(u));
        for (int u : b) os << ' ' << group.format(ball.element(u));
        throw PreconditionError(os.str());
      }
    }
  }
  return ScalarField(sigma.ball_ptr(), std::move(values), Provenance::kSynthetic);
}

Configuration ShiftAct(const Element& g, const Configuration& sigma) {
  const Ball& ball = sigma.ball();
  const GroupSpec& group = ball.group();
  group.check(g);
  const Element g_inv = group.inverse(g);
  Configuration out(sigma.ball_ptr(), sigma.width());
  const bool edge_width = sigma.width() == ball.num_letters();
  bool any = false;
  for (int v = 0; v < ball.size(); ++v) {
    const auto u = ball.find(group.multiply(g_inv, ball.element(v)));
    if (!u) continue;
    any = true;
    for (int s = 0; s < sigma.width(); ++s) {
      if (edge_width && ball.neighbor(v, s) < 0) continue;
      out.set(v, s, sigma.at(*u, s));
    }
  }
  if (!any) throw PreconditionError("translate does not overlap the window");
  return out;
}

OverlapComparison CompareOnOverlap(const Configuration& a, const Configuration& b) {
  if (a.ball_ptr() != b.ball_ptr() || a.width() != b.width()) {
    throw PreconditionError("configurations live on different windows");
  }
  OverlapComparison out;
  for (int v = 0; v < a.ball().size(); ++v) {
    for (int s = 0; s < a.width(); ++s) {
      if (!a.present(v, s) || !b.present(v, s)) continue;
      ++out.compared;
      if (a.at(v, s) != b.at(v, s) && out.equal) {
        out.equal = false;
        out.first_mismatch = {v, s};
      }
    }
  }
  return out;
}

Pattern ShiftAct(const GroupSpec& group, const Element& g, const Pattern& p) {
  Pattern out{{}, p.symbols};
  for (const Element& f : p.support) out.support.push_back(group.multiply(g, f));
  return out;
}

ForbiddenSet::ForbiddenSet(std::vector<Element> support, std::vector<std::vector<Symbol>> patterns)
    : support_(std::move(support)), patterns_(std::move(patterns)) {
  if (support_.empty()) throw ConfigError("pattern support must be nonempty");
  for (std::size_t i = 0; i < support_.size(); ++i) {
    for (std::size_t j = i + 1; j < support_.size(); ++j) {
      if (support_[i] == support_[j]) throw ConfigError("pattern support has a repeated element");
    }
  }
  for (const auto& p : patterns_) {
    if (p.size() != support_.size()) throw ConfigError("every forbidden pattern must use the shared support");
    for (const Symbol& s : p) {
      if (s.size() != p.front().size()) throw ConfigError("pattern symbols have mixed widths");
    }
  }
}

ScanReport ForbiddenScan(const Configuration& sigma, const ForbiddenSet& forbidden, Exec exec) {
  const Ball& ball = sigma.ball();
  const GroupSpec& group = ball.group();
  for (const auto& p : forbidden.patterns()) {
    if (static_cast<int>(p.front().size()) != sigma.width()) throw PreconditionError("pattern width mismatch");
  }
  const auto& support = forbidden.support();
  const int n = ball.size();
  std::vector<std::vector<PatternMatch>> found(static_cast<std::size_t>(n));
  std::vector<char> fits(static_cast<std::size_t>(n), 0);
  const auto run = [&](int u) {
    std::vector<int> cells;
    for (const Element& f : support) {
      const auto c = ball.find(group.multiply(ball.element(u), f));
      if (!c) return;
      cells.push_back(*c);
    }
    fits[static_cast<std::size_t>(u)] = 1;
    for (std::size_t k = 0; k < forbidden.size(); ++k) {
      const auto& pattern = forbidden.patterns()[k];
      bool match = true;
      for (std::size_t i = 0; i < cells.size() && match; ++i) {
        for (int s = 0; s < sigma.width() && match; ++s) {
          const std::int8_t want = pattern[i][static_cast<std::size_t>(s)];
          if (want == kWildcard) continue;
          match = sigma.at(cells[i], s) == want;
        }
      }
      if (match) found[static_cast<std::size_t>(u)].push_back({group.inverse(ball.element(u)), u, static_cast<int>(k)});
    }
  };
  if (exec == Exec::kParallel) {
#pragma omp parallel for schedule(dynamic, 64)
    for (int u = 0; u < n; ++u) run(u);
  } else {
    for (int u = 0; u < n; ++u) run(u);
  }
  ScanReport report;
  for (int u = 0; u < n; ++u) {
    if (!fits[static_cast<std::size_t>(u)]) {
      ++report.positions_skipped;
      continue;
    }
    ++report.positions_tested;
    for (PatternMatch& m : found[static_cast<std::size_t>(u)]) report.matches.push_back(std::move(m));
  }
  if (report.positions_tested == 0) throw PreconditionError("pattern support does not fit anywhere in the ball");
  return report;
}

ForbiddenSet AntisymmetryForbiddenSet(const GroupSpec& group) {
  const int width = group.num_letters();
  std::vector<std::vector<Symbol>> patterns;
  std::vector<Element> support{group.identity()};
  for (Letter s = 0; s < width; ++s) support.push_back(group.generator(s));
  // Slot 0 is the origin, slot 1 + s its s-neighbour.
  for (Letter s = 0; s < width; ++s) {
    for (int x = -1; x <= 1; ++x) {
      for (int y = -1; y <= 1; ++y) {
        if (x == -y) continue;
        std::vector<Symbol> p(support.size(), Symbol(static_cast<std::size_t>(width), kWildcard));
        p[0][static_cast<std::size_t>(s)] = static_cast<std::int8_t>(x);
        p[static_cast<std::size_t>(1 + s)][static_cast<std::size_t>(InverseLetter(s))] = static_cast<std::int8_t>(y);
        patterns.push_back(std::move(p));
      }
    }
  }
  return ForbiddenSet(std::move(support), std::move(patterns));
}

ForbiddenSet TicTacToeForbiddenSet(const GroupSpec& group) {
  if (group.num_generators() != 2 || group.factor_of(0) != group.factor_of(2) ||
      group.factor_kind(0) != FactorKind::kFreeAbelian) {
    throw PreconditionError("tic-tac-toe patterns need the group Z^2");
  }
  std::vector<Element> support;
  for (int j = 0; j < 3; ++j) {
    for (int i = 0; i < 3; ++i) {
      Element e = group.identity();
      for (int k = 0; k < i; ++k) e = group.multiply_letter(e, 0);
      for (int k = 0; k < j; ++k) e = group.multiply_letter(e, 2);
      support.push_back(e);
    }
  }
  const std::vector<std::vector<int>> lines = {{0, 1, 2}, {3, 4, 5}, {6, 7, 8}, {0, 3, 6},
                                               {1, 4, 7}, {2, 5, 8}, {0, 4, 8}, {2, 4, 6}};
  std::vector<std::vector<Symbol>> patterns;
  for (std::int8_t symbol : {std::int8_t{0}, std::int8_t{1}}) {
    for (const auto& line : lines) {
      std::vector<Symbol> p(9, Symbol{kWildcard});
      for (int cell : line) p[static_cast<std::size_t>(cell)] = Symbol{symbol};
      patterns.push_back(std::move(p));
    }
  }
  return ForbiddenSet(std::move(support), std::move(patterns));
}

CodingResult CodingPipeline(BallPtr ball, const RayWalk& ray, int margin) {
  if (!(ball->center() == ball->group().identity())) {
    throw PreconditionError("the coding pipeline needs a ball centred at the identity");
  }
  if (ball->group().tag() != ray.group().tag()) throw PreconditionError("ray and ball use different groups");
  ScalarField h = Busemann(ball, ray);
  DerivativeField sigma = Derivative(h);
  const int center = ball->index_of(ball->center());
  ScalarField normalized = Normalize(h, center);
  DistanceLikeReport dl = CheckDistanceLike(h, margin);
  LoopReport loops = LoopCheck(sigma);
  return {std::move(h), std::move(sigma), std::move(normalized), std::move(dl), std::move(loops)};
}

}  // namespace horo
