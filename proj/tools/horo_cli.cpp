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

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "horo/ball.hpp"
#include "horo/error.hpp"
#include "horo/fields.hpp"
#include "horo/fixtures.hpp"
#include "horo/gradient.hpp"
#include "horo/group.hpp"
#include "horo/horoworld.hpp"
#include "horo/io.hpp"
#include "horo/morse.hpp"
#include "horo/symbolic.hpp"

namespace fs = std::filesystem;
using horo::io::Json;

namespace {

constexpr const char* kVersion = "0.1.0";

struct Options {
  std::string group_path;
  std::string ray_path;
  std::string other_ray_path;
  std::string field_path;
  std::string derivative_path;
  std::string patterns_path;
  std::string out = "out";
  std::string format;
  std::string start = "1";
  std::string start2;
  std::string policy = "first";
  std::string geodesic;
  std::string shift;
  std::string base = "1";
  std::string triangle;
  std::vector<std::string> gauges;
  std::vector<int> radii;
  int radius = -1;
  int margin = 0;
  int horizon = -1;
  int length = -1;
  int budget_qg = 4;
  long long base_value = 0;
  std::size_t budget_geodesics = 100'000;
  std::size_t budget_nodes = 200'000;
  std::size_t budget_leaves = 10'000;
  std::size_t budget_vertices = 5'000'000;
  std::uint64_t seed = 0;
  bool seed_given = false;
};

std::string Fnv1a(const std::string& data) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

// Output directory plus the manifest of everything written into it.
class Run {
 public:
  Run(std::string subcommand, const Options& opt) : subcommand_(std::move(subcommand)), opt_(opt) {
    fs::create_directories(opt.out);
  }

  bool wants(const std::string& format) const { return opt_.format.empty() || opt_.format == format; }

  void write(const std::string& name, const std::string& content) {
    const fs::path path = fs::path(opt_.out) / name;
    fs::create_directories(path.parent_path());
    horo::io::WriteFile(path.string(), content);
    outputs_.push_back({{"file", name}, {"fnv1a64", Fnv1a(content)}});
  }
  void write_json(const std::string& name, const Json& j) { write(name, j.dump(2) + "\n"); }

  void input(const std::string& key, const std::string& path) {
    if (path.empty()) return;
    inputs_[key] = {{"path", path}, {"fnv1a64", Fnv1a(horo::io::ReadFile(path))}};
  }
  void param(const std::string& key, Json value) { params_[key] = std::move(value); }

  void finish(double wall_ms) {
    Json manifest = {{"subcommand", subcommand_},
                     {"versions", {{"horo", kVersion}}},
                     {"inputs", inputs_},
                     {"parameters", params_},
                     {"budgets",
                      {{"geodesics", opt_.budget_geodesics},
                       {"quasi_geodesic_distance", opt_.budget_qg},
                       {"nodes_per_pair", opt_.budget_nodes},
                       {"leaves", opt_.budget_leaves},
                       {"vertices", opt_.budget_vertices}}},
                     {"seed", opt_.seed},
                     {"outputs", outputs_},
                     {"wall_time_ms", static_cast<long long>(wall_ms)}};
    horo::io::WriteFile((fs::path(opt_.out) / "manifest.json").string(), manifest.dump(2) + "\n");
  }

 private:
  std::string subcommand_;
  const Options& opt_;
  Json inputs_ = Json::object();
  Json params_ = Json::object();
  Json outputs_ = Json::array();
};

horo::GroupSpec LoadGroup(const Options& opt) {
  if (opt.group_path.empty()) throw horo::ConfigError("--group is required");
  try {
    return horo::io::GroupFromJson(Json::parse(horo::io::ReadFile(opt.group_path)));
  } catch (const Json::parse_error& e) {
    throw horo::ConfigError(opt.group_path + ": " + e.what());
  }
}

horo::io::RaySpec LoadRaySpec(const std::string& path) {
  try {
    return horo::io::RaySpecFromJson(Json::parse(horo::io::ReadFile(path)));
  } catch (const Json::parse_error& e) {
    throw horo::ConfigError(path + ": " + e.what());
  }
}

void RequireRadius(const Options& opt) {
  if (opt.radius < 0) throw horo::ConfigError("--radius must be given and nonnegative");
}

horo::BallPtr BuildBall(const horo::GroupSpec& group, const Options& opt) {
  RequireRadius(opt);
  return horo::Ball::Build(group, group.identity(), opt.radius, {opt.budget_vertices, horo::Exec::kParallel});
}

// The field named by --field, or the Busemann field of --ray.
horo::ScalarField LoadField(const horo::GroupSpec& group, horo::BallPtr ball, const Options& opt, Run& run) {
  if (!opt.field_path.empty()) {
    run.input("field", opt.field_path);
    std::ifstream in(opt.field_path);
    if (!in) throw horo::ConfigError("cannot open " + opt.field_path);
    return horo::io::ReadFieldCsv(ball, in);
  }
  if (opt.ray_path.empty()) throw horo::ConfigError("give --ray or --field");
  run.input("ray", opt.ray_path);
  return horo::Busemann(ball, horo::io::MakeRay(group, LoadRaySpec(opt.ray_path), opt.radius));
}

Json ElementList(const horo::Ball& ball, const std::vector<int>& vertices) {
  Json out = Json::array();
  for (int v : vertices) out.push_back(ball.group().format(ball.element(v)));
  return out;
}

Json ElementList(const horo::GroupSpec& group, const std::vector<horo::Element>& elements) {
  Json out = Json::array();
  for (const auto& e : elements) out.push_back(group.format(e));
  return out;
}

std::string FieldCsv(const horo::ScalarField& h) {
  std::ostringstream os;
  horo::io::WriteFieldCsv(h, os);
  return os.str();
}

std::string DerivativeCsv(const horo::DerivativeField& sigma) {
  std::ostringstream os;
  horo::io::WriteDerivativeCsv(sigma, os);
  return os.str();
}

std::string BallDot(const horo::Ball& ball) {
  std::ostringstream os;
  horo::WriteDot(ball, os);
  return os.str();
}

Json LipschitzJson(const horo::Ball& ball, const horo::LipschitzReport& r) {
  Json v = Json::array();
  for (const auto& x : r.violations) {
    v.push_back({{"u", ball.group().format(ball.element(x.u))},
                 {"letter", ball.group().letter_name(x.s)},
                 {"w", ball.group().format(ball.element(x.w))},
                 {"h_u", x.hu},
                 {"h_w", x.hw}});
  }
  return {{"pass", r.pass}, {"violations", v}};
}

Json DistanceLikeJson(const horo::Ball& ball, const horo::DistanceLikeReport& r) {
  Json v = Json::array();
  for (const auto& x : r.violations) {
    v.push_back({{"x", ball.group().format(ball.element(x.x))},
                 {"level", x.level},
                 {"h_x", x.lhs},
                 {"level_plus_distance", x.rhs == horo::kUndefined ? Json(nullptr) : Json(x.rhs)}});
  }
  return {{"pass", r.pass},
          {"checked", r.checked},
          {"level_min", r.level_min},
          {"level_max", r.level_max},
          {"degenerate_range", r.degenerate_range},
          {"bounded_below_in_window", r.bounded_below_in_window},
          {"violations", v}};
}

Json LoopJson(const horo::Ball& ball, const horo::LoopReport& r) {
  const auto& g = ball.group();
  Json edges = Json::array();
  for (const auto& e : r.edges) {
    edges.push_back({{"vertex", g.format(ball.element(e.v))},
                     {"letter", g.letter_name(e.s)},
                     {"forward", e.forward},
                     {"backward", e.backward}});
  }
  Json loops = Json::array();
  for (const auto& l : r.loops) {
    loops.push_back({{"corner", g.format(ball.element(l.v))},
                     {"square", g.letter_name(l.s) + " " + g.letter_name(l.t) + " " +
                                    g.letter_name(horo::InverseLetter(l.s)) + " " +
                                    g.letter_name(horo::InverseLetter(l.t))},
                     {"sum", l.sum}});
  }
  return {{"pass", r.pass},
          {"out_of_range", ElementList(ball, r.out_of_range)},
          {"edge_violations", edges},
          {"loop_violations", loops},
          {"squares_checked", r.squares_checked}};
}

std::string ProfileCsv(const horo::FellowTravelProfile& p) {
  std::ostringstream os;
  os << "t,distance\n";
  for (std::size_t t = 0; t < p.distance.size(); ++t) os << t << ',' << p.distance[t] << '\n';
  return os.str();
}

Json ProfileJson(const horo::FellowTravelProfile& p) {
  return {{"alpha_offset", p.alpha_offset},
          {"beta_offset", p.beta_offset},
          {"max", p.max},
          {"tail_nondecreasing", p.tail_nondecreasing},
          {"distance", p.distance}};
}

std::string TreeDot(const horo::ScalarField& h, const horo::GradientTree& tree) {
  const horo::Ball& ball = h.ball();
  std::ostringstream os;
  os << "digraph gradient {\n";
  for (std::size_t i = 0; i < tree.nodes.size(); ++i) {
    const int v = tree.nodes[i].vertex;
    os << "  n" << i << " [label=\"" << ball.group().format(ball.element(v)) << "\\nh=" << h[v] << "\"];\n";
  }
  for (std::size_t i = 1; i < tree.nodes.size(); ++i) os << "  n" << tree.nodes[i].parent << " -> n" << i << ";\n";
  os << "}\n";
  return os.str();
}

horo::GradientPolicy ParsePolicy(const std::string& p) {
  if (p == "first") return horo::GradientPolicy::kFirst;
  if (p == "all") return horo::GradientPolicy::kAll;
  if (p == "random") return horo::GradientPolicy::kRandom;
  throw horo::ConfigError("unknown policy '" + p + "'");
}

std::vector<horo::Element> PathElements(const horo::GroupSpec& group, const std::vector<horo::Letter>& word) {
  std::vector<horo::Element> path{group.identity()};
  for (horo::Letter s : word) path.push_back(group.multiply_letter(path.back(), s));
  return path;
}

// --geodesic word, or the first --length letters of --ray.
std::vector<horo::Element> LoadGeodesic(const horo::GroupSpec& group, const Options& opt, Run& run) {
  if (!opt.geodesic.empty()) return PathElements(group, group.parse_word(opt.geodesic));
  if (opt.ray_path.empty() || opt.length < 0) throw horo::ConfigError("give --geodesic, or --ray with --length");
  run.input("ray", opt.ray_path);
  const horo::RayWalk ray = horo::io::MakeRay(group, LoadRaySpec(opt.ray_path), opt.length);
  std::vector<horo::Element> path;
  for (int t = 0; t <= opt.length; ++t) path.push_back(ray.at(t));
  return path;
}

struct Gauge {
  horo::Rational lambda;
  std::int64_t epsilon = 0;
};

// "p/q:eps" or "p:eps".
Gauge ParseGauge(const std::string& text) {
  Gauge g;
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw horo::ConfigError("gauge must look like p/q:eps, got '" + text + "'");
  const std::string lam = text.substr(0, colon);
  try {
    const auto slash = lam.find('/');
    g.lambda.num = std::stoll(lam.substr(0, slash));
    g.lambda.den = slash == std::string::npos ? 1 : std::stoll(lam.substr(slash + 1));
    g.epsilon = std::stoll(text.substr(colon + 1));
  } catch (const std::exception&) {
    throw horo::ConfigError("bad gauge '" + text + "'");
  }
  return g;
}

// ---------------------------------------------------------------- subcommands

void CmdBall(const Options& opt, Run& run) {
  const horo::GroupSpec group = LoadGroup(opt);
  run.input("group", opt.group_path);
  run.param("radius", opt.radius);
  const horo::BallPtr ball = BuildBall(group, opt);
  if (run.wants("dot")) run.write("ball.dot", BallDot(*ball));
  if (run.wants("csv")) {
    std::ostringstream os;
    horo::WriteDistanceCsv(*ball, os);
    run.write("distances.csv", os.str());
  }
  if (run.wants("json")) {
    run.write_json("ball.json", {{"group", horo::io::GroupToJson(group)},
                                 {"radius", ball->radius()},
                                 {"vertices", ball->size()},
                                 {"letters", ball->num_letters()}});
  }
}

void CmdBusemann(const Options& opt, Run& run) {
  const horo::GroupSpec group = LoadGroup(opt);
  run.input("group", opt.group_path);
  run.input("ray", opt.ray_path);
  run.param("radius", opt.radius);
  run.param("margin", opt.margin);
  if (opt.ray_path.empty()) throw horo::ConfigError("--ray is required");
  const horo::BallPtr ball = BuildBall(group, opt);
  const horo::RayWalk ray = horo::io::MakeRay(group, LoadRaySpec(opt.ray_path), opt.radius);
  const horo::ScalarField h = horo::Busemann(ball, ray);
  int t_stab = 0;
  for (int t : h.stabilization_times()) t_stab = std::max(t_stab, t);
  if (run.wants("csv")) run.write("field.csv", FieldCsv(h));
  if (run.wants("json")) {
    Json report = {{"provenance", horo::ProvenanceName(h.provenance())},
                   {"vertices", ball->size()},
                   {"max_stabilization_time", t_stab},
                   {"lipschitz", LipschitzJson(*ball, horo::CheckLipschitz(h))}};
    if (opt.margin < opt.radius || opt.radius == 0) {
      report["distance_like"] = DistanceLikeJson(*ball, horo::CheckDistanceLike(h, opt.margin));
    }
    run.write_json("report.json", report);
  }
}

void CmdGradient(const Options& opt, Run& run) {
  const horo::GroupSpec group = LoadGroup(opt);
  run.input("group", opt.group_path);
  run.param("radius", opt.radius);
  run.param("margin", opt.margin);
  run.param("policy", opt.policy);
  run.param("start", opt.start);
  const horo::GradientPolicy policy = ParsePolicy(opt.policy);
  if (policy == horo::GradientPolicy::kRandom && !opt.seed_given) {
    throw horo::ConfigError("--seed is required with --policy random");
  }
  const horo::BallPtr ball = BuildBall(group, opt);
  const horo::ScalarField h = LoadField(group, ball, opt, run);
  const int start = ball->index_of(group.parse_element(opt.start));
  const horo::GradientTree tree =
      horo::GradientRay(h, start, {policy, opt.seed, opt.margin, opt.budget_leaves});
  const std::vector<horo::GradientPath> paths = tree.paths(h);
  if (run.wants("dot")) run.write("tree.dot", TreeDot(h, tree));
  Json report = {{"leaves", tree.leaves.size()},
                 {"truncated", tree.truncated},
                 {"stalled_inside_margin", tree.stalled_inside_margin}};
  if (run.wants("csv")) {
    std::ostringstream os;
    os << "path,t,normal_form,h\n";
    for (std::size_t i = 0; i < paths.size(); ++i) {
      for (int t = 0; t <= paths[i].length(); ++t) {
        os << i << ',' << t << ',' << group.format(ball->element(paths[i][t])) << ',' << h[paths[i][t]] << '\n';
      }
    }
    run.write("paths.csv", os.str());
  }
  if (!opt.start2.empty()) {
    run.param("start2", opt.start2);
    const int start2 = ball->index_of(group.parse_element(opt.start2));
    const horo::GradientOptions first{horo::GradientPolicy::kFirst, 0, opt.margin, 1};
    const auto alpha = horo::GradientRay(h, start, first).paths(h).front();
    const auto beta = horo::GradientRay(h, start2, first).paths(h).front();
    const horo::FellowTravelProfile profile = horo::FellowTravel(h, alpha, beta);
    if (run.wants("csv")) run.write("profile.csv", ProfileCsv(profile));
    report["fellow_travel"] = ProfileJson(profile);
  }
  if (run.wants("json")) run.write_json("report.json", report);
}

void CmdMorseTest(const Options& opt, Run& run) {
  if (opt.gauges.empty()) throw horo::ConfigError("at least one --gauge p/q:eps is required");
  std::vector<Gauge> gauges;
  for (const auto& g : opt.gauges) gauges.push_back(ParseGauge(g));
  const horo::GroupSpec group = LoadGroup(opt);
  run.input("group", opt.group_path);
  run.param("radius", opt.radius);
  run.param("gauges", opt.gauges);
  const horo::BallPtr ball = BuildBall(group, opt);
  const std::vector<horo::Element> gamma = LoadGeodesic(group, opt, run);
  Json report = {{"quantity", "morse gauge lower bounds"},
                 {"geodesic", ElementList(group, gamma)},
                 {"budget", opt.budget_qg}};
  Json entries = Json::array();
  for (const Gauge& g : gauges) {
    horo::ExcursionOptions eo;
    eo.budget = opt.budget_qg;
    eo.per_pair_node_cap = opt.budget_nodes;
    const horo::GaugeEstimate est = horo::QuasigeodesicExcursion(*ball, gamma, g.lambda, g.epsilon, eo);
    entries.push_back({{"lambda", std::to_string(g.lambda.num) + "/" + std::to_string(g.lambda.den)},
                       {"epsilon", g.epsilon},
                       {"n_hat", est.n_hat},
                       {"witness",
                        {{"path", ElementList(group, est.witness.path)},
                         {"excursion", est.witness.excursion},
                         {"family", est.witness.family}}},
                       {"scope", est.scope},
                       {"partial", est.partial},
                       {"paths_examined", est.paths_examined}});
  }
  report["gauges"] = entries;
  if (!opt.triangle.empty()) {
    std::vector<int> corners;
    std::stringstream ss(opt.triangle);
    std::string item;
    while (std::getline(ss, item, ';')) corners.push_back(ball->index_of(group.parse_element(item)));
    if (corners.size() != 3) throw horo::ConfigError("--triangle needs three normal forms separated by ';'");
    const auto [x, y, z] = std::tuple(corners[0], corners[1], corners[2]);
    const horo::ConvexityDefect cd = horo::ConvexityDefectOf(*ball, x, y, z, 1, 2);
    report["triangle"] = {
        {"corners", ElementList(*ball, corners)},
        {"slim_condition_1", horo::SlimConstant(*ball, x, y, z, horo::SlimCondition::kOne)},
        {"slim_condition_2", horo::SlimConstant(*ball, x, y, z, horo::SlimCondition::kTwo)},
        {"slim_condition_1_worst_sides", horo::WorstSlimConstant(*ball, x, y, z)},
        {"convexity_defect_half",
         {{"defect", cd.defect}, {"bound", cd.bound}, {"within_bound", cd.within_bound}, {"denominator", 2}}}};
  }
  if (!opt.ray_path.empty()) {
    run.input("ray", opt.ray_path);
    const horo::ScalarField h = horo::Busemann(ball, horo::io::MakeRay(group, LoadRaySpec(opt.ray_path), opt.radius));
    const horo::KConvexity k = horo::KConvexityOverBall(h, opt.budget_geodesics);
    report["k_convexity"] = {{"k_hat", k.k_hat},
                             {"segments", k.segments},
                             {"witness", ElementList(*ball, k.segment)},
                             {"position", k.position}};
  }
  run.write_json("report.json", report);
}

void CmdContractionTest(const Options& opt, Run& run) {
  if (opt.radii.empty()) throw horo::ConfigError("--radii is required");
  const horo::GroupSpec group = LoadGroup(opt);
  run.input("group", opt.group_path);
  run.param("radii", opt.radii);
  const std::vector<horo::Element> gamma = LoadGeodesic(group, opt, run);
  const horo::ContractionProfile all =
      horo::ContractionProfileOf(group, gamma, horo::CandidateSampleBalls(group, gamma, opt.radii));
  const horo::ContractionProfile worst = horo::WorstCaseContraction(group, gamma, opt.radii);
  if (run.wants("csv")) {
    std::ostringstream os;
    os << "radius,center,distance_to_path,diameter\n";
    for (const auto& s : all.samples) {
      os << s.radius << ',' << group.format(s.center) << ',' << s.distance_to_path << ',' << s.diameter << '\n';
    }
    run.write("profile.csv", os.str());
  }
  if (run.wants("json")) {
    Json by_radius = Json::array();
    for (const auto& [r, d] : worst.max_by_radius) by_radius.push_back({{"radius", r}, {"max_diameter", d}});
    Json witnesses = Json::array();
    for (const auto& s : worst.samples) {
      witnesses.push_back({{"radius", s.radius},
                           {"center", group.format(s.center)},
                           {"distance_to_path", s.distance_to_path},
                           {"diameter", s.diameter}});
    }
    run.write_json("report.json", {{"quantity", "projection diameters of disjoint balls"},
                                   {"geodesic", ElementList(group, gamma)},
                                   {"samples", all.samples.size()},
                                   {"d_hat", worst.d_hat},
                                   {"max_by_radius", by_radius},
                                   {"witnesses", witnesses},
                                   {"growing", worst.growing},
                                   {"strictly_growing", worst.strictly_growing}});
  }
}

void CmdDerivative(const Options& opt, Run& run) {
  const horo::GroupSpec group = LoadGroup(opt);
  run.input("group", opt.group_path);
  run.param("radius", opt.radius);
  const horo::BallPtr ball = BuildBall(group, opt);
  const horo::ScalarField h = LoadField(group, ball, opt, run);
  const horo::DerivativeField sigma = horo::Derivative(h);
  const horo::Alphabet alphabet(group);
  std::map<std::uint64_t, std::int64_t> used;
  for (int v = 0; v < ball->size(); ++v) {
    const horo::Symbol s = sigma.symbol(v);
    if (alphabet.contains(s)) ++used[alphabet.index(s)];
  }
  Json letters = Json::array();
  for (const auto& [idx, count] : used) {
    letters.push_back({{"index", idx}, {"letter", alphabet.format(alphabet.letter(idx))}, {"vertices", count}});
  }
  if (run.wants("csv")) {
    run.write("derivative.csv", DerivativeCsv(sigma));
    run.write("field.csv", FieldCsv(h));
  }
  if (run.wants("json")) {
    run.write_json("report.json", {{"alphabet_size", alphabet.size()},
                                   {"interior_letters", letters},
                                   {"loop_check", LoopJson(*ball, horo::LoopCheck(sigma))}});
  }
}

horo::DerivativeField LoadDerivative(horo::BallPtr ball, const Options& opt, Run& run) {
  run.input("derivative", opt.derivative_path);
  std::ifstream in(opt.derivative_path);
  if (!in) throw horo::ConfigError("cannot open " + opt.derivative_path);
  return horo::io::ReadDerivativeCsv(ball, in);
}

void CmdIntegrate(const Options& opt, Run& run) {
  if (opt.derivative_path.empty()) throw horo::ConfigError("--derivative is required");
  const horo::GroupSpec group = LoadGroup(opt);
  run.input("group", opt.group_path);
  run.param("radius", opt.radius);
  run.param("base", opt.base);
  run.param("base_value", opt.base_value);
  const horo::BallPtr ball = BuildBall(group, opt);
  const horo::DerivativeField sigma = LoadDerivative(ball, opt, run);
  const int base = ball->index_of(group.parse_element(opt.base));
  const horo::ScalarField h = horo::Integrate(sigma, base, opt.base_value);
  const horo::OverlapComparison round_trip = horo::CompareOnOverlap(horo::Derivative(h), sigma);
  if (run.wants("csv")) run.write("field.csv", FieldCsv(h));
  if (run.wants("json")) {
    run.write_json("report.json", {{"round_trip_equal", round_trip.equal}, {"compared", round_trip.compared}});
  }
}

void CmdShiftCheck(const Options& opt, Run& run) {
  const horo::GroupSpec group = LoadGroup(opt);
  run.input("group", opt.group_path);
  run.param("radius", opt.radius);
  run.param("shift", opt.shift);
  const horo::BallPtr ball = BuildBall(group, opt);
  std::optional<horo::ScalarField> h;
  horo::DerivativeField sigma = opt.derivative_path.empty()
                                    ? horo::Derivative(*(h = LoadField(group, ball, opt, run)))
                                    : LoadDerivative(ball, opt, run);
  const horo::Element g = group.parse_element(opt.shift);
  Json report = Json::object();
  const horo::Configuration shifted = horo::ShiftAct(g, sigma);
  if (run.wants("csv")) run.write("shifted.csv", DerivativeCsv(shifted));
  if (h) {
    const horo::OverlapComparison eq =
        horo::CompareOnOverlap(horo::Derivative(horo::Translate(*h, g)), shifted);
    report["equivariance"] = {{"equal", eq.equal}, {"compared", eq.compared}};
  }
  const horo::OverlapComparison law = horo::CompareOnOverlap(
      horo::ShiftAct(group.inverse(g), shifted), horo::ShiftAct(group.identity(), sigma));
  report["action_law_inverse"] = {{"equal", law.equal}, {"compared", law.compared}};
  if (!opt.patterns_path.empty()) {
    run.input("patterns", opt.patterns_path);
    const horo::ForbiddenSet forbidden = horo::io::ForbiddenSetFromJson(
        group, Json::parse(horo::io::ReadFile(opt.patterns_path)), sigma.width());
    const horo::ScanReport scan = horo::ForbiddenScan(sigma, forbidden);
    Json matches = Json::array();
    for (const auto& m : scan.matches) {
      matches.push_back({{"g", group.format(m.g)}, {"anchor", group.format(ball->element(m.anchor))}, {"pattern", m.pattern}});
    }
    report["forbidden_scan"] = {{"matches", matches},
                                {"positions_tested", scan.positions_tested},
                                {"positions_skipped", scan.positions_skipped}};
  }
  if (run.wants("json")) run.write_json("report.json", report);
}

Json ConvergenceJson(const horo::Ball& ball, const horo::ConvergenceReport& r) {
  Json rows = Json::array();
  for (const auto& row : r.rows) {
    rows.push_back({{"n", row.n},
                    {"sphere_size", row.sphere_size},
                    {"m", row.depth},
                    {"argmin", row.argmin < 0 ? Json(nullptr) : Json(ball.group().format(ball.element(row.argmin)))},
                    {"witness", row.witness}});
  }
  return {{"verdict", r.convergent_evidence ? "convergent-evidence" : "divergence-witness"},
          {"slack", r.slack},
          {"rows", rows},
          {"witness_sequence", ElementList(ball, r.witness_sequence)}};
}

std::string ConvergenceCsv(const horo::ConvergenceReport& r) {
  std::ostringstream os;
  os << "n,sphere_size,m,verdict\n";
  for (const auto& row : r.rows) {
    os << row.n << ',' << row.sphere_size << ',' << row.depth << ',' << (row.witness ? "witness" : "ok") << '\n';
  }
  return os.str();
}

std::string HorosphereDot(const horo::ScalarField& h, const horo::RayWalk& ray, int horizon) {
  const horo::Ball& ball = h.ball();
  std::ostringstream os;
  os << "graph horospheres {\n";
  for (int v = 0; v < ball.size(); ++v) {
    std::string cls = "other";
    for (int t = 0; t <= ball.radius() && (ray.periodic() || t <= ray.horizon()); ++t) {
      if (ray.at(t) == ball.element(v)) cls = "ray";
    }
    if (cls == "other" && h.defined(v) && h[v] <= 0 && -h[v] <= horizon) cls = "horosphere";
    os << "  v" << v << " [label=\"" << ball.group().format(ball.element(v)) << "\", class=\"" << cls
       << "\", color=\"" << (cls == "ray" ? "red" : cls == "horosphere" ? "blue" : "gray") << "\"];\n";
  }
  for (int v = 0; v < ball.size(); ++v) {
    for (horo::Letter s = 0; s < ball.num_letters(); s += 2) {
      const int w = ball.neighbor(v, s);
      if (w >= 0) os << "  v" << v << " -- v" << w << ";\n";
    }
  }
  os << "}\n";
  return os.str();
}

void CmdHorosphere(const Options& opt, Run& run) {
  if (opt.ray_path.empty()) throw horo::ConfigError("--ray is required");
  const horo::GroupSpec group = LoadGroup(opt);
  run.input("group", opt.group_path);
  run.input("ray", opt.ray_path);
  run.param("radius", opt.radius);
  const int horizon = opt.horizon < 0 ? opt.radius : opt.horizon;
  run.param("horizon", horizon);
  const horo::BallPtr ball = BuildBall(group, opt);
  const horo::RayWalk ray = horo::io::MakeRay(group, LoadRaySpec(opt.ray_path), opt.radius);
  const horo::ScalarField h = horo::Busemann(ball, ray);
  const horo::ConvergenceReport conv = horo::ConvergenceWitness(h, ray, horizon);
  if (run.wants("csv")) run.write("horospheres.csv", ConvergenceCsv(conv));
  if (run.wants("dot")) run.write("overlay.dot", HorosphereDot(h, ray, horizon));
  Json report = {{"convergence", ConvergenceJson(*ball, conv)}};
  const horo::HoroballConvexityReport convex = horo::HoroballConvexity(h, std::max(horizon / 2, 1));
  report["horoball_convexity"] = {{"r", std::max(horizon / 2, 1)},
                                  {"pass", convex.pass},
                                  {"pairs_checked", convex.pairs_checked},
                                  {"pairs_skipped", convex.pairs_skipped},
                                  {"findings", convex.findings.size()}};
  if (!opt.other_ray_path.empty()) {
    run.input("other_ray", opt.other_ray_path);
    const horo::RayWalk other = horo::io::MakeRay(group, LoadRaySpec(opt.other_ray_path), opt.radius);
    const horo::DivergenceReport div = horo::DivergenceAlongOtherRay(h, ray, other);
    const horo::ScalarField h2 = horo::Busemann(ball, other);
    const horo::SumBound sum = horo::SumBoundOf(h, h2);
    std::vector<int> radii;
    for (int r = std::max(1, opt.radius / 2); r <= opt.radius; ++r) radii.push_back(r);
    const horo::IntersectionReport inter = horo::HoroballIntersection(group, ray, other, 1, 1, radii);
    Json rows = Json::array();
    for (const auto& row : inter.rows) {
      rows.push_back({{"radius", row.radius}, {"size", row.size}, {"diameter", row.diameter}, {"sum_min", row.sum_min}});
    }
    report["other_ray"] = {{"divergence", {{"values", div.values}, {"divergence_evidence", div.divergence_evidence}}},
                           {"sum_bound", {{"min", sum.min}, {"minimizers", ElementList(*ball, sum.minimizers)}}},
                           {"intersection", {{"rows", rows}, {"bounded_evidence", inter.bounded_evidence}}}};
  }
  if (run.wants("json")) run.write_json("report.json", report);
}

// -------------------------------------------------------------------- figures

std::int64_t Coordinate(const horo::GroupSpec& group, const horo::Element& e, int generator) {
  std::int64_t x = 0;
  for (horo::Letter s : group.normal_word(e)) {
    if (horo::GeneratorOf(s) == generator) x += horo::IsInverseLetter(s) ? -1 : 1;
  }
  return x;
}

std::vector<int> WalkVertices(const horo::Ball& ball, const std::string& word) {
  std::vector<int> path{ball.index_of(ball.center())};
  for (horo::Letter s : ball.group().parse_word(word)) path.push_back(ball.neighbor(path.back(), s));
  return path;
}

void Figure2(Run& run) {
  const horo::GroupSpec z2 = horo::fixtures::Z2();
  const horo::BallPtr ball = horo::Ball::Build(z2, z2.identity(), 6);
  std::vector<std::int64_t> values;
  for (int v = 0; v < ball->size(); ++v) values.push_back(-Coordinate(z2, ball->element(v), 0));
  const horo::ScalarField h(ball, values, horo::Provenance::kSynthetic);
  const horo::DerivativeField sigma = horo::Derivative(h);
  const horo::Symbol expected{-1, 1, 0, 0};
  bool constant = true;
  for (int v = 0; v < ball->size(); ++v) {
    for (horo::Letter s = 0; s < 4; ++s) {
      if (sigma.present(v, s) && sigma.at(v, s) != expected[static_cast<std::size_t>(s)]) constant = false;
    }
  }
  run.write("fig2/field.csv", FieldCsv(h));
  run.write("fig2/derivative.csv", DerivativeCsv(sigma));
  run.write_json("fig2/report.json", {{"field", "h(x,y) = -x on the Z^2 ball of radius 6"},
                                      {"letter", horo::Alphabet(z2).format(expected)},
                                      {"constant_letter", constant},
                                      {"loop_check", horo::LoopCheck(sigma).pass}});
}

void Figure4(Run& run, std::uint64_t seed) {
  const horo::GroupSpec z2 = horo::fixtures::Z2();
  const horo::BallPtr ball = horo::Ball::Build(z2, z2.identity(), 10);
  const horo::RayWalk staircase =
      horo::fixtures::Ray(z2, "a a", "b b b b b b a a a a a a", ball->radius());
  const horo::ScalarField h = horo::Busemann(ball, staircase);
  bool closed_form = true;
  for (int v = 0; v < ball->size(); ++v) {
    if (h[v] != -(Coordinate(z2, ball->element(v), 0) + Coordinate(z2, ball->element(v), 1))) closed_form = false;
  }
  const horo::GradientPath alpha(h, WalkVertices(*ball, "a a b b b b b b b b"));
  const horo::GradientPath beta(h, WalkVertices(*ball, "b b a a a a a a a a"));
  const horo::FellowTravelProfile profile = horo::FellowTravel(h, alpha, beta);
  // The rays as drawn turn once more at t = 8 and meet again at (6, 6).
  const horo::GradientPath drawn_alpha(h, WalkVertices(*ball, "a a b b b b b b a a"));
  const horo::GradientPath drawn_beta(h, WalkVertices(*ball, "b b a a a a a a b b"));
  const horo::FellowTravelProfile drawn = horo::FellowTravel(h, drawn_alpha, drawn_beta);
  const horo::GradientTree random =
      horo::GradientRay(h, ball->index_of(z2.identity()), {horo::GradientPolicy::kRandom, seed, 0, 1});
  std::ostringstream rc;
  rc << "t,normal_form\n";
  const auto rpath = random.path_to(random.leaves.front());
  for (std::size_t t = 0; t < rpath.size(); ++t) rc << t << ',' << z2.format(ball->element(rpath[t])) << '\n';
  run.write("fig4/profile.csv", ProfileCsv(profile));
  run.write("fig4/drawn_profile.csv", ProfileCsv(drawn));
  run.write("fig4/random_gradient_ray.csv", rc.str());
  run.write_json("fig4/report.json",
                 {{"field", "Busemann function of the staircase a a (b^6 a^6)^inf on the Z^2 ball of radius 10"},
                  {"equals_minus_x_minus_y", closed_form},
                  {"alpha", ElementList(*ball, alpha.vertices())},
                  {"beta", ElementList(*ball, beta.vertices())},
                  {"alpha_is_gradient", horo::IsGradientArc(h, alpha.vertices())},
                  {"beta_is_gradient", horo::IsGradientArc(h, beta.vertices())},
                  {"profile", ProfileJson(profile)},
                  {"drawn_rays",
                   {{"alpha", ElementList(*ball, drawn_alpha.vertices())},
                    {"beta", ElementList(*ball, drawn_beta.vertices())},
                    {"profile", ProfileJson(drawn)}}},
                  {"seed", seed}});
}

void Figure7(Run& run) {
  const horo::GroupSpec z2 = horo::fixtures::Z2();
  const horo::BallPtr ball = horo::Ball::Build(z2, z2.identity(), 10);
  const horo::RayWalk axis = horo::fixtures::Ray(z2, "", "a", ball->radius());
  const horo::ScalarField h = horo::Busemann(ball, axis);
  const horo::ConvergenceReport conv = horo::ConvergenceWitness(h, axis, 6);
  run.write("fig7/horospheres.csv", ConvergenceCsv(conv));
  run.write("fig7/overlay.dot", HorosphereDot(h, axis, 6));
  run.write_json("fig7/report.json", {{"field", "Busemann function of a^inf on the Z^2 ball of radius 10"},
                                      {"convergence", ConvergenceJson(*ball, conv)}});
}

void Figure8(Run& run) {
  const horo::GroupSpec f2 = horo::fixtures::F2();
  const horo::BallPtr ball = horo::Ball::Build(f2, f2.identity(), 8);
  const horo::RayWalk ray = horo::fixtures::Ray(f2, "", "a", ball->radius());
  const horo::ScalarField h = horo::Busemann(ball, ray);
  const horo::ConvergenceReport conv = horo::ConvergenceWitness(h, ray, 6);
  run.write("fig8/horospheres.csv", ConvergenceCsv(conv));
  run.write("fig8/overlay.dot", HorosphereDot(h, ray, 6));
  run.write_json("fig8/report.json", {{"field", "Busemann function of a^inf on the F_2 ball of radius 8"},
                                      {"convergence", ConvergenceJson(*ball, conv)}});

  // Convergent horospheres without the Morse property.
  const horo::GroupSpec g = horo::fixtures::Z2StarZ();
  const horo::BallPtr gb = horo::Ball::Build(g, g.identity(), 6);
  const horo::RayWalk zeta = horo::fixtures::IncreasingPowersRay(g, 40);
  const horo::ScalarField hz = horo::Busemann(gb, zeta);
  const horo::ConvergenceReport zc = horo::ConvergenceWitness(hz, zeta, 6);
  std::vector<horo::Element> gamma;
  for (int t = 0; t <= 27; ++t) gamma.push_back(zeta.at(t));
  const horo::ContractionProfile prof = horo::WorstCaseContraction(g, gamma, {1, 2, 3});
  Json by_radius = Json::array();
  for (const auto& [r, d] : prof.max_by_radius) by_radius.push_back({{"radius", r}, {"max_diameter", d}});
  run.write("fig8/false_converse_horospheres.csv", ConvergenceCsv(zc));
  run.write_json("fig8/false_converse.json",
                 {{"ray", horo::fixtures::IncreasingPowersWord(40)},
                  {"convergence", ConvergenceJson(*gb, zc)},
                  {"contraction", {{"max_by_radius", by_radius}, {"strictly_growing", prof.strictly_growing}}}});
}

void CmdFigures(const Options& opt, Run& run) {
  run.param("seed", opt.seed);
  Figure2(run);
  Figure4(run, opt.seed);
  Figure7(run);
  Figure8(run);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"horo: Busemann functions, gradient rays and shift-space coding on Cayley balls"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);
  Options opt;

  const auto common = [&](CLI::App* sub) {
    sub->add_option("--out", opt.out, "output directory");
    sub->add_option("--format", opt.format, "write only one artifact kind")
        ->check(CLI::IsMember({"json", "csv", "dot"}));
    sub->add_option("--seed", opt.seed, "seed for randomized policies");
    sub->add_option("--budget-vertices", opt.budget_vertices, "largest ball to materialize");
  };
  const auto group = [&](CLI::App* sub) { sub->add_option("--group", opt.group_path, "group spec JSON")->required(); };
  const auto radius = [&](CLI::App* sub) { sub->add_option("--radius", opt.radius, "ball radius")->required(); };
  const auto field = [&](CLI::App* sub) {
    sub->add_option("--ray", opt.ray_path, "ray spec JSON");
    sub->add_option("--field", opt.field_path, "field CSV");
  };

  std::map<std::string, void (*)(const Options&, Run&)> handlers;
  const auto add = [&](const std::string& name, const std::string& help, void (*fn)(const Options&, Run&)) {
    CLI::App* sub = app.add_subcommand(name, help);
    common(sub);
    handlers[name] = fn;
    return sub;
  };

  auto* ball = add("ball", "build a Cayley ball; DOT, distance CSV, summary", CmdBall);
  group(ball);
  radius(ball);

  auto* busemann = add("busemann", "Busemann field of a ray with Lipschitz and distance-like checks", CmdBusemann);
  group(busemann);
  radius(busemann);
  busemann->add_option("--ray", opt.ray_path, "ray spec JSON")->required();
  busemann->add_option("--margin", opt.margin, "distance-like margin");

  auto* gradient = add("gradient", "gradient rays and fellow-travel profiles", CmdGradient);
  group(gradient);
  radius(gradient);
  field(gradient);
  gradient->add_option("--margin", opt.margin);
  gradient->add_option("--start", opt.start, "start vertex (normal form)");
  gradient->add_option("--start2", opt.start2, "second start for a fellow-travel profile");
  gradient->add_option("--policy", opt.policy)->check(CLI::IsMember({"first", "all", "random"}));
  gradient->add_option("--budget-leaves", opt.budget_leaves);

  auto* morse = add("morse-test", "quasi-geodesic excursions, slim constants, K-convexity", CmdMorseTest);
  group(morse);
  radius(morse);
  morse->add_option("--geodesic", opt.geodesic, "geodesic word from the identity");
  morse->add_option("--ray", opt.ray_path, "ray spec JSON (geodesic prefix with --length, K-convexity field)");
  morse->add_option("--length", opt.length);
  morse->add_option("--gauge", opt.gauges, "lambda:epsilon as p/q:eps (repeatable)");
  morse->add_option("--triangle", opt.triangle, "x;y;z normal forms");
  morse->add_option("--budget-qg", opt.budget_qg, "endpoint distance budget");
  morse->add_option("--budget-nodes", opt.budget_nodes, "DFS nodes per endpoint pair");
  morse->add_option("--budget-geodesics", opt.budget_geodesics, "geodesics per pair");

  auto* contraction = add("contraction-test", "projection diameters of disjoint balls", CmdContractionTest);
  group(contraction);
  contraction->add_option("--geodesic", opt.geodesic, "geodesic word from the identity");
  contraction->add_option("--ray", opt.ray_path);
  contraction->add_option("--length", opt.length);
  contraction->add_option("--radii", opt.radii, "sample ball radii")->delimiter(',');

  auto* derivative = add("derivative", "symbolic derivative of a field", CmdDerivative);
  group(derivative);
  radius(derivative);
  field(derivative);

  auto* integrate = add("integrate", "integrate a derivative CSV", CmdIntegrate);
  group(integrate);
  radius(integrate);
  integrate->add_option("--derivative", opt.derivative_path)->required();
  integrate->add_option("--base", opt.base);
  integrate->add_option("--base-value", opt.base_value);

  auto* shift = add("shift-check", "shift action, equivariance and forbidden-pattern scan", CmdShiftCheck);
  group(shift);
  radius(shift);
  field(shift);
  shift->add_option("--derivative", opt.derivative_path);
  shift->add_option("--shift", opt.shift, "group element g (normal form)")->required();
  shift->add_option("--patterns", opt.patterns_path, "forbidden set JSON");

  auto* horosphere = add("horosphere", "horosphere convergence, horoball experiments", CmdHorosphere);
  group(horosphere);
  radius(horosphere);
  horosphere->add_option("--ray", opt.ray_path)->required();
  horosphere->add_option("--other-ray", opt.other_ray_path);
  horosphere->add_option("--horizon", opt.horizon);

  add("figures", "reproduce the figure fixtures", CmdFigures);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : horo::ExitCode(horo::ErrorKind::kConfig);
  }

  CLI::App* chosen = app.get_subcommands().front();
  opt.seed_given = chosen->count("--seed") > 0;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    Run run(chosen->get_name(), opt);
    handlers.at(chosen->get_name())(opt, run);
    run.finish(std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count());
  } catch (const horo::Error& e) {
    std::cerr << "horo: " << e.what() << '\n';
    if (e.kind() == horo::ErrorKind::kInvariant) {
      std::ofstream dump(fs::path(opt.out) / "diagnostic.txt");
      dump << "invariant breach in " << chosen->get_name() << "\n" << e.what() << "\nargs:";
      for (int i = 0; i < argc; ++i) dump << ' ' << argv[i];
      dump << '\n';
    }
    return horo::ExitCode(e.kind());
  } catch (const Json::exception& e) {
    std::cerr << "horo: " << e.what() << '\n';
    return horo::ExitCode(horo::ErrorKind::kConfig);
  } catch (const fs::filesystem_error& e) {
    std::cerr << "horo: " << e.what() << '\n';
    return horo::ExitCode(horo::ErrorKind::kConfig);
  }
  return 0;
}
