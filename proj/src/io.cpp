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

#include "horo/io.hpp"

#include <fstream>
#include <sstream>
#include <unordered_set>

#include "horo/error.hpp"

namespace horo::io {
namespace {

std::vector<std::string> SplitCsvLine(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream is(line);
  while (std::getline(is, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

std::int64_t ParseInt(const std::string& text, const std::string& what) {
  try {
    std::size_t used = 0;
    const long long v = std::stoll(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("bad integer '" + text + "' in " + what);
  }
}

int RowVertex(const Ball& ball, const std::string& normal_form, std::vector<char>& seen) {
  Element e;
  try {
    e = ball.group().parse_element(normal_form);
  } catch (const Error& err) {
    throw ConfigError("bad normal form '" + normal_form + "': " + err.what());
  }
  const auto v = ball.find(e);
  if (!v) throw ConfigError("'" + normal_form + "' is not in the ball");
  if (seen[static_cast<std::size_t>(*v)]) throw ConfigError("'" + normal_form + "' appears twice");
  seen[static_cast<std::size_t>(*v)] = 1;
  return *v;
}

}  // namespace

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void WriteFile(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write " + path);
  out << content;
}

GroupSpec GroupFromJson(const Json& j) {
  try {
    std::vector<FactorSpec> factors;
    for (const Json& f : j.at("factors")) {
      FactorSpec spec;
      const std::string kind = f.at("kind").get<std::string>();
      if (kind == "free_abelian") {
        spec.kind = FactorKind::kFreeAbelian;
      } else if (kind == "free") {
        spec.kind = FactorKind::kFree;
      } else {
        throw ConfigError("unknown factor kind '" + kind + "'");
      }
      spec.generator_names = f.at("generator_names").get<std::vector<std::string>>();
      if (f.contains("rank") && f.at("rank").get<std::size_t>() != spec.generator_names.size()) {
        throw ConfigError("factor rank does not match its generator names");
      }
      factors.push_back(std::move(spec));
    }
    return GroupSpec(std::move(factors));
  } catch (const Json::exception& e) {
    throw ConfigError(std::string("group spec: ") + e.what());
  }
}

Json GroupToJson(const GroupSpec& group) {
  Json factors = Json::array();
  for (const FactorSpec& f : group.factors()) {
    factors.push_back({{"kind", f.kind == FactorKind::kFreeAbelian ? "free_abelian" : "free"},
                       {"rank", f.generator_names.size()},
                       {"generator_names", f.generator_names}});
  }
  return {{"factors", factors}};
}

RaySpec RaySpecFromJson(const Json& j) {
  try {
    RaySpec spec;
    spec.prefix = j.value("prefix", "");
    spec.period = j.value("period", "");
    if (spec.prefix.empty() && spec.period.empty()) throw ConfigError("ray spec is empty");
    return spec;
  } catch (const Json::exception& e) {
    throw ConfigError(std::string("ray spec: ") + e.what());
  }
}

Json RaySpecToJson(const RaySpec& spec) { return {{"prefix", spec.prefix}, {"period", spec.period}}; }

RayWalk MakeRay(const GroupSpec& group, const RaySpec& spec, int r_max) {
  std::vector<Letter> prefix = group.parse_word(spec.prefix);
  std::vector<Letter> period = group.parse_word(spec.period);
  const int horizon = period.empty() ? static_cast<int>(prefix.size())
                                     : RayWalk::DefaultHorizon(r_max, period.size());
  return RayWalk(group, std::move(prefix), std::move(period), horizon);
}

void WriteFieldCsv(const ScalarField& h, std::ostream& out) {
  const Ball& ball = h.ball();
  out << "normal_form,h_value\n";
  for (int v = 0; v < ball.size(); ++v) {
    out << ball.group().format(ball.element(v)) << ',';
    if (h.defined(v)) out << h[v];
    out << '\n';
  }
}

ScalarField ReadFieldCsv(BallPtr ball, std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != "normal_form,h_value") throw ConfigError("field CSV header missing");
  std::vector<std::int64_t> values(static_cast<std::size_t>(ball->size()), kUndefined);
  std::vector<char> seen(values.size(), 0);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto cells = SplitCsvLine(line);
    if (cells.size() != 2) throw ConfigError("field CSV row needs 2 cells: " + line);
    const int v = RowVertex(*ball, cells[0], seen);
    if (!cells[1].empty()) values[static_cast<std::size_t>(v)] = ParseInt(cells[1], "field CSV");
  }
  return ScalarField(std::move(ball), std::move(values), Provenance::kFile);
}

void WriteDerivativeCsv(const DerivativeField& sigma, std::ostream& out) {
  const Ball& ball = sigma.ball();
  out << "normal_form";
  for (Letter s = 0; s < ball.num_letters(); ++s) out << ',' << ball.group().letter_name(s);
  out << '\n';
  for (int v = 0; v < ball.size(); ++v) {
    out << ball.group().format(ball.element(v));
    for (int s = 0; s < sigma.width(); ++s) {
      out << ',';
      if (sigma.present(v, s)) out << static_cast<int>(sigma.at(v, s));
    }
    out << '\n';
  }
}

DerivativeField ReadDerivativeCsv(BallPtr ball, std::istream& in) {
  std::string line;
  std::string header = "normal_form";
  for (Letter s = 0; s < ball->num_letters(); ++s) header += "," + ball->group().letter_name(s);
  if (!std::getline(in, line) || line != header) throw ConfigError("derivative CSV header must be " + header);
  DerivativeField sigma(ball, ball->num_letters());
  std::vector<char> seen(static_cast<std::size_t>(ball->size()), 0);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto cells = SplitCsvLine(line);
    if (static_cast<int>(cells.size()) != 1 + ball->num_letters()) {
      throw ConfigError("derivative CSV row has the wrong number of cells: " + line);
    }
    const int v = RowVertex(*ball, cells[0], seen);
    for (Letter s = 0; s < ball->num_letters(); ++s) {
      const std::string& cell = cells[static_cast<std::size_t>(1 + s)];
      if (cell.empty()) continue;
      const std::int64_t x = ParseInt(cell, "derivative CSV");
      if (x < -1 || x > 1) throw ConfigError("derivative value outside {-1,0,1}: " + cell);
      sigma.set(v, s, static_cast<std::int8_t>(x));
    }
  }
  return sigma;
}

ForbiddenSet ForbiddenSetFromJson(const GroupSpec& group, const Json& j, int width) {
  try {
    std::vector<Element> support;
    for (const Json& nf : j.at("support")) support.push_back(group.parse_element(nf.get<std::string>()));
    std::vector<std::vector<Symbol>> patterns;
    for (const Json& p : j.at("patterns")) {
      std::vector<Symbol> pattern;
      for (const Json& sym : p) {
        Symbol symbol(static_cast<std::size_t>(width), kWildcard);
        if (!sym.is_null()) {
          if (!sym.is_array() || static_cast<int>(sym.size()) != width) {
            throw ConfigError("pattern symbol must be null or an array of width " + std::to_string(width));
          }
          for (int s = 0; s < width; ++s) {
            const Json& x = sym[static_cast<std::size_t>(s)];
            if (x.is_null()) continue;
            const int value = x.get<int>();
            if (value < -100 || value > 100) throw ConfigError("pattern value out of range");
            symbol[static_cast<std::size_t>(s)] = static_cast<std::int8_t>(value);
          }
        }
        pattern.push_back(std::move(symbol));
      }
      patterns.push_back(std::move(pattern));
    }
    return ForbiddenSet(std::move(support), std::move(patterns));
  } catch (const Json::exception& e) {
    throw ConfigError(std::string("pattern spec: ") + e.what());
  }
}

Json ForbiddenSetToJson(const GroupSpec& group, const ForbiddenSet& set) {
  Json support = Json::array();
  for (const Element& e : set.support()) support.push_back(group.format(e));
  Json patterns = Json::array();
  for (const auto& p : set.patterns()) {
    Json pattern = Json::array();
    for (const Symbol& symbol : p) {
      Json sym = Json::array();
      for (std::int8_t x : symbol) {
        if (x == kWildcard) {
          sym.push_back(nullptr);
        } else {
          sym.push_back(static_cast<int>(x));
        }
      }
      pattern.push_back(std::move(sym));
    }
    patterns.push_back(std::move(pattern));
  }
  return {{"support", support}, {"patterns", patterns}};
}

}  // namespace horo::io
