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

#include "horo/group.hpp"

#include <algorithm>
#include <cstdlib>
#include <set>
#include <sstream>

#include "horo/error.hpp"

namespace horo {
namespace {

std::uint64_t Mix(std::uint64_t h, std::uint64_t v) {
  h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  return h;
}

bool IsTrivial(const Syllable& s) {
  return std::all_of(s.data.begin(), s.data.end(), [](int x) { return x == 0; });
}

}  // namespace

std::size_t Element::hash() const {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const Syllable& s : syllables_) {
    h = Mix(h, static_cast<std::uint64_t>(s.factor) + 1);
    for (int x : s.data) h = Mix(h, static_cast<std::uint64_t>(static_cast<std::int64_t>(x)));
  }
  return static_cast<std::size_t>(h);
}

GroupSpec::GroupSpec(std::vector<FactorSpec> factors) : factors_(std::move(factors)) {
  if (factors_.empty()) throw ConfigError("group needs at least one factor");
  std::set<std::string> seen;
  std::uint64_t tag = 0x84222325cbf29ce4ULL;
  for (std::size_t f = 0; f < factors_.size(); ++f) {
    const FactorSpec& factor = factors_[f];
    if (factor.generator_names.empty()) {
      throw ConfigError("factor " + std::to_string(f) + " has no generators");
    }
    tag = Mix(tag, factor.kind == FactorKind::kFree ? 17 : 29);
    tag = Mix(tag, factor.generator_names.size());
    for (std::size_t i = 0; i < factor.generator_names.size(); ++i) {
      const std::string& name = factor.generator_names[i];
      if (name.empty() || name == "1" ||
          name.find_first_of(" \t\n'") != std::string::npos) {
        throw ConfigError("invalid generator name '" + name + "'");
      }
      if (!seen.insert(name).second) {
        throw ConfigError("duplicate generator name '" + name + "'");
      }
      names_.push_back(name);
      generator_factor_.push_back(static_cast<int>(f));
      generator_local_.push_back(static_cast<int>(i));
    }
  }
  tag_ = tag == 0 ? 1 : tag;
}

std::string GroupSpec::letter_name(Letter s) const {
  std::string name = names_.at(GeneratorOf(s));
  if (IsInverseLetter(s)) name += '\'';
  return name;
}

std::vector<std::pair<Letter, Letter>> GroupSpec::commuting_pairs() const {
  std::vector<std::pair<Letter, Letter>> pairs;
  for (int g = 0; g < num_generators(); ++g) {
    for (int k = g + 1; k < num_generators(); ++k) {
      if (generator_factor_[g] == generator_factor_[k] &&
          factors_[generator_factor_[g]].kind == FactorKind::kFreeAbelian) {
        pairs.emplace_back(2 * g, 2 * k);
      }
    }
  }
  return pairs;
}

Element GroupSpec::make(std::vector<Syllable> syllables) const {
  Element e;
  e.tag_ = tag_;
  e.syllables_ = std::move(syllables);
  return e;
}

Element GroupSpec::identity() const { return make({}); }

Element GroupSpec::generator(Letter s) const {
  if (s < 0 || s >= num_letters()) {
    throw PreconditionError("letter " + std::to_string(s) + " out of range");
  }
  const int g = GeneratorOf(s);
  const int f = generator_factor_[g];
  const int local = generator_local_[g];
  Syllable syl;
  syl.factor = f;
  if (factors_[f].kind == FactorKind::kFreeAbelian) {
    syl.data.assign(factors_[f].generator_names.size(), 0);
    syl.data[local] = IsInverseLetter(s) ? -1 : 1;
  } else {
    syl.data.push_back(2 * local + (IsInverseLetter(s) ? 1 : 0));
  }
  return make({std::move(syl)});
}

void GroupSpec::push_syllable(std::vector<Syllable>& out, Syllable s) const {
  if (out.empty() || out.back().factor != s.factor) {
    out.push_back(std::move(s));
    return;
  }
  Syllable& back = out.back();
  if (factors_[s.factor].kind == FactorKind::kFreeAbelian) {
    for (std::size_t i = 0; i < back.data.size(); ++i) back.data[i] += s.data[i];
  } else {
    std::size_t j = 0;
    while (!back.data.empty() && j < s.data.size() &&
           back.data.back() == (s.data[j] ^ 1)) {
      back.data.pop_back();
      ++j;
    }
    back.data.insert(back.data.end(), s.data.begin() + static_cast<std::ptrdiff_t>(j),
                     s.data.end());
  }
  const bool trivial = factors_[s.factor].kind == FactorKind::kFreeAbelian
                           ? IsTrivial(back)
                           : back.data.empty();
  if (trivial) out.pop_back();
}

Element GroupSpec::multiply(const Element& a, const Element& b) const {
  check(a);
  check(b);
  std::vector<Syllable> out = a.syllables_;
  for (const Syllable& s : b.syllables_) push_syllable(out, s);
  return make(std::move(out));
}

Element GroupSpec::multiply_letter(const Element& a, Letter s) const {
  check(a);
  std::vector<Syllable> out = a.syllables_;
  push_syllable(out, generator(s).syllables_.front());
  return make(std::move(out));
}

Syllable GroupSpec::invert_syllable(const Syllable& s) const {
  Syllable inv;
  inv.factor = s.factor;
  if (factors_[s.factor].kind == FactorKind::kFreeAbelian) {
    inv.data.reserve(s.data.size());
    for (int x : s.data) inv.data.push_back(-x);
  } else {
    inv.data.assign(s.data.rbegin(), s.data.rend());
    for (int& x : inv.data) x ^= 1;
  }
  return inv;
}

Element GroupSpec::inverse(const Element& a) const {
  check(a);
  std::vector<Syllable> out;
  out.reserve(a.syllables_.size());
  for (auto it = a.syllables_.rbegin(); it != a.syllables_.rend(); ++it) {
    out.push_back(invert_syllable(*it));
  }
  return make(std::move(out));
}

Element GroupSpec::evaluate(std::span<const Letter> word) const {
  std::vector<Syllable> out;
  for (Letter s : word) push_syllable(out, generator(s).syllables_.front());
  return make(std::move(out));
}

std::int64_t GroupSpec::length(const Element& a) const {
  check(a);
  std::int64_t total = 0;
  for (const Syllable& s : a.syllables_) {
    if (factors_[s.factor].kind == FactorKind::kFreeAbelian) {
      for (int x : s.data) total += std::abs(x);
    } else {
      total += static_cast<std::int64_t>(s.data.size());
    }
  }
  return total;
}

std::int64_t GroupSpec::distance(const Element& a, const Element& b) const {
  check(a);
  check(b);
  // Skip the common syllable prefix; only the tail of a^-1 b needs reducing.
  std::size_t k = 0;
  const auto& sa = a.syllables_;
  const auto& sb = b.syllables_;
  while (k < sa.size() && k < sb.size() && sa[k] == sb[k]) ++k;
  std::vector<Syllable> out;
  for (std::size_t i = sa.size(); i > k; --i) push_syllable(out, invert_syllable(sa[i - 1]));
  for (std::size_t i = k; i < sb.size(); ++i) push_syllable(out, sb[i]);
  return length(make(std::move(out)));
}

std::vector<Letter> GroupSpec::normal_word(const Element& a) const {
  check(a);
  std::vector<Letter> word;
  for (const Syllable& s : a.syllables_) {
    const int base = [&] {
      int g = 0;
      while (generator_factor_[g] != s.factor) ++g;
      return g;
    }();
    if (factors_[s.factor].kind == FactorKind::kFreeAbelian) {
      for (std::size_t i = 0; i < s.data.size(); ++i) {
        const Letter letter = 2 * (base + static_cast<int>(i)) + (s.data[i] < 0 ? 1 : 0);
        for (int r = 0; r < std::abs(s.data[i]); ++r) word.push_back(letter);
      }
    } else {
      for (int local : s.data) word.push_back(2 * base + local);
    }
  }
  return word;
}

std::vector<Letter> GroupSpec::parse_word(std::string_view text) const {
  std::vector<Letter> word;
  std::istringstream in{std::string(text)};
  std::string token;
  while (in >> token) {
    if (token == "1") continue;
    bool inv = false;
    if (token.back() == '\'') {
      inv = true;
      token.pop_back();
    }
    auto it = std::find(names_.begin(), names_.end(), token);
    if (it == names_.end()) throw ConfigError("unknown generator '" + token + "'");
    word.push_back(2 * static_cast<int>(it - names_.begin()) + (inv ? 1 : 0));
  }
  return word;
}

std::string GroupSpec::format_word(std::span<const Letter> word) const {
  if (word.empty()) return "1";
  std::string out;
  for (Letter s : word) {
    if (!out.empty()) out += ' ';
    out += letter_name(s);
  }
  return out;
}

std::string GroupSpec::format(const Element& a) const { return format_word(normal_word(a)); }

Element GroupSpec::parse_element(std::string_view text) const {
  return evaluate(parse_word(text));
}

void GroupSpec::check(const Element& a) const {
  if (a.tag_ != tag_) throw PreconditionError("element belongs to a different group");
}

RayWalk::RayWalk(const GroupSpec& group, std::vector<Letter> prefix,
                 std::vector<Letter> period, int horizon)
    : group_(group), prefix_(std::move(prefix)), period_(std::move(period)) {
  if (horizon < 0) throw ConfigError("ray horizon must be nonnegative");
  if (period_.empty() && static_cast<std::size_t>(horizon) > prefix_.size()) {
    horizon = static_cast<int>(prefix_.size());
  }
  points_.reserve(static_cast<std::size_t>(horizon) + 1);
  points_.push_back(group_.identity());
  for (int t = 1; t <= horizon; ++t) {
    points_.push_back(group_.multiply_letter(points_.back(), letter(t - 1)));
    if (group_.length(points_.back()) != t) {
      throw ConfigError("ray is not geodesic: |c(" + std::to_string(t) + ")| = " +
                        std::to_string(group_.length(points_.back())));
    }
  }
}

Letter RayWalk::letter(std::int64_t t) const {
  if (t < static_cast<std::int64_t>(prefix_.size())) return prefix_[static_cast<std::size_t>(t)];
  if (period_.empty()) {
    throw PreconditionError("finite ray has no letter at position " + std::to_string(t));
  }
  const std::int64_t k = (t - static_cast<std::int64_t>(prefix_.size())) %
                         static_cast<std::int64_t>(period_.size());
  return period_[static_cast<std::size_t>(k)];
}

Element RayWalk::at(std::int64_t t) const {
  if (t < 0) throw PreconditionError("ray parameter must be nonnegative");
  if (t <= horizon()) return points_[static_cast<std::size_t>(t)];
  Element e = points_.back();
  for (std::int64_t s = horizon(); s < t; ++s) e = group_.multiply_letter(e, letter(s));
  return e;
}

}  // namespace horo
