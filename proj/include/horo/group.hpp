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

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace horo {

enum class FactorKind { kFreeAbelian, kFree };

// One free factor of the group: Z^d with the l1 word metric, or the free
// group F_m. The rank is the number of generator names.
struct FactorSpec {
  FactorKind kind = FactorKind::kFree;
  std::vector<std::string> generator_names;
};

// A letter of the symmetric generating set. Letter 2g is generator g (in
// declaration order across factors) and 2g + 1 is its inverse.
using Letter = int;

constexpr Letter InverseLetter(Letter s) { return s ^ 1; }
constexpr int GeneratorOf(Letter s) { return s >> 1; }
constexpr bool IsInverseLetter(Letter s) { return (s & 1) != 0; }

// A nontrivial factor element. For a free-abelian factor `data` is the
// exponent vector; for a free factor it is a freely reduced word over the
// factor's local letters (2i, 2i + 1).
struct Syllable {
  int factor = 0;
  std::vector<int> data;

  bool operator==(const Syllable&) const = default;
};

// Group element in free-product normal form: an alternating sequence of
// nontrivial syllables from distinct adjacent factors. The empty sequence is
// the identity.
class Element {
 public:
  Element() = default;

  const std::vector<Syllable>& syllables() const { return syllables_; }
  bool is_identity() const { return syllables_.empty(); }
  std::uint64_t group_tag() const { return tag_; }
  std::size_t hash() const;

  bool operator==(const Element&) const = default;

 private:
  friend class GroupSpec;

  std::uint64_t tag_ = 0;
  std::vector<Syllable> syllables_;
};

struct ElementHash {
  std::size_t operator()(const Element& e) const { return e.hash(); }
};

// A free product A_1 * ... * A_k of free-abelian and free factors with its
// standard symmetric generating set. Immutable after construction.
class GroupSpec {
 public:
  explicit GroupSpec(std::vector<FactorSpec> factors);

  const std::vector<FactorSpec>& factors() const { return factors_; }
  int num_generators() const { return static_cast<int>(generator_factor_.size()); }
  int num_letters() const { return 2 * num_generators(); }
  std::uint64_t tag() const { return tag_; }

  const std::string& generator_name(int g) const { return names_[g]; }
  std::string letter_name(Letter s) const;
  int factor_of(Letter s) const { return generator_factor_[GeneratorOf(s)]; }
  FactorKind factor_kind(Letter s) const { return factors_[factor_of(s)].kind; }

  // Pairs (s, t) of positive letters from the same free-abelian factor; the
  // commutator square s t s' t' is a defining relator.
  std::vector<std::pair<Letter, Letter>> commuting_pairs() const;

  Element identity() const;
  Element generator(Letter s) const;
  Element multiply(const Element& a, const Element& b) const;
  Element multiply_letter(const Element& a, Letter s) const;
  Element inverse(const Element& a) const;
  Element evaluate(std::span<const Letter> word) const;

  std::int64_t length(const Element& a) const;
  // |a^-1 b| in the word metric.
  std::int64_t distance(const Element& a, const Element& b) const;

  // Geodesic spelling of the normal form: abelian syllables list their
  // generators in declaration order.
  std::vector<Letter> normal_word(const Element& a) const;

  // Words are generator names separated by whitespace; a trailing apostrophe
  // marks an inverse. "1" (or an empty string) is the identity.
  std::vector<Letter> parse_word(std::string_view text) const;
  std::string format_word(std::span<const Letter> word) const;
  std::string format(const Element& a) const;
  Element parse_element(std::string_view text) const;

  // Throws PreconditionError when `a` was built over a different group.
  void check(const Element& a) const;

 private:
  void push_syllable(std::vector<Syllable>& out, Syllable s) const;
  Syllable invert_syllable(const Syllable& s) const;
  Element make(std::vector<Syllable> syllables) const;

  std::vector<FactorSpec> factors_;
  std::vector<std::string> names_;
  std::vector<int> generator_factor_;
  std::vector<int> generator_local_;
  std::uint64_t tag_ = 0;
};

// An eventually periodic geodesic ray c: prefix . period^infinity, or a
// finite prefix when the period is empty. The ray is verified geodesic
// (|c(t)| = t) up to its horizon at construction; points up to the horizon
// are cached.
class RayWalk {
 public:
  RayWalk(const GroupSpec& group, std::vector<Letter> prefix,
          std::vector<Letter> period, int horizon);

  // Horizon 4 * r_max + |period| for rays used on balls of radius <= r_max.
  static int DefaultHorizon(int r_max, std::size_t period_length) {
    return 4 * r_max + static_cast<int>(period_length);
  }

  const GroupSpec& group() const { return group_; }
  const std::vector<Letter>& prefix() const { return prefix_; }
  const std::vector<Letter>& period() const { return period_; }
  bool periodic() const { return !period_.empty(); }
  int horizon() const { return static_cast<int>(points_.size()) - 1; }

  // The t-th letter of prefix . period^infinity (0-based).
  Letter letter(std::int64_t t) const;
  // c(t). Within the horizon this is the verified cached point; beyond it a
  // periodic ray is extended on the fly and a finite ray throws.
  Element at(std::int64_t t) const;
  const Element& cached(int t) const { return points_[t]; }

 private:
  GroupSpec group_;
  std::vector<Letter> prefix_;
  std::vector<Letter> period_;
  std::vector<Element> points_;
};

}  // namespace horo
