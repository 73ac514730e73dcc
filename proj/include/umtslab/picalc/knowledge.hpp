// Copyright 2026 The umtslab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef UMTSLAB_PICALC_KNOWLEDGE_HPP_
#define UMTSLAB_PICALC_KNOWLEDGE_HPP_

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "umtslab/picalc/ast.hpp"

namespace umtslab::picalc {

// Name standing for any value the attacker generates itself.
inline constexpr const char* kAttackerName = "$att";

// One attacker test on a pair of frames: either a recipe that evaluates on
// one side only, or two recipes that are equal on one side only.
enum class TestKind : std::uint8_t { kSucceeds, kEqual };

struct Distinction {
  TestKind kind;
  TermId r1 = kNoTerm;
  TermId r2 = kNoTerm;
};

struct Element {
  TermId recipe;
  TermId left;
  TermId right;
};

// Attacker knowledge over two frames of equal length (handles w0, w1, ...).
// Analysis closes the frames under tuple projection and destructor
// application; static equivalence is then decided by pairwise equality of the
// analysed terms and by rebuilding each one from the others with public
// constructors (at most `depth` layers).
class BiKnowledge {
 public:
  BiKnowledge(Model& m, const std::vector<TermId>& left, const std::vector<TermId>& right,
              std::uint32_t depth, std::size_t max_elements = 4096);

  const std::optional<Distinction>& distinction() const { return distinction_; }
  const std::vector<Element>& elements() const { return elements_; }

  // A recipe producing `value` on the given side, if one exists within the
  // depth bound.
  std::optional<TermId> synthesize(TermId value, Side side) const;

 private:
  void add(TermId recipe, TermId left, TermId right);
  void analyse(std::size_t i);
  void check_synthesis();
  std::optional<TermId> synth(TermId value, Side side, std::uint32_t depth) const;
  bool attacker_constructor(const TermNode& n) const;

  Model& m_;
  std::vector<TermId> left_frame_;
  std::vector<TermId> right_frame_;
  std::uint32_t depth_;
  std::size_t max_elements_;
  std::vector<Element> elements_;
  std::unordered_map<std::uint64_t, std::size_t> seen_;
  std::unordered_map<TermId, std::size_t> by_left_;
  std::unordered_map<TermId, std::size_t> by_right_;
  std::optional<Distinction> distinction_;
};

// Public free names, public constants and the attacker's own name.
std::vector<TermId> attacker_atoms(Model& m);

// Closure of `knowledge` plus the attacker atoms under projection, destructor
// rewriting, and public constructor and tuple application (tuple arities
// limited to those occurring in the input), keeping constructed terms of depth
// at most `depth`. Returned sorted by id.
std::vector<TermId> saturate(Model& m, const std::vector<TermId>& knowledge, std::uint32_t depth);

bool deducible(Model& m, const std::vector<TermId>& frame, TermId value, std::uint32_t depth);

}  // namespace umtslab::picalc

#endif  // UMTSLAB_PICALC_KNOWLEDGE_HPP_
