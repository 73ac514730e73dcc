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

#ifndef UMTSLAB_PICALC_AST_HPP_
#define UMTSLAB_PICALC_AST_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "umtslab/picalc/term.hpp"

namespace umtslab::picalc {

using ProcId = std::uint32_t;
using PatternId = std::uint32_t;
inline constexpr std::uint32_t kNone = UINT32_MAX;

enum class BinderKind : std::uint8_t { kVariable, kName, kRuleVariable };

// Every binder in a parsed model is unique; terms refer to binders through
// kVar nodes, including names bound by `new`.
struct Binder {
  std::string base;
  BinderKind kind;
};

enum class PatternKind : std::uint8_t { kVar, kTuple, kEquals };

struct PatternNode {
  PatternKind kind;
  std::uint32_t binder = kNone;  // kVar
  std::vector<PatternId> items;  // kTuple
  TermId term = kNoTerm;         // kEquals
};

enum class ProcKind : std::uint8_t { kNil, kPar, kRepl, kNew, kLet, kCond, kIn, kOut };

// Field use per kind:
//   kPar   p | q          kRepl  !p              kNew  new binder; p
//   kLet   let pattern = t1 in p else q
//   kCond  if t1 = t2 then p else q
//   kIn    in(t1, binder); p
//   kOut   out(t1, t2); p
struct ProcNode {
  ProcKind kind = ProcKind::kNil;
  std::uint32_t binder = kNone;
  PatternId pattern = kNone;
  TermId t1 = kNoTerm;
  TermId t2 = kNoTerm;
  ProcId p = kNone;
  ProcId q = kNone;
};

struct FreeName {
  std::string name;
  bool is_private = false;
};

struct Model {
  TermPool pool;
  Signature sig;
  std::vector<Binder> binders;
  std::vector<PatternNode> patterns;
  std::vector<ProcNode> procs;
  std::vector<FreeName> free_names;
  ProcId root = kNone;

  ProcId add(ProcNode n);
  PatternId add(PatternNode n);
  std::uint32_t add(Binder b);
  ProcId nil();

  // Public free names and public constants, as ground terms.
  std::vector<TermId> public_atoms();
  bool is_public_name(TermId t) const;
};

// Binders bound by a pattern, in order.
void pattern_binders(const Model& m, PatternId p, std::vector<std::uint32_t>& out);

// Binders occurring free in a process node (used for canonical keys).
const std::vector<std::uint32_t>& free_binders(const Model& m, ProcId p,
                                               std::vector<std::vector<std::uint32_t>>& cache);

// True if any term of the process mentions a symbol of kind kEquational.
bool uses_equational_symbol(const Model& m);
bool has_choice(const Model& m);

}  // namespace umtslab::picalc

#endif  // UMTSLAB_PICALC_AST_HPP_
