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

#ifndef UMTSLAB_PICALC_TERM_HPP_
#define UMTSLAB_PICALC_TERM_HPP_

#include <cstdint>
#include <deque>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "umtslab/bytes.hpp"

namespace umtslab::picalc {

using TermId = std::uint32_t;
inline constexpr TermId kNoTerm = UINT32_MAX;

// kVar refers to a binder (process variable, bound name or rule variable).
// kHandle and kProj only occur in attacker recipes.
enum class TermKind : std::uint8_t { kName, kVar, kFun, kTuple, kChoice, kHandle, kProj };

struct TermNode {
  TermKind kind;
  std::uint32_t sym;  // name index, binder, symbol, handle, or proj (index << 16 | arity)
  std::vector<TermId> args;
  std::uint32_t depth;
  bool ground;  // only names, functions and tuples below
};

// Hash-consed term store: structurally equal terms share one id.
class TermPool {
 public:
  TermId name(std::string_view s);
  TermId var(std::uint32_t binder);
  TermId fun(std::uint32_t sym, std::vector<TermId> args);
  TermId tuple(std::vector<TermId> args);
  TermId choice(TermId left, TermId right);
  TermId handle(std::uint32_t index);
  TermId proj(std::uint32_t index, std::uint32_t arity, TermId t);

  const TermNode& at(TermId id) const { return nodes_[id]; }
  const std::string& name_text(std::uint32_t sym) const { return names_[sym]; }
  std::size_t size() const { return nodes_.size(); }

 private:
  TermId intern(TermKind kind, std::uint32_t sym, std::vector<TermId> args);

  struct KeyHash {
    std::size_t operator()(const std::vector<std::uint32_t>& k) const;
  };
  std::deque<TermNode> nodes_;
  std::unordered_map<std::vector<std::uint32_t>, TermId, KeyHash> index_;
  std::vector<std::string> names_;
  std::unordered_map<std::string, std::uint32_t> name_index_;
};

enum class SymbolKind : std::uint8_t {
  kConstructor,
  kDestructor,
  // Declared as a constructor and given rewrite rules (e.g. xor). Parsed and
  // evaluated as a constructor; rejected by the equivalence checker.
  kEquational,
};

struct RewriteRule {
  std::vector<TermId> lhs;
  TermId rhs = kNoTerm;
};

struct Symbol {
  std::string name;
  std::uint32_t arity = 0;
  SymbolKind kind = SymbolKind::kConstructor;
  bool is_private = false;
  std::vector<RewriteRule> rules;
};

class Signature {
 public:
  std::uint32_t add(Symbol s);
  std::optional<std::uint32_t> find(std::string_view name) const;
  const Symbol& at(std::uint32_t id) const { return symbols_[id]; }
  Symbol& at(std::uint32_t id) { return symbols_[id]; }
  std::size_t size() const { return symbols_.size(); }

 private:
  std::vector<Symbol> symbols_;
  std::unordered_map<std::string, std::uint32_t> index_;
};

// Variable environment of a running process: binder -> ground term.
class Env {
 public:
  void bind(std::uint32_t binder, TermId value);
  std::optional<TermId> lookup(std::uint32_t binder) const;
  const std::vector<std::pair<std::uint32_t, TermId>>& entries() const { return entries_; }
  friend bool operator==(const Env&, const Env&) = default;

 private:
  std::vector<std::pair<std::uint32_t, TermId>> entries_;  // sorted by binder
};

// Which projection of a biprocess an evaluation follows.
enum class Side : std::uint8_t { kLeft = 0, kRight = 1 };

// Term evaluation. Constructors are strict; destructors try their rules in
// declaration order and fail when none matches. choice[l, r] follows side.
// Unbound variables throw Error. Returns nullopt on failure.
std::optional<TermId> evaluate(TermPool& pool, const Signature& sig, TermId t, const Env& env,
                               Side side);

// Applies destructor `sym` to ground arguments.
std::optional<TermId> rewrite(TermPool& pool, const Signature& sig, std::uint32_t sym,
                              const std::vector<TermId>& args);

// Syntactic matching of pattern (over rule variables) against a ground term.
bool match(const TermPool& pool, TermId pattern, TermId ground,
           std::vector<std::pair<std::uint32_t, TermId>>& subst);

// Evaluates an attacker recipe against a frame.
std::optional<TermId> evaluate_recipe(TermPool& pool, const Signature& sig, TermId recipe,
                                      const std::vector<TermId>& frame);

// Replaces every choice[l, r] by the chosen side.
TermId project(TermPool& pool, TermId t, Side side);

// Printing. var_name resolves kVar binders; handles print as w<i>.
std::string to_string(const TermPool& pool, const Signature& sig, TermId t,
                      const std::vector<std::string>* var_names = nullptr);

}  // namespace umtslab::picalc

#endif  // UMTSLAB_PICALC_TERM_HPP_
