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

#include "umtslab/picalc/ast.hpp"

#include <algorithm>
#include <set>

namespace umtslab::picalc {

ProcId Model::add(ProcNode n) {
  procs.push_back(n);
  return static_cast<ProcId>(procs.size() - 1);
}

PatternId Model::add(PatternNode n) {
  patterns.push_back(std::move(n));
  return static_cast<PatternId>(patterns.size() - 1);
}

std::uint32_t Model::add(Binder b) {
  binders.push_back(std::move(b));
  return static_cast<std::uint32_t>(binders.size() - 1);
}

ProcId Model::nil() { return add(ProcNode{}); }

std::vector<TermId> Model::public_atoms() {
  std::vector<TermId> out;
  for (const auto& f : free_names) {
    if (!f.is_private) out.push_back(pool.name(f.name));
  }
  for (std::uint32_t s = 0; s < sig.size(); ++s) {
    const Symbol& sym = sig.at(s);
    if (sym.arity == 0 && !sym.is_private && sym.kind != SymbolKind::kDestructor) {
      out.push_back(pool.fun(s, {}));
    }
  }
  return out;
}

bool Model::is_public_name(TermId t) const {
  const TermNode& n = pool.at(t);
  if (n.kind != TermKind::kName) return false;
  const std::string& text = pool.name_text(n.sym);
  return std::any_of(free_names.begin(), free_names.end(),
                     [&](const FreeName& f) { return !f.is_private && f.name == text; });
}

void pattern_binders(const Model& m, PatternId p, std::vector<std::uint32_t>& out) {
  const PatternNode& n = m.patterns[p];
  if (n.kind == PatternKind::kVar) out.push_back(n.binder);
  for (PatternId c : n.items) pattern_binders(m, c, out);
}

namespace {

void term_vars(const TermPool& pool, TermId t, std::set<std::uint32_t>& out) {
  if (t == kNoTerm) return;
  const TermNode& n = pool.at(t);
  if (n.ground) return;
  if (n.kind == TermKind::kVar) out.insert(n.sym);
  for (TermId a : n.args) term_vars(pool, a, out);
}

void pattern_vars(const Model& m, PatternId p, std::set<std::uint32_t>& out) {
  const PatternNode& n = m.patterns[p];
  if (n.kind == PatternKind::kEquals) term_vars(m.pool, n.term, out);
  for (PatternId c : n.items) pattern_vars(m, c, out);
}

}  // namespace

const std::vector<std::uint32_t>& free_binders(const Model& m, ProcId p,
                                               std::vector<std::vector<std::uint32_t>>& cache) {
  if (cache.size() < m.procs.size()) cache.resize(m.procs.size(), {kNone});
  // {kNone} marks an entry not computed yet.
  if (cache[p].size() != 1 || cache[p][0] != kNone) return cache[p];

  const ProcNode& n = m.procs[p];
  std::set<std::uint32_t> vars;
  auto add_child = [&](ProcId c, const std::vector<std::uint32_t>& bound) {
    if (c == kNone) return;
    for (std::uint32_t v : free_binders(m, c, cache)) {
      if (std::find(bound.begin(), bound.end(), v) == bound.end()) vars.insert(v);
    }
  };
  term_vars(m.pool, n.t1, vars);
  term_vars(m.pool, n.t2, vars);
  std::vector<std::uint32_t> bound;
  switch (n.kind) {
    case ProcKind::kNew:
    case ProcKind::kIn:
      bound.push_back(n.binder);
      add_child(n.p, bound);
      break;
    case ProcKind::kLet:
      pattern_vars(m, n.pattern, vars);
      pattern_binders(m, n.pattern, bound);
      add_child(n.p, bound);
      add_child(n.q, {});
      break;
    default:
      add_child(n.p, {});
      add_child(n.q, {});
      break;
  }
  // Recursive calls may have grown the cache; index again.
  cache[p].assign(vars.begin(), vars.end());
  return cache[p];
}

namespace {

bool term_has(const Model& m, TermId t, bool want_choice) {
  if (t == kNoTerm) return false;
  const TermNode& n = m.pool.at(t);
  if (want_choice && n.kind == TermKind::kChoice) return true;
  if (!want_choice && n.kind == TermKind::kFun &&
      m.sig.at(n.sym).kind == SymbolKind::kEquational) {
    return true;
  }
  for (TermId a : n.args) {
    if (term_has(m, a, want_choice)) return true;
  }
  return false;
}

bool pattern_has(const Model& m, PatternId p, bool want_choice) {
  if (p == kNone) return false;
  const PatternNode& n = m.patterns[p];
  if (n.kind == PatternKind::kEquals && term_has(m, n.term, want_choice)) return true;
  for (PatternId c : n.items) {
    if (pattern_has(m, c, want_choice)) return true;
  }
  return false;
}

bool reachable_has(const Model& m, bool want_choice) {
  if (m.root == kNone) return false;
  std::vector<ProcId> stack{m.root};
  while (!stack.empty()) {
    const ProcNode& n = m.procs[stack.back()];
    stack.pop_back();
    if (term_has(m, n.t1, want_choice) || term_has(m, n.t2, want_choice) ||
        pattern_has(m, n.pattern, want_choice)) {
      return true;
    }
    if (n.p != kNone) stack.push_back(n.p);
    if (n.q != kNone) stack.push_back(n.q);
  }
  return false;
}

}  // namespace

bool uses_equational_symbol(const Model& m) { return reachable_has(m, false); }
bool has_choice(const Model& m) { return reachable_has(m, true); }

}  // namespace umtslab::picalc
