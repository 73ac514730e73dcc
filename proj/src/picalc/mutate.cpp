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

#include "umtslab/picalc/mutate.hpp"

#include <functional>

namespace umtslab::picalc {
namespace {

std::vector<ProcId> reachable(const Model& m) {
  std::vector<ProcId> out;
  std::vector<ProcId> stack{m.root};
  while (!stack.empty()) {
    ProcId p = stack.back();
    stack.pop_back();
    out.push_back(p);
    const ProcNode& n = m.procs[p];
    if (n.q != kNone) stack.push_back(n.q);
    if (n.p != kNone) stack.push_back(n.p);
  }
  return out;
}

TermId rebuild(Model& m, TermId t, const std::function<std::optional<TermId>(TermId)>& fn) {
  if (t == kNoTerm) return t;
  if (auto r = fn(t)) return *r;
  const TermNode& n = m.pool.at(t);
  if (n.args.empty()) return t;
  TermKind kind = n.kind;
  std::uint32_t sym = n.sym;
  std::vector<TermId> args = n.args;
  for (TermId& a : args) a = rebuild(m, a, fn);
  switch (kind) {
    case TermKind::kTuple: return m.pool.tuple(std::move(args));
    case TermKind::kChoice: return m.pool.choice(args[0], args[1]);
    case TermKind::kProj: return m.pool.proj(sym >> 16, sym & 0xffff, args[0]);
    default: return m.pool.fun(sym, std::move(args));
  }
}

std::vector<TermId> constants(Model& m) {
  std::vector<TermId> out;
  for (std::uint32_t s = 0; s < m.sig.size(); ++s) {
    const Symbol& sym = m.sig.at(s);
    if (sym.arity == 0 && !sym.is_private && sym.kind == SymbolKind::kConstructor) {
      out.push_back(m.pool.fun(s, {}));
    }
  }
  return out;
}

template <typename T>
T pick(const std::vector<T>& v, Rng& rng) {
  return v[rng.below(v.size())];
}

}  // namespace

std::string mutate(Model& m, Rng& rng) {
  std::vector<ProcId> procs = reachable(m);
  std::vector<TermId> consts = constants(m);
  for (int attempt = 0; attempt < 64; ++attempt) {
    ProcId p = pick(procs, rng);
    ProcNode& n = m.procs[p];
    switch (rng.below(5)) {
      case 0: {  // swap choice sides
        bool changed = false;
        auto swap = [&](TermId t) -> std::optional<TermId> {
          const TermNode& tn = m.pool.at(t);
          if (tn.kind != TermKind::kChoice) return std::nullopt;
          changed = true;
          return m.pool.choice(tn.args[1], tn.args[0]);
        };
        TermId a = rebuild(m, n.t1, swap);
        TermId b = rebuild(m, n.t2, swap);
        if (!changed) break;
        m.procs[p].t1 = a;
        m.procs[p].t2 = b;
        return "swap choice sides at node " + std::to_string(p);
      }
      case 1: {  // replace one constant by another
        if (consts.size() < 2) break;
        TermId from = pick(consts, rng), to = pick(consts, rng);
        if (from == to) break;
        bool changed = false;
        auto repl = [&](TermId t) -> std::optional<TermId> {
          if (t != from) return std::nullopt;
          changed = true;
          return to;
        };
        TermId a = rebuild(m, n.t1, repl);
        TermId b = rebuild(m, n.t2, repl);
        if (!changed) break;
        m.procs[p].t1 = a;
        m.procs[p].t2 = b;
        return "replace " + to_string(m.pool, m.sig, from) + " by " +
               to_string(m.pool, m.sig, to) + " at node " + std::to_string(p);
      }
      case 2:  // swap if branches
        if (n.kind != ProcKind::kCond) break;
        std::swap(n.p, n.q);
        return "swap branches at node " + std::to_string(p);
      case 3:  // constant output
        if (n.kind != ProcKind::kOut || consts.empty()) break;
        n.t2 = pick(consts, rng);
        return "output constant at node " + std::to_string(p);
      case 4: {  // cut continuation
        if (n.kind != ProcKind::kOut && n.kind != ProcKind::kIn && n.kind != ProcKind::kNew) break;
        if (m.procs[n.p].kind == ProcKind::kNil) break;
        ProcId nil = m.nil();
        m.procs[p].p = nil;
        return "cut continuation at node " + std::to_string(p);
      }
    }
  }
  return {};
}

}  // namespace umtslab::picalc
