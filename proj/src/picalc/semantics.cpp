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

#include "umtslab/picalc/semantics.hpp"

#include <algorithm>

#include "umtslab/picalc/knowledge.hpp"

namespace umtslab::picalc {

std::string action_name(ActionKind k) {
  switch (k) {
    case ActionKind::kUnfold: return "unfold";
    case ActionKind::kOutput: return "output";
    case ActionKind::kInput: return "input";
    case ActionKind::kComm: return "comm";
  }
  return "?";
}

std::string describe(const Model& m, const Action& a) {
  std::string out = action_name(a.kind) + " " + a.label;
  if (a.kind == ActionKind::kComm) out += " -> " + a.label2;
  if (a.kind == ActionKind::kInput) out += " <- " + to_string(m.pool, m.sig, a.recipe);
  return out;
}

Config initial_config(Model& m, Side side) {
  if (m.root == kNone) throw Error("model has no main process");
  Config c;
  c.side = side;
  c.threads.push_back(Thread{"p", m.root, Env{}, 0});
  normalize(m, c);
  return c;
}

namespace {

bool match_pattern(Model& m, PatternId p, TermId value, const Env& outer, Env& env, Side side) {
  const PatternNode& n = m.patterns[p];
  switch (n.kind) {
    case PatternKind::kVar:
      env.bind(n.binder, value);
      return true;
    case PatternKind::kEquals: {
      auto v = evaluate(m.pool, m.sig, n.term, outer, side);
      return v && *v == value;
    }
    case PatternKind::kTuple: {
      const TermNode& t = m.pool.at(value);
      if (t.kind != TermKind::kTuple || t.args.size() != n.items.size()) return false;
      std::vector<TermId> parts = t.args;
      std::vector<PatternId> items = n.items;
      for (std::size_t i = 0; i < items.size(); ++i) {
        if (!match_pattern(m, items[i], parts[i], outer, env, side)) return false;
      }
      return true;
    }
  }
  return false;
}

Thread* find_mut(Config& c, const std::string& label) {
  for (auto& t : c.threads) {
    if (t.label == label) return &t;
  }
  return nullptr;
}

void sort_threads(Config& c) {
  std::sort(c.threads.begin(), c.threads.end(),
            [](const Thread& a, const Thread& b) { return a.label < b.label; });
}

}  // namespace

void normalize(Model& m, Config& c) {
  std::vector<Thread> work = std::move(c.threads);
  std::reverse(work.begin(), work.end());
  std::vector<Thread> done;
  while (!work.empty()) {
    Thread t = std::move(work.back());
    work.pop_back();
    const ProcNode n = m.procs[t.proc];
    switch (n.kind) {
      case ProcKind::kNil:
        break;
      case ProcKind::kPar:
        work.push_back(Thread{t.label + ".1", n.q, t.env, 0});
        work.push_back(Thread{t.label + ".0", n.p, std::move(t.env), 0});
        break;
      case ProcKind::kNew: {
        const std::string& base = m.binders[n.binder].base;
        t.env.bind(n.binder,
                   m.pool.name(base + "#" + std::to_string(n.binder) + "@" + t.label));
        t.proc = n.p;
        work.push_back(std::move(t));
        break;
      }
      case ProcKind::kLet: {
        auto v = evaluate(m.pool, m.sig, n.t1, t.env, c.side);
        Env env = t.env;
        bool ok = v && match_pattern(m, n.pattern, *v, t.env, env, c.side);
        c.branches.push_back({t.label, t.proc, ok});
        t.proc = ok ? n.p : n.q;
        if (ok) t.env = std::move(env);
        work.push_back(std::move(t));
        break;
      }
      case ProcKind::kCond: {
        auto a = evaluate(m.pool, m.sig, n.t1, t.env, c.side);
        auto b = evaluate(m.pool, m.sig, n.t2, t.env, c.side);
        bool ok = a && b && *a == *b;
        c.branches.push_back({t.label, t.proc, ok});
        t.proc = ok ? n.p : n.q;
        work.push_back(std::move(t));
        break;
      }
      case ProcKind::kRepl:
      case ProcKind::kIn:
      case ProcKind::kOut:
        done.push_back(std::move(t));
        break;
    }
  }
  c.threads = std::move(done);
  sort_threads(c);
}

const Thread* find_thread(const Config& c, const std::string& label) {
  for (const auto& t : c.threads) {
    if (t.label == label) return &t;
  }
  return nullptr;
}

std::optional<std::pair<TermId, TermId>> output_values(Model& m, const Thread& t, Side side) {
  const ProcNode& n = m.procs[t.proc];
  if (n.kind != ProcKind::kOut) return std::nullopt;
  auto ch = evaluate(m.pool, m.sig, n.t1, t.env, side);
  if (!ch) return std::nullopt;
  auto msg = evaluate(m.pool, m.sig, n.t2, t.env, side);
  if (!msg) return std::nullopt;
  return std::make_pair(*ch, *msg);
}

std::optional<TermId> input_channel(Model& m, const Thread& t, Side side) {
  const ProcNode& n = m.procs[t.proc];
  if (n.kind != ProcKind::kIn) return std::nullopt;
  return evaluate(m.pool, m.sig, n.t1, t.env, side);
}

bool public_atom(const Model& m, TermId t) {
  const TermNode& n = m.pool.at(t);
  if (n.kind == TermKind::kFun) {
    const Symbol& s = m.sig.at(n.sym);
    return n.args.empty() && !s.is_private && s.kind != SymbolKind::kDestructor;
  }
  return m.is_public_name(t);
}

bool channel_deducible(Model& m, const std::vector<TermId>& frame, TermId channel,
                       std::uint32_t depth) {
  return public_atom(m, channel) || deducible(m, frame, channel, depth);
}

bool apply(Model& m, Config& c, const Action& a, const Bounds& b) {
  Thread* t = find_mut(c, a.label);
  if (!t) return false;
  const ProcNode n = m.procs[t->proc];
  switch (a.kind) {
    case ActionKind::kUnfold: {
      if (n.kind != ProcKind::kRepl) return false;
      std::uint32_t& count = c.unfolds[t->proc];
      if (count >= b.repl) return false;
      ++count;
      Thread copy{t->label + "!" + std::to_string(t->copies), n.p, t->env, 0};
      ++t->copies;
      c.threads.push_back(std::move(copy));
      sort_threads(c);
      return true;
    }
    case ActionKind::kOutput: {
      auto v = output_values(m, *t, c.side);
      if (!v || !channel_deducible(m, c.frame, v->first, b.depth)) return false;
      c.frame.push_back(v->second);
      t->proc = n.p;
      return true;
    }
    case ActionKind::kInput: {
      auto ch = input_channel(m, *t, c.side);
      if (!ch || !channel_deducible(m, c.frame, *ch, b.depth)) return false;
      auto msg = evaluate_recipe(m.pool, m.sig, a.recipe, c.frame);
      if (!msg) return false;
      t->env.bind(n.binder, *msg);
      t->proc = n.p;
      return true;
    }
    case ActionKind::kComm: {
      Thread* r = find_mut(c, a.label2);
      if (!r || r == t) return false;
      auto v = output_values(m, *t, c.side);
      auto ch = input_channel(m, *r, c.side);
      if (!v || !ch || v->first != *ch) return false;
      const ProcNode rn = m.procs[r->proc];
      r->env.bind(rn.binder, v->second);
      r->proc = rn.p;
      t->proc = n.p;
      return true;
    }
  }
  return false;
}

std::vector<Config> step(Model& m, const Config& c, const Bounds& b,
                         const std::vector<TermId>& inputs) {
  std::vector<Action> actions;
  for (const Thread& t : c.threads) {
    switch (m.procs[t.proc].kind) {
      case ProcKind::kRepl:
        actions.push_back({ActionKind::kUnfold, t.label, {}, kNoTerm});
        break;
      case ProcKind::kOut:
        actions.push_back({ActionKind::kOutput, t.label, {}, kNoTerm});
        for (const Thread& r : c.threads) {
          if (m.procs[r.proc].kind == ProcKind::kIn) {
            actions.push_back({ActionKind::kComm, t.label, r.label, kNoTerm});
          }
        }
        break;
      case ProcKind::kIn:
        for (TermId recipe : inputs) actions.push_back({ActionKind::kInput, t.label, {}, recipe});
        break;
      default:
        break;
    }
  }
  std::vector<Config> out;
  for (const Action& a : actions) {
    Config next = c;
    if (!apply(m, next, a, b)) continue;
    normalize(m, next);
    out.push_back(std::move(next));
  }
  return out;
}

}  // namespace umtslab::picalc
