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

#include "umtslab/picalc/checker.hpp"

#include <algorithm>
#include <deque>
#include <memory>
#include <unordered_map>
#include <set>
#include <unordered_set>

#include <json.hpp>

namespace umtslab::picalc {

std::string mode_name(Mode m) { return m == Mode::kStrict ? "strict" : "observable"; }

Mode parse_mode(std::string_view s) {
  if (s == "observable") return Mode::kObservable;
  if (s == "strict") return Mode::kStrict;
  throw ConfigError("unknown mode '" + std::string(s) + "' (expected observable or strict)");
}

std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::kEquivalent: return "equivalent_up_to_bound";
    case Verdict::kCounterexample: return "counterexample";
    case Verdict::kBoundExhausted: return "bound_exhausted";
  }
  return "?";
}

std::string event_kind_name(EventKind k) {
  switch (k) {
    case EventKind::kOutputMismatch: return "output_mismatch";
    case EventKind::kStaticInequivalence: return "static_inequivalence";
    case EventKind::kBranchDivergence: return "branch_divergence";
  }
  return "?";
}

namespace {

constexpr std::size_t kMaxCandidates = 100000;

struct Shape {
  bool used = true;
  std::vector<Shape> items;  // empty: leaf
};

std::string str(const Model& m, TermId t) {
  return t == kNoTerm ? std::string("fail") : to_string(m.pool, m.sig, t);
}

Config start(Model& m, Side side) {
  if (m.root == kNone) throw Error("model has no main process");
  Config c;
  c.side = side;
  c.threads.push_back(Thread{"p", m.root, Env{}, 0});
  return c;
}

std::optional<TermId> eval_on(Model& m, TermId recipe, const std::vector<TermId>& frame) {
  if (recipe == kNoTerm) return std::nullopt;
  return evaluate_recipe(m.pool, m.sig, recipe, frame);
}

// Outcome of a static test on one frame, for reports and replay.
struct TestOutcome {
  std::optional<TermId> v1, v2;
  bool holds;
};

TestOutcome run_test(Model& m, const Distinction& d, const std::vector<TermId>& frame) {
  TestOutcome o;
  o.v1 = eval_on(m, d.r1, frame);
  if (d.kind == TestKind::kSucceeds) {
    o.holds = o.v1.has_value();
  } else {
    o.v2 = eval_on(m, d.r2, frame);
    o.holds = o.v1 && o.v2 && *o.v1 == *o.v2;
  }
  return o;
}

std::string describe_test(const Model& m, const Distinction& d, const TestOutcome& o) {
  std::string r1 = to_string(m.pool, m.sig, d.r1);
  if (d.kind == TestKind::kSucceeds) {
    return o.v1 ? r1 + " evaluates to " + str(m, *o.v1) : r1 + " fails";
  }
  std::string r2 = to_string(m.pool, m.sig, d.r2);
  std::string lhs = r1 + " -> " + (o.v1 ? str(m, *o.v1) : "fail");
  std::string rhs = r2 + " -> " + (o.v2 ? str(m, *o.v2) : "fail");
  return lhs + ", " + rhs + (o.holds ? ": equal" : ": different");
}

bool output_ready(Model& m, const Config& c, const std::string& label, std::uint32_t depth,
                  TermId* message) {
  const Thread* t = find_thread(c, label);
  if (!t) return false;
  auto v = output_values(m, *t, c.side);
  if (!v || !channel_deducible(m, c.frame, v->first, depth)) return false;
  if (message) *message = v->second;
  return true;
}

class Explorer {
 public:
  Explorer(Model& m, const CheckOptions& o) : m_(m), o_(o), att_(m.pool.name(kAttackerName)) {}

  CheckResult run() {
    if (uses_equational_symbol(m_)) {
      throw UnsupportedTheory(
          "model uses a function symbol with rewrite rules (an equational theory); only "
          "constructor/destructor signatures are supported");
    }
    CheckResult result;
    bool exhausted = false;

    Node root{start(m_, Side::kLeft), start(m_, Side::kRight), kNone, {}, 0};
    if (auto ev = finish(root.l, root.r, root.events)) {
      return with_counterexample(result, root.events, *ev);
    }
    root.length = root.events.size();
    visited_.insert(key(root.l, root.r));
    nodes_.push_back(std::move(root));

    for (std::size_t i = 0; i < nodes_.size(); ++i) {
      if (nodes_.size() > o_.max_states) {
        exhausted = true;
        break;
      }
      Config l = std::move(nodes_[i].l);
      Config r = std::move(nodes_[i].r);
      nodes_[i].l = Config{};
      nodes_[i].r = Config{};
      std::uint64_t length = nodes_[i].length;
      result.longest_trace = std::max(result.longest_trace, length);

      std::vector<Action> actions = unfold_actions(l, r);
      bool unfolding = !actions.empty();
      if (!unfolding) actions = comm_actions(l, r);
      std::vector<std::pair<std::string, std::vector<TermId>>> inputs;
      if (!unfolding) inputs = input_candidates(l, r);
      bool any = !actions.empty() || !inputs.empty();
      if (any && length >= o_.bounds.steps) {
        exhausted = true;
        continue;
      }

      auto expand = [&](const Action& a) -> std::optional<CheckResult> {
        Config l2 = l, r2 = r;
        std::vector<TraceEvent> events{TraceEvent{a, kNoTerm, kNoTerm}};
        if (a.kind == ActionKind::kInput) {
          events[0].left = *eval_on(m_, a.recipe, l.frame);
          events[0].right = *eval_on(m_, a.recipe, r.frame);
        }
        if (!apply(m_, l2, a, o_.bounds) || !apply(m_, r2, a, o_.bounds)) return std::nullopt;
        ++result.transitions;
        if (auto ev = finish(l2, r2, events)) {
          std::vector<TraceEvent> trace = path(i);
          trace.insert(trace.end(), events.begin(), events.end());
          return with_counterexample(result, trace, *ev);
        }
        if (visited_.insert(key(l2, r2)).second) {
          std::uint64_t len = length + events.size();
          nodes_.push_back(Node{std::move(l2), std::move(r2), i, std::move(events), len});
        }
        return std::nullopt;
      };

      for (const Action& a : actions) {
        if (auto done = expand(a)) return *done;
      }
      for (const auto& [label, recipes] : inputs) {
        for (TermId recipe : recipes) {
          if (auto done = expand(Action{ActionKind::kInput, label, {}, recipe})) return *done;
        }
      }
    }
    result.states = nodes_.size();
    result.verdict = exhausted ? Verdict::kBoundExhausted : Verdict::kEquivalent;
    return result;
  }

 private:
  struct Node {
    Config l, r;
    std::size_t parent;
    std::vector<TraceEvent> events;
    std::uint64_t length;
  };

  CheckResult with_counterexample(CheckResult result, std::vector<TraceEvent> trace,
                                  DistinguishingEvent ev) {
    result.states = std::max<std::size_t>(nodes_.size(), 1);
    result.verdict = Verdict::kCounterexample;
    Counterexample c{std::move(trace), std::move(ev), false};
    c.verified = verify_counterexample(m_, o_.bounds, c);
    result.counterexample = std::move(c);
    return result;
  }

  std::vector<TraceEvent> path(std::size_t i) const {
    std::vector<std::size_t> chain;
    for (std::size_t k = i; k != kNone; k = nodes_[k].parent) chain.push_back(k);
    std::vector<TraceEvent> out;
    for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
      const auto& ev = nodes_[*it].events;
      out.insert(out.end(), ev.begin(), ev.end());
    }
    return out;
  }

  // Normalizes both sides and takes outputs until none is enabled, checking
  // each intermediate frame.
  std::optional<DistinguishingEvent> finish(Config& l, Config& r, std::vector<TraceEvent>& ev) {
    while (true) {
      std::size_t bl = l.branches.size(), br = r.branches.size();
      normalize(m_, l);
      normalize(m_, r);
      if (o_.mode == Mode::kStrict) {
        if (auto d = branch_divergence(l, r, bl, br)) return d;
      }
      const BiKnowledge& k = knowledge(l, r);
      if (k.distinction()) return static_event(l, r, *k.distinction());

      auto rl = ready(l, k), rr = ready(r, k);
      if (rl != rr) return output_mismatch(l, r, rl, rr);
      if (rl.empty()) return std::nullopt;
      for (const std::string& label : rl) {
        Action a{ActionKind::kOutput, label, {}, kNoTerm};
        TraceEvent te{a, kNoTerm, kNoTerm};
        te.left = output_values(m_, *find_thread(l, label), Side::kLeft)->second;
        te.right = output_values(m_, *find_thread(r, label), Side::kRight)->second;
        if (!apply(m_, l, a, o_.bounds) || !apply(m_, r, a, o_.bounds)) {
          throw Error("internal: output not applicable");
        }
        ev.push_back(te);
      }
    }
  }

  // Analysed knowledge per frame pair; many states share a frame.
  const BiKnowledge& knowledge(const Config& l, const Config& r) {
    std::string key;
    for (std::size_t i = 0; i < l.frame.size(); ++i) {
      key += std::to_string(l.frame[i]) + '/' + std::to_string(r.frame[i]) + ',';
    }
    auto it = knowledge_.find(key);
    if (it == knowledge_.end()) {
      if (knowledge_.size() > 100000) knowledge_.clear();
      it = knowledge_
               .emplace(key, std::make_unique<BiKnowledge>(m_, l.frame, r.frame, o_.bounds.depth))
               .first;
    }
    return *it->second;
  }

  std::vector<std::string> ready(const Config& c, const BiKnowledge& k) {
    std::vector<std::string> out;
    for (const Thread& t : c.threads) {
      auto v = output_values(m_, t, c.side);
      if (!v) continue;
      if (public_atom(m_, v->first) || k.synthesize(v->first, c.side)) out.push_back(t.label);
    }
    return out;
  }

  DistinguishingEvent output_mismatch(const Config& l, const Config& r,
                                      const std::vector<std::string>& rl,
                                      const std::vector<std::string>& rr) {
    std::vector<std::string> only;
    std::set_symmetric_difference(rl.begin(), rl.end(), rr.begin(), rr.end(),
                                  std::back_inserter(only));
    DistinguishingEvent ev;
    ev.kind = EventKind::kOutputMismatch;
    ev.label = only.front();
    bool left_outputs = std::binary_search(rl.begin(), rl.end(), ev.label);
    ev.side = left_outputs ? Side::kLeft : Side::kRight;
    const Config& c = left_outputs ? l : r;
    auto v = output_values(m_, *find_thread(c, ev.label), c.side);
    std::string says = "out(" + str(m_, v->first) + ", " + str(m_, v->second) + ") at " + ev.label;
    std::string silent = "no output at " + ev.label;
    if (left_outputs) {
      ev.left_value = v->second;
      ev.left = says;
      ev.right = silent;
    } else {
      ev.right_value = v->second;
      ev.right = says;
      ev.left = silent;
    }
    return ev;
  }

  DistinguishingEvent static_event(const Config& l, const Config& r, const Distinction& d) {
    DistinguishingEvent ev;
    ev.kind = EventKind::kStaticInequivalence;
    ev.test = d;
    TestOutcome lo = run_test(m_, d, l.frame), ro = run_test(m_, d, r.frame);
    ev.left_value = lo.v1.value_or(kNoTerm);
    ev.right_value = ro.v1.value_or(kNoTerm);
    ev.left = describe_test(m_, d, lo);
    ev.right = describe_test(m_, d, ro);
    return ev;
  }

  std::optional<DistinguishingEvent> branch_divergence(const Config& l, const Config& r,
                                                       std::size_t bl, std::size_t br) {
    for (std::size_t i = bl; i < l.branches.size(); ++i) {
      const BranchRecord& a = l.branches[i];
      for (std::size_t j = br; j < r.branches.size(); ++j) {
        const BranchRecord& b = r.branches[j];
        if (a.label != b.label || a.node != b.node || a.taken == b.taken) continue;
        DistinguishingEvent ev;
    ev.kind = EventKind::kBranchDivergence;
        ev.label = a.label;
        ev.node = a.node;
        ev.side = a.taken ? Side::kLeft : Side::kRight;
        ev.left = std::string(a.taken ? "first" : "else") + " branch at " + a.label;
        ev.right = std::string(b.taken ? "first" : "else") + " branch at " + b.label;
        return ev;
      }
    }
    return std::nullopt;
  }

  std::vector<Action> unfold_actions(const Config& l, const Config& r) {
    std::vector<Action> out;
    for (const Thread& t : l.threads) {
      if (m_.procs[t.proc].kind != ProcKind::kRepl) continue;
      auto it = l.unfolds.find(t.proc);
      if (it != l.unfolds.end() && it->second >= o_.bounds.repl) continue;
      const Thread* u = find_thread(r, t.label);
      if (!u || m_.procs[u->proc].kind != ProcKind::kRepl) continue;
      out.push_back({ActionKind::kUnfold, t.label, {}, kNoTerm});
    }
    return out;
  }

  // Synchronisations on channels the attacker cannot derive.
  std::vector<Action> comm_actions(const Config& l, const Config& r) {
    std::vector<Action> out;
    for (const Thread& s : l.threads) {
      auto v = output_values(m_, s, Side::kLeft);
      if (!v || channel_deducible(m_, l.frame, v->first, o_.bounds.depth)) continue;
      for (const Thread& t : l.threads) {
        auto ch = input_channel(m_, t, Side::kLeft);
        if (!ch || *ch != v->first || t.label == s.label) continue;
        Config probe = r;
        Action a{ActionKind::kComm, s.label, t.label, kNoTerm};
        if (apply(m_, probe, a, o_.bounds)) out.push_back(a);
      }
    }
    return out;
  }

  Shape infer_shape(std::uint32_t x, ProcId p) {
    TermId var = m_.pool.var(x);
    std::vector<ProcId> stack{p};
    while (!stack.empty()) {
      const ProcNode& n = m_.procs[stack.back()];
      stack.pop_back();
      if (n.kind == ProcKind::kLet && n.t1 == var &&
          m_.patterns[n.pattern].kind == PatternKind::kTuple) {
        return pattern_shape(n.pattern, n.p);
      }
      if (n.q != kNone) stack.push_back(n.q);
      if (n.p != kNone) stack.push_back(n.p);
    }
    const auto& free = free_binders(m_, p, fv_cache_);
    return Shape{std::find(free.begin(), free.end(), x) != free.end(), {}};
  }

  Shape pattern_shape(PatternId pat, ProcId cont) {
    const PatternNode& n = m_.patterns[pat];
    switch (n.kind) {
      case PatternKind::kVar: return infer_shape(n.binder, cont);
      case PatternKind::kEquals: return Shape{true, {}};
      case PatternKind::kTuple: {
        Shape s;
        std::vector<PatternId> items = n.items;
        for (PatternId c : items) s.items.push_back(pattern_shape(c, cont));
        return s;
      }
    }
    return Shape{};
  }

  // Recipes for a message of the given shape. `paths` holds, per frame
  // entry, the recipe and left value reached so far.
  std::vector<TermId> shaped(const Shape& s,
                             const std::vector<std::pair<TermId, TermId>>& reach) {
    if (s.items.empty()) {
      std::vector<TermId> out;
      if (s.used) {
        for (const auto& [recipe, value] : reach) out.push_back(recipe);
      }
      out.push_back(att_);
      return out;
    }
    auto n = static_cast<std::uint32_t>(s.items.size());
    std::vector<std::vector<TermId>> parts;
    for (std::uint32_t j = 0; j < n; ++j) {
      std::vector<std::pair<TermId, TermId>> sub;
      for (const auto& [recipe, value] : reach) {
        const TermNode& v = m_.pool.at(value);
        if (v.kind == TermKind::kTuple && v.args.size() == n) {
          sub.emplace_back(m_.pool.proj(j, n, recipe), v.args[j]);
        }
      }
      parts.push_back(shaped(s.items[j], sub));
    }
    std::vector<TermId> out;
    std::vector<std::size_t> idx(n, 0);
    while (out.size() < kMaxCandidates) {
      std::vector<TermId> args;
      for (std::uint32_t j = 0; j < n; ++j) args.push_back(parts[j][idx[j]]);
      out.push_back(m_.pool.tuple(std::move(args)));
      std::uint32_t k = 0;
      while (k < n && ++idx[k] == parts[k].size()) idx[k++] = 0;
      if (k == n) break;
    }
    return out;
  }

  std::vector<std::pair<std::string, std::vector<TermId>>> input_candidates(const Config& l,
                                                                            const Config& r) {
    std::vector<std::pair<std::string, std::vector<TermId>>> out;
    for (const Thread& t : l.threads) {
      const ProcNode& n = m_.procs[t.proc];
      if (n.kind != ProcKind::kIn) continue;
      const Thread* u = find_thread(r, t.label);
      if (!u || m_.procs[u->proc].kind != ProcKind::kIn) continue;
      const ProcNode& un = m_.procs[u->proc];
      if (m_.procs[n.p].kind == ProcKind::kNil && m_.procs[un.p].kind == ProcKind::kNil) continue;
      auto cl = input_channel(m_, t, Side::kLeft);
      auto cr = input_channel(m_, *u, Side::kRight);
      if (!cl || !cr) continue;
      if (!public_atom(m_, *cl) || !public_atom(m_, *cr)) {
        const BiKnowledge& k = knowledge(l, r);
        if (!k.synthesize(*cl, Side::kLeft) || !k.synthesize(*cr, Side::kRight)) continue;
      }

      std::vector<std::pair<TermId, TermId>> reach;
      for (std::uint32_t i = 0; i < l.frame.size(); ++i) {
        reach.emplace_back(m_.pool.handle(i), l.frame[i]);
      }
      std::vector<TermId> recipes;
      std::vector<Shape> shapes{infer_shape(n.binder, n.p)};
      if (u->proc != t.proc) shapes.push_back(infer_shape(un.binder, un.p));
      bool any_used = false;
      for (const Shape& s : shapes) {
        any_used = any_used || s.used || !s.items.empty();
        if (!s.items.empty()) {
          auto more = shaped(s, reach);
          recipes.insert(recipes.end(), more.begin(), more.end());
        }
      }
      if (any_used) {
        for (const auto& [recipe, value] : reach) recipes.push_back(recipe);
        for (TermId a : attacker_atoms(m_)) recipes.push_back(a);
      } else {
        recipes.push_back(att_);
      }

      std::set<std::pair<TermId, TermId>> seen;
      std::vector<TermId> unique;
      for (TermId recipe : recipes) {
        auto lv = eval_on(m_, recipe, l.frame);
        auto rv = eval_on(m_, recipe, r.frame);
        if (!lv || !rv) continue;
        if (seen.insert({*lv, *rv}).second) unique.push_back(recipe);
      }
      out.emplace_back(t.label, std::move(unique));
    }
    return out;
  }

  void side_key(const Config& c, std::string& out) {
    for (const Thread& t : c.threads) {
      out += t.label;
      out += ':' + std::to_string(t.proc) + ',' + std::to_string(t.copies);
      for (std::uint32_t b : free_binders(m_, t.proc, fv_cache_)) {
        if (auto v = t.env.lookup(b)) out += ',' + std::to_string(b) + '=' + std::to_string(*v);
      }
      out += ';';
    }
    out += '|';
    for (const auto& [node, count] : c.unfolds) {
      out += std::to_string(node) + 'x' + std::to_string(count) + ',';
    }
    out += '|';
  }

  std::string key(const Config& l, const Config& r) {
    std::string out;
    side_key(l, out);
    side_key(r, out);
    std::vector<std::pair<TermId, TermId>> frame;
    for (std::size_t i = 0; i < l.frame.size(); ++i) frame.emplace_back(l.frame[i], r.frame[i]);
    std::sort(frame.begin(), frame.end());
    for (const auto& [a, b] : frame) out += std::to_string(a) + '/' + std::to_string(b) + ',';
    return out;
  }

  Model& m_;
  const CheckOptions& o_;
  TermId att_;
  std::deque<Node> nodes_;
  std::unordered_set<std::string> visited_;
  std::unordered_map<std::string, std::unique_ptr<BiKnowledge>> knowledge_;
  std::vector<std::vector<std::uint32_t>> fv_cache_;
};

}  // namespace

CheckResult check_diff_equivalence(Model& m, const CheckOptions& opts) {
  return Explorer(m, opts).run();
}

bool verify_counterexample(Model& m, const Bounds& b, const Counterexample& c) {
  Config sides[2] = {start(m, Side::kLeft), start(m, Side::kRight)};
  for (Config& s : sides) {
    normalize(m, s);
    for (const TraceEvent& e : c.trace) {
      if (!apply(m, s, e.action, b)) return false;
      normalize(m, s);
    }
  }
  const Config& l = sides[0];
  const Config& r = sides[1];
  const DistinguishingEvent& ev = c.event;
  switch (ev.kind) {
    case EventKind::kOutputMismatch: {
      TermId lm = kNoTerm, rm = kNoTerm;
      bool lo = output_ready(m, l, ev.label, b.depth, &lm);
      bool ro = output_ready(m, r, ev.label, b.depth, &rm);
      if (lo == ro) return false;
      return lo ? lm == ev.left_value : rm == ev.right_value;
    }
    case EventKind::kStaticInequivalence: {
      if (l.frame.size() != r.frame.size()) return false;
      return run_test(m, ev.test, l.frame).holds != run_test(m, ev.test, r.frame).holds;
    }
    case EventKind::kBranchDivergence: {
      auto last = [&](const Config& s) -> std::optional<bool> {
        for (auto it = s.branches.rbegin(); it != s.branches.rend(); ++it) {
          if (it->label == ev.label && it->node == ev.node) return it->taken;
        }
        return std::nullopt;
      };
      auto a = last(l), bb = last(r);
      return a && bb && *a != *bb;
    }
  }
  return false;
}

namespace {

nlohmann::json ce_json(const Model& m, const Counterexample& c) {
  nlohmann::json trace = nlohmann::json::array();
  for (std::size_t i = 0; i < c.trace.size(); ++i) {
    const TraceEvent& e = c.trace[i];
    nlohmann::json j{{"step", i}, {"action", action_name(e.action.kind)}, {"label", e.action.label}};
    if (e.action.kind == ActionKind::kComm) j["to"] = e.action.label2;
    if (e.action.kind == ActionKind::kInput) j["recipe"] = to_string(m.pool, m.sig, e.action.recipe);
    if (e.left != kNoTerm) j["left"] = str(m, e.left);
    if (e.right != kNoTerm) j["right"] = str(m, e.right);
    trace.push_back(std::move(j));
  }
  const DistinguishingEvent& ev = c.event;
  nlohmann::json d{{"kind", event_kind_name(ev.kind)},
                   {"position", c.trace.size()},
                   {"left", ev.left},
                   {"right", ev.right},
                   {"left_value", ev.left_value == kNoTerm ? nlohmann::json(nullptr)
                                                           : nlohmann::json(str(m, ev.left_value))},
                   {"right_value", ev.right_value == kNoTerm
                                       ? nlohmann::json(nullptr)
                                       : nlohmann::json(str(m, ev.right_value))}};
  if (!ev.label.empty()) d["label"] = ev.label;
  if (ev.kind == EventKind::kStaticInequivalence) {
    nlohmann::json t{{"kind", ev.test.kind == TestKind::kEqual ? "equal" : "succeeds"},
                     {"recipe", to_string(m.pool, m.sig, ev.test.r1)}};
    if (ev.test.kind == TestKind::kEqual) t["other"] = to_string(m.pool, m.sig, ev.test.r2);
    d["test"] = std::move(t);
  }
  return {{"trace", std::move(trace)}, {"distinguishing_event", std::move(d)},
          {"verified", c.verified}};
}

}  // namespace

std::string counterexample_to_json(const Model& m, const Counterexample& c) {
  return ce_json(m, c).dump();
}

std::string check_result_to_json(const Model& m, const CheckResult& r) {
  nlohmann::json j{{"verdict", verdict_name(r.verdict)},
                   {"states", r.states},
                   {"transitions", r.transitions},
                   {"longest_trace", r.longest_trace}};
  j["counterexample"] = r.counterexample ? ce_json(m, *r.counterexample) : nlohmann::json(nullptr);
  return j.dump();
}

}  // namespace umtslab::picalc
