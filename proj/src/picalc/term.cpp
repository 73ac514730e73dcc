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

#include "umtslab/picalc/term.hpp"

#include <algorithm>

namespace umtslab::picalc {

std::size_t TermPool::KeyHash::operator()(const std::vector<std::uint32_t>& k) const {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (std::uint32_t v : k) {
    h ^= v;
    h *= 0x100000001b3ULL;
    h ^= h >> 29;
  }
  return static_cast<std::size_t>(h);
}

TermId TermPool::intern(TermKind kind, std::uint32_t sym, std::vector<TermId> args) {
  std::vector<std::uint32_t> key;
  key.reserve(args.size() + 2);
  key.push_back(static_cast<std::uint32_t>(kind));
  key.push_back(sym);
  key.insert(key.end(), args.begin(), args.end());
  auto it = index_.find(key);
  if (it != index_.end()) return it->second;

  std::uint32_t depth = 1;
  bool ground = kind == TermKind::kName || kind == TermKind::kFun || kind == TermKind::kTuple;
  std::uint32_t max_child = 0;
  for (TermId a : args) {
    max_child = std::max(max_child, nodes_[a].depth);
    ground = ground && nodes_[a].ground;
  }
  switch (kind) {
    case TermKind::kFun:
    case TermKind::kTuple:
      depth = 1 + max_child;
      break;
    case TermKind::kChoice:
    case TermKind::kProj:
      depth = max_child;
      break;
    default:
      break;
  }
  TermId id = static_cast<TermId>(nodes_.size());
  nodes_.push_back(TermNode{kind, sym, std::move(args), depth, ground});
  index_.emplace(std::move(key), id);
  return id;
}

TermId TermPool::name(std::string_view s) {
  std::string key(s);
  auto it = name_index_.find(key);
  std::uint32_t sym;
  if (it == name_index_.end()) {
    sym = static_cast<std::uint32_t>(names_.size());
    names_.push_back(key);
    name_index_.emplace(std::move(key), sym);
  } else {
    sym = it->second;
  }
  return intern(TermKind::kName, sym, {});
}

TermId TermPool::var(std::uint32_t binder) { return intern(TermKind::kVar, binder, {}); }

TermId TermPool::fun(std::uint32_t sym, std::vector<TermId> args) {
  return intern(TermKind::kFun, sym, std::move(args));
}

TermId TermPool::tuple(std::vector<TermId> args) {
  return intern(TermKind::kTuple, 0, std::move(args));
}

TermId TermPool::choice(TermId left, TermId right) {
  return intern(TermKind::kChoice, 0, {left, right});
}

TermId TermPool::handle(std::uint32_t index) { return intern(TermKind::kHandle, index, {}); }

TermId TermPool::proj(std::uint32_t index, std::uint32_t arity, TermId t) {
  return intern(TermKind::kProj, (index << 16) | arity, {t});
}

std::uint32_t Signature::add(Symbol s) {
  std::uint32_t id = static_cast<std::uint32_t>(symbols_.size());
  index_[s.name] = id;
  symbols_.push_back(std::move(s));
  return id;
}

std::optional<std::uint32_t> Signature::find(std::string_view name) const {
  auto it = index_.find(std::string(name));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

void Env::bind(std::uint32_t binder, TermId value) {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), binder,
                             [](const auto& e, std::uint32_t b) { return e.first < b; });
  if (it != entries_.end() && it->first == binder) {
    it->second = value;
  } else {
    entries_.insert(it, {binder, value});
  }
}

std::optional<TermId> Env::lookup(std::uint32_t binder) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), binder,
                             [](const auto& e, std::uint32_t b) { return e.first < b; });
  if (it != entries_.end() && it->first == binder) return it->second;
  return std::nullopt;
}

bool match(const TermPool& pool, TermId pattern, TermId ground,
           std::vector<std::pair<std::uint32_t, TermId>>& subst) {
  const TermNode& p = pool.at(pattern);
  if (p.kind == TermKind::kVar) {
    for (const auto& [b, v] : subst) {
      if (b == p.sym) return v == ground;
    }
    subst.emplace_back(p.sym, ground);
    return true;
  }
  if (p.ground) return pattern == ground;
  const TermNode& g = pool.at(ground);
  if (p.kind != g.kind || p.sym != g.sym || p.args.size() != g.args.size()) return false;
  for (std::size_t i = 0; i < p.args.size(); ++i) {
    if (!match(pool, p.args[i], g.args[i], subst)) return false;
  }
  return true;
}

namespace {

TermId instantiate(TermPool& pool, TermId t,
                   const std::vector<std::pair<std::uint32_t, TermId>>& subst) {
  const TermNode& n = pool.at(t);
  if (n.kind == TermKind::kVar) {
    for (const auto& [b, v] : subst) {
      if (b == n.sym) return v;
    }
    throw Error("rewrite rule has an unbound right-hand variable");
  }
  if (n.ground) return t;
  TermKind kind = n.kind;
  std::uint32_t sym = n.sym;
  std::vector<TermId> args = n.args;
  for (TermId& a : args) a = instantiate(pool, a, subst);
  if (kind == TermKind::kTuple) return pool.tuple(std::move(args));
  return pool.fun(sym, std::move(args));
}

}  // namespace

std::optional<TermId> rewrite(TermPool& pool, const Signature& sig, std::uint32_t sym,
                              const std::vector<TermId>& args) {
  for (const RewriteRule& rule : sig.at(sym).rules) {
    std::vector<std::pair<std::uint32_t, TermId>> subst;
    bool ok = true;
    for (std::size_t i = 0; i < args.size() && ok; ++i) {
      ok = match(pool, rule.lhs[i], args[i], subst);
    }
    if (ok) return instantiate(pool, rule.rhs, subst);
  }
  return std::nullopt;
}

namespace {

template <typename Leaf>
std::optional<TermId> eval_with(TermPool& pool, const Signature& sig, TermId t, Side side,
                                const Leaf& leaf) {
  const TermNode& n = pool.at(t);
  switch (n.kind) {
    case TermKind::kName:
      return t;
    case TermKind::kVar:
    case TermKind::kHandle:
      return leaf(n);
    case TermKind::kChoice:
      return eval_with(pool, sig, n.args[side == Side::kLeft ? 0 : 1], side, leaf);
    case TermKind::kProj: {
      std::uint32_t index = n.sym >> 16;
      std::uint32_t arity = n.sym & 0xffff;
      auto v = eval_with(pool, sig, n.args[0], side, leaf);
      if (!v) return std::nullopt;
      const TermNode& tv = pool.at(*v);
      if (tv.kind != TermKind::kTuple || tv.args.size() != arity) return std::nullopt;
      return tv.args[index];
    }
    case TermKind::kFun:
    case TermKind::kTuple: {
      if (n.ground && n.kind == TermKind::kTuple) return t;
      TermKind kind = n.kind;
      std::uint32_t sym = n.sym;
      std::vector<TermId> args = n.args;
      for (TermId& a : args) {
        auto v = eval_with(pool, sig, a, side, leaf);
        if (!v) return std::nullopt;
        a = *v;
      }
      if (kind == TermKind::kTuple) return pool.tuple(std::move(args));
      if (sig.at(sym).kind == SymbolKind::kDestructor) return rewrite(pool, sig, sym, args);
      return pool.fun(sym, std::move(args));
    }
  }
  return std::nullopt;
}

}  // namespace

std::optional<TermId> evaluate(TermPool& pool, const Signature& sig, TermId t, const Env& env,
                               Side side) {
  return eval_with(pool, sig, t, side, [&env](const TermNode& n) -> std::optional<TermId> {
    if (n.kind == TermKind::kHandle) throw Error("handle in process term");
    auto v = env.lookup(n.sym);
    if (!v) throw Error("unbound variable during evaluation");
    return *v;
  });
}

std::optional<TermId> evaluate_recipe(TermPool& pool, const Signature& sig, TermId recipe,
                                      const std::vector<TermId>& frame) {
  return eval_with(pool, sig, recipe, Side::kLeft,
                   [&frame](const TermNode& n) -> std::optional<TermId> {
                     if (n.kind == TermKind::kVar) throw Error("variable in recipe");
                     if (n.sym >= frame.size()) return std::nullopt;
                     return frame[n.sym];
                   });
}

TermId project(TermPool& pool, TermId t, Side side) {
  const TermNode& n = pool.at(t);
  if (n.kind == TermKind::kChoice) return project(pool, n.args[side == Side::kLeft ? 0 : 1], side);
  if (n.args.empty()) return t;
  TermKind kind = n.kind;
  std::uint32_t sym = n.sym;
  std::vector<TermId> args = n.args;
  bool changed = false;
  for (TermId& a : args) {
    TermId p = project(pool, a, side);
    changed = changed || p != a;
    a = p;
  }
  if (!changed) return t;
  switch (kind) {
    case TermKind::kTuple: return pool.tuple(std::move(args));
    case TermKind::kProj: return pool.proj(sym >> 16, sym & 0xffff, args[0]);
    default: return pool.fun(sym, std::move(args));
  }
}

std::string to_string(const TermPool& pool, const Signature& sig, TermId t,
                      const std::vector<std::string>* var_names) {
  const TermNode& n = pool.at(t);
  auto join = [&](std::string out) {
    for (std::size_t i = 0; i < n.args.size(); ++i) {
      if (i) out += ", ";
      out += to_string(pool, sig, n.args[i], var_names);
    }
    return out;
  };
  switch (n.kind) {
    case TermKind::kName:
      return pool.name_text(n.sym);
    case TermKind::kVar:
      if (var_names && n.sym < var_names->size()) return (*var_names)[n.sym];
      return "v" + std::to_string(n.sym);
    case TermKind::kHandle:
      return "w" + std::to_string(n.sym);
    case TermKind::kProj:
      return "proj_" + std::to_string(n.sym >> 16) + "_" + std::to_string(n.sym & 0xffff) + "(" +
             join("") + ")";
    case TermKind::kTuple:
      return join("(") + ")";
    case TermKind::kChoice:
      return join("choice[") + "]";
    case TermKind::kFun:
      if (n.args.empty()) return sig.at(n.sym).name;
      return join(sig.at(n.sym).name + "(") + ")";
  }
  return "?";
}

}  // namespace umtslab::picalc
