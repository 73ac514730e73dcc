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

#include "umtslab/picalc/knowledge.hpp"

#include <algorithm>
#include <set>

namespace umtslab::picalc {

std::vector<TermId> attacker_atoms(Model& m) {
  std::vector<TermId> atoms = m.public_atoms();
  atoms.push_back(m.pool.name(kAttackerName));
  return atoms;
}

namespace {

// Calls fn(indices) for every tuple over [0, n) of the given length that
// contains `must` at least once.
template <typename Fn>
void for_each_combo(std::size_t n, std::size_t len, std::size_t must, Fn&& fn) {
  if (len == 0 || n == 0) return;
  std::vector<std::size_t> idx(len, 0);
  while (true) {
    if (std::find(idx.begin(), idx.end(), must) != idx.end()) {
      if (!fn(idx)) return;
    }
    std::size_t k = 0;
    while (k < len && ++idx[k] == n) idx[k++] = 0;
    if (k == len) return;
  }
}

}  // namespace

BiKnowledge::BiKnowledge(Model& m, const std::vector<TermId>& left,
                         const std::vector<TermId>& right, std::uint32_t depth,
                         std::size_t max_elements)
    : m_(m), left_frame_(left), right_frame_(right), depth_(depth), max_elements_(max_elements) {
  if (left.size() != right.size()) throw Error("frames of different length");
  for (std::uint32_t i = 0; i < left.size(); ++i) add(m_.pool.handle(i), left[i], right[i]);
  for (TermId a : attacker_atoms(m_)) add(a, a, a);
  for (std::size_t i = 0; i < elements_.size() && !distinction_; ++i) {
    if (elements_.size() > max_elements_) break;
    analyse(i);
  }
  if (!distinction_) check_synthesis();
}

void BiKnowledge::add(TermId recipe, TermId left, TermId right) {
  if (distinction_) return;
  std::uint64_t key = (static_cast<std::uint64_t>(left) << 32) | right;
  if (seen_.contains(key)) return;
  std::size_t id = elements_.size();
  seen_.emplace(key, id);
  elements_.push_back({recipe, left, right});
  auto [l, new_l] = by_left_.emplace(left, id);
  if (!new_l) {
    distinction_ = Distinction{TestKind::kEqual, elements_[l->second].recipe, recipe};
    return;
  }
  auto [r, new_r] = by_right_.emplace(right, id);
  if (!new_r) distinction_ = Distinction{TestKind::kEqual, elements_[r->second].recipe, recipe};
}

void BiKnowledge::analyse(std::size_t i) {
  Element e = elements_[i];
  const TermNode& l = m_.pool.at(e.left);
  const TermNode& r = m_.pool.at(e.right);
  bool lt = l.kind == TermKind::kTuple;
  bool rt = r.kind == TermKind::kTuple;
  if (lt && rt && l.args.size() == r.args.size()) {
    auto n = static_cast<std::uint32_t>(l.args.size());
    std::vector<TermId> la = l.args, ra = r.args;
    for (std::uint32_t j = 0; j < n && !distinction_; ++j) {
      add(m_.pool.proj(j, n, e.recipe), la[j], ra[j]);
    }
  } else if (lt || rt) {
    auto n = static_cast<std::uint32_t>(lt ? l.args.size() : r.args.size());
    distinction_ = Distinction{TestKind::kSucceeds, m_.pool.proj(0, n, e.recipe), kNoTerm};
    return;
  }

  for (std::uint32_t s = 0; s < m_.sig.size() && !distinction_; ++s) {
    const Symbol& sym = m_.sig.at(s);
    if (sym.kind != SymbolKind::kDestructor || sym.rules.empty()) continue;
    for_each_combo(i + 1, sym.arity, i, [&](const std::vector<std::size_t>& idx) {
      std::vector<TermId> recipes, la, ra;
      for (std::size_t k : idx) {
        recipes.push_back(elements_[k].recipe);
        la.push_back(elements_[k].left);
        ra.push_back(elements_[k].right);
      }
      auto lv = rewrite(m_.pool, m_.sig, s, la);
      auto rv = rewrite(m_.pool, m_.sig, s, ra);
      if (!lv && !rv) return true;
      TermId recipe = m_.pool.fun(s, std::move(recipes));
      if (!lv || !rv) {
        distinction_ = Distinction{TestKind::kSucceeds, recipe, kNoTerm};
        return false;
      }
      add(recipe, *lv, *rv);
      return !distinction_ && elements_.size() <= max_elements_;
    });
  }
}

bool BiKnowledge::attacker_constructor(const TermNode& n) const {
  if (n.kind == TermKind::kTuple) return true;
  if (n.kind != TermKind::kFun || n.args.empty()) return false;
  const Symbol& s = m_.sig.at(n.sym);
  return !s.is_private && s.kind != SymbolKind::kDestructor;
}

std::optional<TermId> BiKnowledge::synth(TermId value, Side side, std::uint32_t depth) const {
  const auto& index = side == Side::kLeft ? by_left_ : by_right_;
  if (auto it = index.find(value); it != index.end()) return elements_[it->second].recipe;
  if (depth == 0) return std::nullopt;
  const TermNode& n = m_.pool.at(value);
  if (!attacker_constructor(n)) return std::nullopt;
  TermKind kind = n.kind;
  std::uint32_t sym = n.sym;
  std::vector<TermId> args = n.args;
  for (TermId& a : args) {
    auto r = synth(a, side, depth - 1);
    if (!r) return std::nullopt;
    a = *r;
  }
  return kind == TermKind::kTuple ? m_.pool.tuple(std::move(args))
                                  : m_.pool.fun(sym, std::move(args));
}

std::optional<TermId> BiKnowledge::synthesize(TermId value, Side side) const {
  return synth(value, side, depth_);
}

void BiKnowledge::check_synthesis() {
  for (std::size_t i = 0; i < elements_.size(); ++i) {
    for (Side side : {Side::kLeft, Side::kRight}) {
      Element e = elements_[i];
      TermId value = side == Side::kLeft ? e.left : e.right;
      const TermNode& n = m_.pool.at(value);
      if (!attacker_constructor(n) || depth_ == 0) continue;
      TermKind kind = n.kind;
      std::uint32_t sym = n.sym;
      std::vector<TermId> args = n.args;
      bool ok = true;
      for (TermId& a : args) {
        auto r = synth(a, side, depth_ - 1);
        if (!r) {
          ok = false;
          break;
        }
        a = *r;
      }
      if (!ok) continue;
      TermId recipe = kind == TermKind::kTuple ? m_.pool.tuple(std::move(args))
                                               : m_.pool.fun(sym, std::move(args));
      const auto& other_frame = side == Side::kLeft ? right_frame_ : left_frame_;
      auto other = evaluate_recipe(m_.pool, m_.sig, recipe, other_frame);
      TermId expected = side == Side::kLeft ? e.right : e.left;
      if (!other || *other != expected) {
        distinction_ = Distinction{TestKind::kEqual, recipe, e.recipe};
        return;
      }
    }
  }
}

namespace {

void tuple_arities(const TermPool& pool, TermId t, std::set<std::size_t>& out) {
  const TermNode& n = pool.at(t);
  if (n.kind == TermKind::kTuple) out.insert(n.args.size());
  for (TermId a : n.args) tuple_arities(pool, a, out);
}

}  // namespace

std::vector<TermId> saturate(Model& m, const std::vector<TermId>& knowledge, std::uint32_t depth) {
  std::set<TermId> known(knowledge.begin(), knowledge.end());
  for (TermId a : attacker_atoms(m)) known.insert(a);
  std::set<std::size_t> arities;
  for (TermId t : knowledge) tuple_arities(m.pool, t, arities);

  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<TermId> cur(known.begin(), known.end());
    std::vector<TermId> found;
    auto combos = [&](std::size_t len, auto&& fn) {
      if (len == 0) return;
      std::vector<std::size_t> idx(len, 0);
      while (true) {
        std::vector<TermId> args;
        for (std::size_t k : idx) args.push_back(cur[k]);
        fn(std::move(args));
        std::size_t k = 0;
        while (k < len && ++idx[k] == cur.size()) idx[k++] = 0;
        if (k == len) return;
      }
    };
    for (TermId t : cur) {
      const TermNode& n = m.pool.at(t);
      if (n.kind == TermKind::kTuple) found.insert(found.end(), n.args.begin(), n.args.end());
    }
    for (std::uint32_t s = 0; s < m.sig.size(); ++s) {
      const Symbol& sym = m.sig.at(s);
      if (sym.kind == SymbolKind::kDestructor) {
        combos(sym.arity, [&](std::vector<TermId> args) {
          if (auto v = rewrite(m.pool, m.sig, s, args)) found.push_back(*v);
        });
      } else if (!sym.is_private && sym.arity > 0) {
        combos(sym.arity, [&](std::vector<TermId> args) {
          TermId t = m.pool.fun(s, std::move(args));
          if (m.pool.at(t).depth <= depth) found.push_back(t);
        });
      }
    }
    for (std::size_t n : arities) {
      combos(n, [&](std::vector<TermId> args) {
        TermId t = m.pool.tuple(std::move(args));
        if (m.pool.at(t).depth <= depth) found.push_back(t);
      });
    }
    for (TermId t : found) changed = known.insert(t).second || changed;
  }
  return {known.begin(), known.end()};
}

bool deducible(Model& m, const std::vector<TermId>& frame, TermId value, std::uint32_t depth) {
  BiKnowledge k(m, frame, frame, depth);
  return k.synthesize(value, Side::kLeft).has_value();
}

}  // namespace umtslab::picalc
