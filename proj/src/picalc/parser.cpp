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

#include "umtslab/picalc/parser.hpp"

#include <cctype>
#include <map>
#include <optional>
#include <set>

namespace umtslab::picalc {
namespace {

enum class TokKind { kIdent, kInt, kPunct, kEnd };

struct Token {
  TokKind kind;
  std::string text;
  int line;
  int col;
};

std::vector<Token> lex(std::string_view src) {
  std::vector<Token> out;
  int line = 1;
  int col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < src.size()) {
    char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (c == '(' && i + 1 < src.size() && src[i + 1] == '*') {
      int sl = line, sc = col;
      int depth = 0;
      while (true) {
        if (i + 1 >= src.size()) throw SyntaxError("unterminated comment", sl, sc);
        if (src[i] == '(' && src[i + 1] == '*') {
          ++depth;
          advance(2);
        } else if (src[i] == '*' && src[i + 1] == ')') {
          --depth;
          advance(2);
          if (depth == 0) break;
        } else {
          advance(1);
        }
      }
      continue;
    }
    int tl = line, tc = col;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) ||
                                src[j] == '_' || src[j] == '\'')) {
        ++j;
      }
      out.push_back({TokKind::kIdent, std::string(src.substr(i, j - i)), tl, tc});
      advance(j - i);
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      out.push_back({TokKind::kInt, std::string(src.substr(i, j - i)), tl, tc});
      advance(j - i);
      continue;
    }
    if (c == '<' && i + 1 < src.size() && src[i + 1] == '>') {
      out.push_back({TokKind::kPunct, "<>", tl, tc});
      advance(2);
      continue;
    }
    static const std::string kPunct = "()[],;.=|!/:";
    if (kPunct.find(c) != std::string::npos) {
      out.push_back({TokKind::kPunct, std::string(1, c), tl, tc});
      advance(1);
      continue;
    }
    throw SyntaxError(std::string("unexpected character '") + c + "'", tl, tc);
  }
  out.push_back({TokKind::kEnd, "", line, col});
  return out;
}

const std::set<std::string> kKeywords = {"free", "fun",  "reduc", "let",    "in",   "new",
                                         "out",  "if",   "then",  "else",   "process",
                                         "choice", "private", "forall"};

struct Macro {
  std::vector<std::string> params;
  std::vector<Token> body;  // terminated by a kEnd token
};

class Parser {
 public:
  explicit Parser(std::string_view src) : toks_(lex(src)) {}

  Model run() {
    while (!at_end()) {
      const Token& t = peek();
      if (is_kw("free")) {
        parse_free();
      } else if (is_kw("fun")) {
        parse_fun();
      } else if (is_kw("reduc")) {
        parse_reduc();
      } else if (is_kw("let")) {
        parse_macro();
      } else if (is_kw("process")) {
        next();
        m_.root = parse_par();
        if (is_punct(".")) next();
        if (!at_end()) fail("unexpected input after main process");
      } else {
        throw SyntaxError("expected a declaration, found '" + t.text + "'", t.line, t.col);
      }
    }
    if (m_.root == kNone) {
      throw SyntaxError("missing 'process' declaration", peek().line, peek().col);
    }
    return std::move(m_);
  }

 private:
  // Token access -----------------------------------------------------------
  const Token& peek(std::size_t ahead = 0) const {
    std::size_t k = std::min(pos_ + ahead, toks().size() - 1);
    return toks()[k];
  }
  const std::vector<Token>& toks() const { return macro_toks_ ? *macro_toks_ : toks_; }
  const Token& next() {
    const Token& t = peek();
    if (t.kind != TokKind::kEnd) ++pos_;
    return t;
  }
  bool at_end() const { return peek().kind == TokKind::kEnd; }
  bool is_punct(std::string_view p, std::size_t ahead = 0) const {
    return peek(ahead).kind == TokKind::kPunct && peek(ahead).text == p;
  }
  bool is_kw(std::string_view k) const {
    return peek().kind == TokKind::kIdent && peek().text == k;
  }
  [[noreturn]] void fail(const std::string& msg) const {
    throw SyntaxError(msg, peek().line, peek().col);
  }
  void expect(std::string_view p) {
    if (!is_punct(p)) {
      fail("expected '" + std::string(p) + "', found '" +
           (at_end() ? std::string("end of input") : peek().text) + "'");
    }
    next();
  }
  Token expect_ident() {
    if (peek().kind != TokKind::kIdent || kKeywords.contains(peek().text)) {
      fail("expected identifier, found '" + peek().text + "'");
    }
    return next();
  }
  void skip_type() {
    if (is_punct(":")) {
      next();
      expect_ident();
    }
  }
  bool parse_private_flag() {
    if (!is_punct("[")) return false;
    next();
    if (!is_kw("private")) fail("expected 'private'");
    next();
    expect("]");
    return true;
  }
  void check_fresh_global(const Token& t) {
    if (m_.sig.find(t.text) || free_set_.contains(t.text) || macros_.contains(t.text)) {
      throw SyntaxError("'" + t.text + "' is already declared", t.line, t.col);
    }
  }

  // Declarations -----------------------------------------------------------
  void parse_free() {
    next();
    std::vector<Token> names{expect_ident()};
    while (is_punct(",")) {
      next();
      names.push_back(expect_ident());
    }
    skip_type();
    bool priv = parse_private_flag();
    expect(".");
    for (const auto& n : names) {
      check_fresh_global(n);
      free_set_.insert(n.text);
      m_.free_names.push_back({n.text, priv});
    }
  }

  void parse_fun() {
    next();
    Token name = expect_ident();
    expect("/");
    if (peek().kind != TokKind::kInt) fail("expected arity");
    std::uint32_t arity = static_cast<std::uint32_t>(std::stoul(next().text));
    bool priv = parse_private_flag();
    expect(".");
    check_fresh_global(name);
    m_.sig.add(Symbol{name.text, arity, SymbolKind::kConstructor, priv, {}});
  }

  bool at_declaration_start() const {
    return at_end() || is_kw("free") || is_kw("fun") || is_kw("reduc") || is_kw("let") ||
           is_kw("process");
  }

  void parse_reduc() {
    next();
    while (true) {
      parse_rule();
      if (is_punct(".")) {
        next();
        return;
      }
      expect(";");
      if (at_declaration_start()) return;
    }
  }

  void parse_rule() {
    if (is_kw("forall")) {
      // Typed variable declarations are implied by usage.
      while (!is_punct(";") && !at_end()) next();
      expect(";");
    }
    Token head = expect_ident();
    std::map<std::string, std::uint32_t> vars;
    rule_vars_ = &vars;
    expect("(");
    std::vector<TermId> lhs;
    if (!is_punct(")")) {
      lhs.push_back(parse_term());
      while (is_punct(",")) {
        next();
        lhs.push_back(parse_term());
      }
    }
    expect(")");
    expect("=");
    std::set<std::uint32_t> lhs_vars;
    for (const auto& [_, b] : vars) lhs_vars.insert(b);
    TermId rhs = parse_term();
    rule_vars_ = nullptr;
    for (const auto& [name, b] : vars) {
      if (!lhs_vars.contains(b)) {
        throw UnboundIdentifier("rule variable '" + name + "' does not occur on the left",
                                head.line, head.col);
      }
    }

    auto sym = m_.sig.find(head.text);
    std::uint32_t id;
    if (!sym) {
      if (free_set_.contains(head.text) || macros_.contains(head.text)) {
        throw SyntaxError("'" + head.text + "' is already declared", head.line, head.col);
      }
      id = m_.sig.add(Symbol{head.text, static_cast<std::uint32_t>(lhs.size()),
                             SymbolKind::kDestructor, false, {}});
    } else {
      id = *sym;
      Symbol& s = m_.sig.at(id);
      if (s.arity != lhs.size()) {
        throw ArityMismatch("'" + head.text + "' expects " + std::to_string(s.arity) +
                                " arguments, got " + std::to_string(lhs.size()),
                            head.line, head.col);
      }
      if (s.kind == SymbolKind::kConstructor) s.kind = SymbolKind::kEquational;
    }
    m_.sig.at(id).rules.push_back(RewriteRule{std::move(lhs), rhs});
  }

  void parse_macro() {
    next();
    Token name = expect_ident();
    check_fresh_global(name);
    Macro mac;
    if (is_punct("(")) {
      next();
      if (!is_punct(")")) {
        mac.params.push_back(expect_ident().text);
        skip_type();
        while (is_punct(",")) {
          next();
          mac.params.push_back(expect_ident().text);
          skip_type();
        }
      }
      expect(")");
    }
    expect("=");
    int depth = 0;
    while (!(depth == 0 && is_punct("."))) {
      if (at_end()) fail("unterminated definition of '" + name.text + "'");
      if (is_punct("(") || is_punct("[")) ++depth;
      if (is_punct(")") || is_punct("]")) --depth;
      if (depth < 0) fail("unbalanced ')'");
      mac.body.push_back(next());
    }
    Token end = next();
    end.kind = TokKind::kEnd;
    mac.body.push_back(end);
    macros_.emplace(name.text, std::move(mac));
  }

  // Scope ------------------------------------------------------------------
  std::uint32_t bind(const std::string& name, BinderKind kind) {
    std::uint32_t b = m_.add(Binder{name, kind});
    scope_.emplace_back(name, b);
    return b;
  }
  std::optional<std::uint32_t> resolve(const std::string& name) const {
    for (auto it = scope_.rbegin(); it != scope_.rend(); ++it) {
      if (it->first == name) return it->second;
    }
    return std::nullopt;
  }

  // Terms ------------------------------------------------------------------
  TermId parse_term() {
    const Token& t = peek();
    if (is_punct("(")) {
      next();
      std::vector<TermId> items{parse_term()};
      while (is_punct(",")) {
        next();
        items.push_back(parse_term());
      }
      expect(")");
      if (items.size() == 1) return items[0];
      return m_.pool.tuple(std::move(items));
    }
    if (is_kw("choice")) {
      if (rule_vars_) fail("choice is not allowed in rewrite rules");
      next();
      expect("[");
      TermId l = parse_term();
      expect(",");
      TermId r = parse_term();
      expect("]");
      if (m_.pool.at(l).kind == TermKind::kChoice || m_.pool.at(r).kind == TermKind::kChoice) {
        throw SyntaxError("choice directly inside choice", t.line, t.col);
      }
      return m_.pool.choice(l, r);
    }
    Token id = expect_ident();
    if (is_punct("(")) {
      next();
      std::vector<TermId> args;
      if (!is_punct(")")) {
        args.push_back(parse_term());
        while (is_punct(",")) {
          next();
          args.push_back(parse_term());
        }
      }
      expect(")");
      auto sym = m_.sig.find(id.text);
      if (!sym) throw UnboundIdentifier("unknown function '" + id.text + "'", id.line, id.col);
      check_arity(*sym, args.size(), id);
      return m_.pool.fun(*sym, std::move(args));
    }
    if (rule_vars_) {
      if (auto sym = m_.sig.find(id.text)) {
        check_arity(*sym, 0, id);
        return m_.pool.fun(*sym, {});
      }
      auto it = rule_vars_->find(id.text);
      if (it == rule_vars_->end()) {
        it = rule_vars_->emplace(id.text, m_.add(Binder{id.text, BinderKind::kRuleVariable}))
                 .first;
      }
      return m_.pool.var(it->second);
    }
    if (auto b = resolve(id.text)) return m_.pool.var(*b);
    if (free_set_.contains(id.text)) return m_.pool.name(id.text);
    if (auto sym = m_.sig.find(id.text)) {
      check_arity(*sym, 0, id);
      return m_.pool.fun(*sym, {});
    }
    throw UnboundIdentifier("unbound identifier '" + id.text + "'", id.line, id.col);
  }

  void check_arity(std::uint32_t sym, std::size_t got, const Token& at) {
    const Symbol& s = m_.sig.at(sym);
    if (s.arity != got) {
      throw ArityMismatch("'" + s.name + "' expects " + std::to_string(s.arity) +
                              " arguments, got " + std::to_string(got),
                          at.line, at.col);
    }
  }

  // Patterns bind after the whole pattern is read; `=t` terms see the outer
  // scope.
  PatternId parse_pattern(std::vector<std::pair<std::string, std::uint32_t>>& pending) {
    if (is_punct("=")) {
      next();
      return m_.add(PatternNode{PatternKind::kEquals, kNone, {}, parse_term()});
    }
    if (is_punct("(")) {
      next();
      std::vector<PatternId> items{parse_pattern(pending)};
      while (is_punct(",")) {
        next();
        items.push_back(parse_pattern(pending));
      }
      expect(")");
      if (items.size() == 1) return items[0];
      return m_.add(PatternNode{PatternKind::kTuple, kNone, std::move(items), kNoTerm});
    }
    Token id = expect_ident();
    skip_type();
    std::uint32_t b = m_.add(Binder{id.text, BinderKind::kVariable});
    pending.emplace_back(id.text, b);
    return m_.add(PatternNode{PatternKind::kVar, b, {}, kNoTerm});
  }

  // Processes --------------------------------------------------------------
  ProcId parse_par() {
    ProcId p = parse_seq();
    while (is_punct("|")) {
      next();
      ProcId q = parse_seq();
      p = m_.add(ProcNode{ProcKind::kPar, kNone, kNone, kNoTerm, kNoTerm, p, q});
    }
    return p;
  }

  // Continuation after `;` or `in`; an absent one is 0.
  ProcId parse_continuation() {
    if (is_punct(";")) {
      next();
      return parse_par();
    }
    return m_.nil();
  }

  ProcId parse_else() {
    if (is_kw("else")) {
      next();
      return parse_par();
    }
    return m_.nil();
  }

  ProcId parse_seq() {
    const Token& t = peek();
    if (t.kind == TokKind::kInt) {
      if (t.text != "0") fail("expected process");
      next();
      return m_.nil();
    }
    if (is_punct("(")) {
      next();
      ProcId p = parse_par();
      expect(")");
      return p;
    }
    if (is_punct("!")) {
      next();
      ProcId p = parse_seq();
      return m_.add(ProcNode{ProcKind::kRepl, kNone, kNone, kNoTerm, kNoTerm, p, kNone});
    }
    if (is_kw("new")) {
      next();
      Token id = expect_ident();
      skip_type();
      std::size_t mark = scope_.size();
      std::uint32_t b = bind(id.text, BinderKind::kName);
      expect(";");
      ProcId p = parse_par();
      scope_.resize(mark);
      return m_.add(ProcNode{ProcKind::kNew, b, kNone, kNoTerm, kNoTerm, p, kNone});
    }
    if (is_kw("out")) {
      next();
      expect("(");
      TermId ch = parse_term();
      expect(",");
      TermId msg = parse_term();
      expect(")");
      ProcId p = parse_continuation();
      return m_.add(ProcNode{ProcKind::kOut, kNone, kNone, ch, msg, p, kNone});
    }
    if (is_kw("in")) {
      next();
      expect("(");
      TermId ch = parse_term();
      expect(",");
      std::vector<std::pair<std::string, std::uint32_t>> pending;
      PatternId pat = parse_pattern(pending);
      expect(")");
      std::size_t mark = scope_.size();
      const PatternNode& pn = m_.patterns[pat];
      if (pn.kind == PatternKind::kVar) {
        std::uint32_t b = pn.binder;
        for (auto& v : pending) scope_.push_back(v);
        ProcId p = parse_continuation();
        scope_.resize(mark);
        return m_.add(ProcNode{ProcKind::kIn, b, kNone, ch, kNoTerm, p, kNone});
      }
      // in(c, pattern); P is in(c, x); let pattern = x in P.
      std::uint32_t x = m_.add(Binder{"x", BinderKind::kVariable});
      for (auto& v : pending) scope_.push_back(v);
      ProcId p = parse_continuation();
      scope_.resize(mark);
      ProcId let = m_.add(
          ProcNode{ProcKind::kLet, kNone, pat, m_.pool.var(x), kNoTerm, p, m_.nil()});
      return m_.add(ProcNode{ProcKind::kIn, x, kNone, ch, kNoTerm, let, kNone});
    }
    if (is_kw("let")) {
      next();
      std::vector<std::pair<std::string, std::uint32_t>> pending;
      PatternId pat = parse_pattern(pending);
      expect("=");
      TermId value = parse_term();
      if (!is_kw("in")) fail("expected 'in'");
      next();
      std::size_t mark = scope_.size();
      for (auto& v : pending) scope_.push_back(v);
      ProcId p = parse_par();
      scope_.resize(mark);
      ProcId q = m_.patterns[pat].kind == PatternKind::kVar ? m_.nil() : parse_else();
      return m_.add(ProcNode{ProcKind::kLet, kNone, pat, value, kNoTerm, p, q});
    }
    if (is_kw("if")) {
      next();
      TermId a = parse_term();
      bool negated = false;
      if (is_punct("<>")) {
        negated = true;
      } else if (!is_punct("=")) {
        fail("expected '=' or '<>' in condition");
      }
      next();
      TermId b = parse_term();
      if (!is_kw("then")) fail("expected 'then'");
      next();
      ProcId p = parse_par();
      ProcId q = parse_else();
      if (negated) std::swap(p, q);
      return m_.add(ProcNode{ProcKind::kCond, kNone, kNone, a, b, p, q});
    }
    if (t.kind == TokKind::kIdent && !kKeywords.contains(t.text)) return expand_macro();
    fail(at_end() ? "expected process, found end of input"
                  : "expected process, found '" + t.text + "'");
  }

  ProcId expand_macro() {
    Token id = next();
    auto it = macros_.find(id.text);
    if (it == macros_.end()) {
      throw UnboundIdentifier("unknown process '" + id.text + "'", id.line, id.col);
    }
    const Macro& mac = it->second;
    std::vector<TermId> args;
    if (is_punct("(")) {
      next();
      if (!is_punct(")")) {
        args.push_back(parse_term());
        while (is_punct(",")) {
          next();
          args.push_back(parse_term());
        }
      }
      expect(")");
    }
    if (args.size() != mac.params.size()) {
      throw ArityMismatch("'" + id.text + "' expects " + std::to_string(mac.params.size()) +
                              " arguments, got " + std::to_string(args.size()),
                          id.line, id.col);
    }
    if (expansion_depth_ > 64) throw SyntaxError("recursive process definition", id.line, id.col);

    std::size_t mark = scope_.size();
    std::vector<std::uint32_t> params;
    for (const auto& name : mac.params) params.push_back(bind(name, BinderKind::kVariable));

    const std::vector<Token>* saved_toks = macro_toks_;
    std::size_t saved_pos = pos_;
    macro_toks_ = &mac.body;
    pos_ = 0;
    ++expansion_depth_;
    ProcId body = parse_par();
    if (!at_end()) fail("unexpected input in definition of '" + id.text + "'");
    --expansion_depth_;
    macro_toks_ = saved_toks;
    pos_ = saved_pos;
    scope_.resize(mark);

    for (std::size_t i = params.size(); i-- > 0;) {
      PatternId pat = m_.add(PatternNode{PatternKind::kVar, params[i], {}, kNoTerm});
      body = m_.add(ProcNode{ProcKind::kLet, kNone, pat, args[i], kNoTerm, body, m_.nil()});
    }
    return body;
  }

  std::vector<Token> toks_;
  const std::vector<Token>* macro_toks_ = nullptr;
  std::size_t pos_ = 0;
  Model m_;
  std::set<std::string> free_set_;
  std::map<std::string, Macro> macros_;
  std::vector<std::pair<std::string, std::uint32_t>> scope_;
  std::map<std::string, std::uint32_t>* rule_vars_ = nullptr;
  int expansion_depth_ = 0;
};

}  // namespace

Model parse_model(std::string_view source) { return Parser(source).run(); }

namespace {

std::string strip_index(const std::string& base) {
  std::size_t u = base.rfind('_');
  if (u == std::string::npos || u + 1 == base.size() || u == 0) return base;
  for (std::size_t i = u + 1; i < base.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(base[i]))) return base;
  }
  return base.substr(0, u);
}

class Printer {
 public:
  explicit Printer(const Model& m) : m_(m), names_(m.binders.size()) {
    for (std::size_t i = 0; i < m.binders.size(); ++i) names_[i] = m.binders[i].base;
  }

  std::string declarations() {
    std::string out;
    for (const auto& f : m_.free_names) {
      out += "free " + f.name + (f.is_private ? " [private]" : "") + ".\n";
    }
    for (std::uint32_t s = 0; s < m_.sig.size(); ++s) {
      const Symbol& sym = m_.sig.at(s);
      if (sym.kind == SymbolKind::kDestructor) continue;
      out += "fun " + sym.name + "/" + std::to_string(sym.arity) +
             (sym.is_private ? " [private]" : "") + ".\n";
    }
    for (std::uint32_t s = 0; s < m_.sig.size(); ++s) {
      const Symbol& sym = m_.sig.at(s);
      if (sym.rules.empty()) continue;
      out += "reduc ";
      for (std::size_t r = 0; r < sym.rules.size(); ++r) {
        if (r) out += ";\n      ";
        out += sym.name + "(";
        for (std::size_t i = 0; i < sym.rules[r].lhs.size(); ++i) {
          if (i) out += ", ";
          out += term(sym.rules[r].lhs[i]);
        }
        out += ") = " + term(sym.rules[r].rhs);
      }
      out += ".\n";
    }
    return out;
  }

  std::string process(ProcId p) {
    const ProcNode& n = m_.procs[p];
    switch (n.kind) {
      case ProcKind::kNil:
        return "0";
      case ProcKind::kPar:
        return "(" + process(n.p) + ") | (" + process(n.q) + ")";
      case ProcKind::kRepl:
        return "!(" + process(n.p) + ")";
      case ProcKind::kNew: {
        std::string b = declare(n.binder);
        return "new " + b + "; " + process(n.p);
      }
      case ProcKind::kLet: {
        std::string value = term(n.t1);
        std::string pat = pattern(n.pattern);
        std::string out = "let " + pat + " = " + value + " in (" + process(n.p) + ")";
        if (m_.patterns[n.pattern].kind != PatternKind::kVar) {
          out += " else (" + process(n.q) + ")";
        }
        return out;
      }
      case ProcKind::kCond:
        return "if " + term(n.t1) + " = " + term(n.t2) + " then (" + process(n.p) +
               ") else (" + process(n.q) + ")";
      case ProcKind::kIn: {
        std::string ch = term(n.t1);
        std::string b = declare(n.binder);
        return "in(" + ch + ", " + b + ")" + continuation(n.p);
      }
      case ProcKind::kOut:
        return "out(" + term(n.t1) + ", " + term(n.t2) + ")" + continuation(n.p);
    }
    return "0";
  }

 private:
  std::string continuation(ProcId p) {
    if (m_.procs[p].kind == ProcKind::kNil) return "";
    return "; " + process(p);
  }

  std::string declare(std::uint32_t b) {
    names_[b] = strip_index(m_.binders[b].base) + "_" + std::to_string(counter_++);
    return names_[b];
  }

  // Equality tests are printed before the pattern's own binders are named.
  std::string pattern(PatternId p) {
    const PatternNode& n = m_.patterns[p];
    switch (n.kind) {
      case PatternKind::kVar:
        return declare(n.binder);
      case PatternKind::kEquals:
        return "=" + term(n.term);
      case PatternKind::kTuple: {
        std::vector<std::string> parts;
        for (PatternId c : n.items) {
          if (m_.patterns[c].kind == PatternKind::kEquals) parts.push_back(pattern(c));
          else parts.emplace_back();
        }
        for (std::size_t i = 0; i < n.items.size(); ++i) {
          if (m_.patterns[n.items[i]].kind != PatternKind::kEquals) parts[i] = pattern(n.items[i]);
        }
        std::string out = "(";
        for (std::size_t i = 0; i < parts.size(); ++i) {
          if (i) out += ", ";
          out += parts[i];
        }
        return out + ")";
      }
    }
    return "";
  }

  std::string term(TermId t) { return to_string(m_.pool, m_.sig, t, &names_); }

  const Model& m_;
  std::vector<std::string> names_;
  std::uint32_t counter_ = 0;
};

}  // namespace

std::string pretty_process(const Model& m, ProcId p) { return Printer(m).process(p); }

std::string pretty(const Model& m) {
  Printer printer(m);
  std::string out = printer.declarations();
  out += "process\n  " + printer.process(m.root) + "\n";
  return out;
}

}  // namespace umtslab::picalc
