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

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include <gtest/gtest.h>

#include "umtslab/picalc/checker.hpp"
#include "umtslab/picalc/mutate.hpp"
#include "umtslab/picalc/parser.hpp"

namespace umtslab::picalc {
namespace {

const char* kCorpus[] = {"aka_unlinkability.pv", "aka_unlinkability_fix.pv", "aka_anonymity.pv",
                         "aka_unlinkability_nested_if.pv"};

std::string read_model(const std::string& name) {
  std::ifstream f(std::string(UMTSLAB_SOURCE_DIR) + "/models/" + name);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

TermId constant(Model& m, const std::string& name) { return m.pool.fun(*m.sig.find(name), {}); }

const char* kCrypto = R"(
free c.
free a, b, s, t.
fun macFail/0. fun synchFail/0. fun Fail/0.
fun senc/2.
reduc sdec(k, senc(k, m)) = m.
fun err/4.
reduc
   geterr( err(x, z, y, y)) = macFail;
   geterr( err(x, x, y, z)) = synchFail.
)";

TEST(Parser, ServingNetworkShape) {
  Model m = parse_model(R"(
free c. free k, sqn [private].
fun f1/2. fun f5/2.
let SN = new rand;
    let mac = f1(k, (rand, sqn)) in
    let ak = f5(k, rand) in
    let autn = (sqn, ak, mac) in
        out(c, (rand, autn));
        in(c, xres).
process SN
)");
  std::vector<ProcKind> kinds;
  for (ProcId p = m.root; p != kNone && m.procs[p].kind != ProcKind::kNil; p = m.procs[p].p) {
    kinds.push_back(m.procs[p].kind);
  }
  EXPECT_EQ(kinds, (std::vector<ProcKind>{ProcKind::kNew, ProcKind::kLet, ProcKind::kLet,
                                          ProcKind::kLet, ProcKind::kOut, ProcKind::kIn}));
}

TEST(Parser, Errors) {
  EXPECT_THROW(parse_model("free c, a. fun f1/2. process out(c, f1(a))"), ArityMismatch);
  EXPECT_THROW(parse_model("free c. process out(c, nope)"), UnboundIdentifier);
  EXPECT_THROW(parse_model("free c. process out(c, g(c))"), UnboundIdentifier);
  EXPECT_THROW(parse_model("free c, a, b. process out(c, choice[choice[a, b], a])"),
               SyntaxError);
  try {
    parse_model("free c.\nprocess\n  out(c c)");
    FAIL() << "expected SyntaxError";
  } catch (const SyntaxError& e) {
    EXPECT_EQ(e.line(), 3);
    EXPECT_EQ(e.col(), 9);
  }
}

TEST(Parser, BindersAreRenamedApart) {
  Model m = parse_model("free c. process in(c, x); in(c, x); out(c, x)");
  const ProcNode& first = m.procs[m.root];
  const ProcNode& second = m.procs[first.p];
  EXPECT_NE(first.binder, second.binder);
  EXPECT_EQ(m.procs[second.p].t2, m.pool.var(second.binder));
  EXPECT_EQ(pretty_process(m, m.root), "in(c, x_0); in(c, x_1); out(c, x_1)");
}

TEST(Parser, ElseBindsToInnermostTest) {
  Model m = parse_model(std::string(kCrypto) + R"(
process in(c, x);
  if x = a then if x = b then out(c, a) else out(c, b) else out(c, Fail)
)");
  const ProcNode& outer = m.procs[m.procs[m.root].p];
  ASSERT_EQ(outer.kind, ProcKind::kCond);
  ASSERT_EQ(m.procs[outer.p].kind, ProcKind::kCond);
  EXPECT_EQ(m.procs[outer.q].t2, constant(m, "Fail"));
}

TEST(Parser, CorpusRoundTrip) {
  for (const char* name : kCorpus) {
    SCOPED_TRACE(name);
    Model m = parse_model(read_model(name));
    std::string once = pretty(m);
    Model again = parse_model(once);
    EXPECT_EQ(pretty(again), once);
    EXPECT_EQ(again.procs.size(), m.procs.size());
  }
}

TEST(Evaluate, Destructors) {
  Model m = parse_model(std::string(kCrypto) + "process 0");
  auto fn = [&](const char* f, std::vector<TermId> args) {
    return m.pool.fun(*m.sig.find(f), std::move(args));
  };
  TermId a = m.pool.name("a"), b = m.pool.name("b"), s = m.pool.name("s"), t = m.pool.name("t");
  Env env;
  auto eval = [&](TermId x) { return evaluate(m.pool, m.sig, x, env, Side::kLeft); };
  EXPECT_EQ(eval(fn("sdec", {a, fn("senc", {a, b})})), b);
  EXPECT_EQ(eval(fn("sdec", {b, fn("senc", {a, b})})), std::nullopt);
  EXPECT_EQ(eval(fn("geterr", {fn("err", {a, b, s, s})})), constant(m, "macFail"));
  EXPECT_EQ(eval(fn("geterr", {fn("err", {a, a, s, t})})), constant(m, "synchFail"));
  EXPECT_EQ(eval(fn("geterr", {fn("err", {a, b, s, t})})), std::nullopt);
  // Both rules match; declaration order decides.
  EXPECT_EQ(eval(fn("geterr", {fn("err", {a, a, s, s})})), constant(m, "macFail"));
  EXPECT_EQ(eval(fn("senc", {a, fn("sdec", {a, b})})), std::nullopt);
  EXPECT_EQ(eval(m.pool.choice(a, b)), a);
  EXPECT_EQ(evaluate(m.pool, m.sig, m.pool.choice(a, b), env, Side::kRight), b);
}

TEST(Step, PrivateChannelCommunication) {
  Model m = parse_model("free d [private]. free a. process (out(d, a); 0) | (in(d, x); out(x, x))");
  Config c = initial_config(m, Side::kLeft);
  ASSERT_EQ(c.threads.size(), 2u);
  auto next = step(m, c, Bounds{}, {});
  ASSERT_EQ(next.size(), 1u);
  ASSERT_EQ(next[0].threads.size(), 1u);
  const Thread& t = next[0].threads[0];
  EXPECT_EQ(m.procs[t.proc].kind, ProcKind::kOut);
  EXPECT_EQ(output_values(m, t, Side::kLeft)->second, m.pool.name("a"));
}

TEST(Step, FailedLetTakesElse) {
  Model m = parse_model(std::string(kCrypto) +
                        "process let (x, y) = sdec(a, b) in out(c, x) else out(c, Fail)");
  Config c = initial_config(m, Side::kLeft);
  ASSERT_EQ(c.threads.size(), 1u);
  EXPECT_EQ(output_values(m, c.threads[0], Side::kLeft)->second, constant(m, "Fail"));
  ASSERT_EQ(c.branches.size(), 1u);
  EXPECT_FALSE(c.branches[0].taken);
}

TEST(Step, ReplicationBound) {
  Model m = parse_model("free c, a. process !out(c, a)");
  Config c = initial_config(m, Side::kLeft);
  EXPECT_TRUE(step(m, c, Bounds{0, 3, 100}, {}).empty());
  auto one = step(m, c, Bounds{1, 3, 100}, {});
  ASSERT_EQ(one.size(), 1u);
  EXPECT_EQ(one[0].threads.size(), 2u);
  EXPECT_TRUE(step(m, one[0], Bounds{1, 3, 100}, {}).size() == 1u);  // only the output
}

TEST(Knowledge, Saturate) {
  Model m = parse_model("free c. free k, n [private]. fun senc/2. reduc sdec(k, senc(k, m)) = m. "
                        "process 0");
  TermId k = m.pool.name("k"), n = m.pool.name("n");
  TermId enc = m.pool.fun(*m.sig.find("senc"), {k, n});
  auto sat = saturate(m, {k, enc}, 2);
  EXPECT_TRUE(std::binary_search(sat.begin(), sat.end(), n));
  EXPECT_EQ(saturate(m, sat, 2), sat);

  auto empty = saturate(m, {}, 3);
  std::vector<TermId> atoms = attacker_atoms(m);
  std::sort(atoms.begin(), atoms.end());
  EXPECT_TRUE(std::includes(empty.begin(), empty.end(), atoms.begin(), atoms.end()));
  EXPECT_FALSE(std::binary_search(empty.begin(), empty.end(), k));

  EXPECT_TRUE(deducible(m, {k, enc}, n, 3));
  EXPECT_FALSE(deducible(m, {enc}, n, 3));
  EXPECT_TRUE(deducible(m, {enc}, m.pool.tuple({enc, m.pool.name("c")}), 3));
}

TEST(Knowledge, StaticEquivalence) {
  Model m = parse_model(std::string(kCrypto) + "process 0");
  TermId mac = constant(m, "macFail"), syn = constant(m, "synchFail");
  TermId a = m.pool.name("a"), b = m.pool.name("b");
  TermId fresh1 = m.pool.name("n1@x"), fresh2 = m.pool.name("n2@x");
  EXPECT_TRUE(BiKnowledge(m, {mac}, {syn}, 3).distinction().has_value());
  EXPECT_FALSE(BiKnowledge(m, {fresh1}, {fresh2}, 3).distinction().has_value());
  EXPECT_TRUE(BiKnowledge(m, {fresh1, fresh1}, {fresh1, fresh2}, 3).distinction().has_value());
  TermId enc = m.pool.fun(*m.sig.find("senc"), {fresh1, a});
  TermId enc2 = m.pool.fun(*m.sig.find("senc"), {fresh1, b});
  EXPECT_FALSE(BiKnowledge(m, {enc}, {enc2}, 3).distinction().has_value());
  EXPECT_TRUE(BiKnowledge(m, {enc, fresh1}, {enc2, fresh1}, 3).distinction().has_value());
  EXPECT_TRUE(BiKnowledge(m, {m.pool.tuple({a, b})}, {fresh1}, 3).distinction().has_value());
}

CheckOptions options(Mode mode = Mode::kObservable) {
  CheckOptions o;
  o.bounds = Bounds{2, 3, 10000};
  o.mode = mode;
  return o;
}

TEST(Checker, OriginalErrorsAreLinkable) {
  Model m = parse_model(read_model("aka_unlinkability.pv"));
  CheckOptions o = options();
  o.bounds.steps = 400;
  CheckResult r = check_diff_equivalence(m, o);
  ASSERT_EQ(r.verdict, Verdict::kCounterexample);
  const Counterexample& c = *r.counterexample;
  EXPECT_TRUE(c.verified);
  EXPECT_EQ(c.event.kind, EventKind::kOutputMismatch);
  EXPECT_EQ(c.event.left_value, constant(m, "synchFail"));
  // The input that triggers it replays an earlier challenge.
  auto input = std::find_if(c.trace.begin(), c.trace.end(), [](const TraceEvent& e) {
    return e.action.kind == ActionKind::kInput;
  });
  ASSERT_NE(input, c.trace.end());
  EXPECT_NE(input->left, kNoTerm);
}

TEST(Checker, NestedChecksGiveMacFailVersusSynchFail) {
  Model m = parse_model(read_model("aka_unlinkability_nested_if.pv"));
  CheckResult r = check_diff_equivalence(m, options());
  ASSERT_EQ(r.verdict, Verdict::kCounterexample);
  const Counterexample& c = *r.counterexample;
  EXPECT_TRUE(c.verified);
  EXPECT_EQ(c.event.kind, EventKind::kStaticInequivalence);
  std::set<TermId> seen{c.event.left_value, c.event.right_value};
  EXPECT_EQ(seen, (std::set<TermId>{constant(m, "macFail"), constant(m, "synchFail")}));

  CheckResult strict = check_diff_equivalence(m, options(Mode::kStrict));
  ASSERT_EQ(strict.verdict, Verdict::kCounterexample);
  EXPECT_EQ(strict.counterexample->event.kind, EventKind::kBranchDivergence);
  EXPECT_TRUE(strict.counterexample->verified);
}

TEST(Checker, FixAndAnonymityHold) {
  for (const char* name : {"aka_unlinkability_fix.pv", "aka_anonymity.pv"}) {
    SCOPED_TRACE(name);
    Model m = parse_model(read_model(name));
    CheckResult r = check_diff_equivalence(m, options());
    EXPECT_EQ(r.verdict, Verdict::kEquivalent);
    EXPECT_LT(r.states, 1'000'000u);
  }
}

TEST(Checker, ChoiceFreeModelsAreSelfEquivalent) {
  for (const char* name : kCorpus) {
    SCOPED_TRACE(name);
    Model m = parse_model(read_model(name));
    for (ProcNode& n : m.procs) {
      if (n.t1 != kNoTerm) n.t1 = project(m.pool, n.t1, Side::kLeft);
      if (n.t2 != kNoTerm) n.t2 = project(m.pool, n.t2, Side::kLeft);
    }
    ASSERT_FALSE(has_choice(m));
    EXPECT_EQ(check_diff_equivalence(m, options(Mode::kStrict)).verdict, Verdict::kEquivalent);
  }
}

TEST(Checker, BoundExhaustion) {
  Model m = parse_model(read_model("aka_unlinkability_fix.pv"));
  CheckOptions o = options();
  o.bounds.steps = 3;
  EXPECT_EQ(check_diff_equivalence(m, o).verdict, Verdict::kBoundExhausted);
}

TEST(Checker, RejectsEquationalTheories) {
  Model m = parse_model(R"(
free c. free a, b [private]. fun xor/2. fun zero/0.
reduc xor(x, zero) = x; xor(x, x) = zero.
process out(c, choice[xor(a, b), a])
)");
  EXPECT_THROW(check_diff_equivalence(m, options()), UnsupportedTheory);
}

TEST(Checker, CounterexampleJson) {
  Model m = parse_model(read_model("aka_unlinkability.pv"));
  CheckResult r = check_diff_equivalence(m, options());
  std::string j = check_result_to_json(m, r);
  EXPECT_NE(j.find("\"verdict\":\"counterexample\""), std::string::npos);
  EXPECT_NE(j.find("\"verified\":true"), std::string::npos);
  EXPECT_NE(j.find("synchFail"), std::string::npos);
}

TEST(Checker, MutatedModelsOnlyYieldSoundCounterexamples) {
  Rng rng(1);
  int counterexamples = 0;
  for (int i = 0; i < 100; ++i) {
    Model m = parse_model(read_model(kCorpus[i % 4]));
    int rounds = 1 + static_cast<int>(rng.below(3));
    std::string what;
    for (int k = 0; k < rounds; ++k) what += mutate(m, rng) + "; ";
    SCOPED_TRACE(std::string(kCorpus[i % 4]) + ": " + what);
    CheckOptions o = options(rng.coin() ? Mode::kStrict : Mode::kObservable);
    o.max_states = 20000;
    CheckResult r = check_diff_equivalence(m, o);
    if (r.counterexample) {
      ++counterexamples;
      EXPECT_TRUE(r.counterexample->verified);
    }
  }
  EXPECT_GT(counterexamples, 10);
}

}  // namespace
}  // namespace umtslab::picalc
