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

#ifndef UMTSLAB_PICALC_CHECKER_HPP_
#define UMTSLAB_PICALC_CHECKER_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "umtslab/picalc/knowledge.hpp"
#include "umtslab/picalc/semantics.hpp"

namespace umtslab::picalc {

class UnsupportedTheory : public Error {
 public:
  using Error::Error;
};

// observable: branch differences count only once they change what the
// attacker sees. strict: any Let/Cond taking different branches is reported.
enum class Mode : std::uint8_t { kObservable, kStrict };
enum class Verdict : std::uint8_t { kEquivalent, kCounterexample, kBoundExhausted };
enum class EventKind : std::uint8_t { kOutputMismatch, kStaticInequivalence, kBranchDivergence };

std::string mode_name(Mode m);
Mode parse_mode(std::string_view s);
std::string verdict_name(Verdict v);
std::string event_kind_name(EventKind k);

// An action with the messages it moved on each side (outputs and inputs).
struct TraceEvent {
  Action action;
  TermId left = kNoTerm;
  TermId right = kNoTerm;
};

struct DistinguishingEvent {
  EventKind kind = EventKind::kOutputMismatch;
  std::string label;             // output mismatch, branch divergence
  ProcId node = kNone;           // branch divergence
  Side side = Side::kLeft;       // side that outputs / takes the first branch
  Distinction test{TestKind::kSucceeds};  // static inequivalence
  TermId left_value = kNoTerm;   // observed message or value of test.r1
  TermId right_value = kNoTerm;
  std::string left;              // behaviour on each side, human readable
  std::string right;
};

struct Counterexample {
  std::vector<TraceEvent> trace;
  DistinguishingEvent event;
  bool verified = false;
};

struct CheckOptions {
  Bounds bounds;
  Mode mode = Mode::kObservable;
  std::size_t max_states = 1'000'000;
};

struct CheckResult {
  Verdict verdict = Verdict::kEquivalent;
  std::optional<Counterexample> counterexample;
  std::size_t states = 0;
  std::size_t transitions = 0;
  std::uint64_t longest_trace = 0;
};

// Bounded diff-equivalence: both projections run in lockstep under the same
// attacker actions. Replications are unfolded before any input (unfolding
// early never removes attacker options), outputs on derivable channels are
// taken eagerly, and attacker inputs are drawn from frame replays and from
// tuples shaped like the receiver's pattern matching, with components taken
// from the same position in earlier messages or the attacker's own name.
// Every counterexample is replayed with verify_counterexample before it is
// returned. Throws UnsupportedTheory for symbols with equations.
CheckResult check_diff_equivalence(Model& m, const CheckOptions& opts);

// Replays the trace on each projection separately with `apply` and
// re-evaluates the distinguishing event.
bool verify_counterexample(Model& m, const Bounds& b, const Counterexample& c);

std::string counterexample_to_json(const Model& m, const Counterexample& c);
std::string check_result_to_json(const Model& m, const CheckResult& r);

}  // namespace umtslab::picalc

#endif  // UMTSLAB_PICALC_CHECKER_HPP_
