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

#ifndef UMTSLAB_PICALC_SEMANTICS_HPP_
#define UMTSLAB_PICALC_SEMANTICS_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "umtslab/picalc/ast.hpp"

namespace umtslab::picalc {

struct Bounds {
  std::uint32_t repl = 2;     // unfoldings per syntactic replication
  std::uint32_t depth = 3;    // constructor layers the attacker may add
  std::uint64_t steps = 10000;
};

// A live process: `label` names its position (p, p.0, p.1!0, ...) and is the
// same on both sides of a biprocess.
struct Thread {
  std::string label;
  ProcId proc;
  Env env;
  std::uint32_t copies = 0;  // unfoldings of this replication
};

struct BranchRecord {
  std::string label;
  ProcId node;
  bool taken;  // then/in branch
};

// One projection of a biprocess: the live threads, the frame of messages the
// attacker has received, and the unfold count per replication node. Fresh
// names are <base>#<binder>@<label>, so both sides generate the same names.
struct Config {
  Side side = Side::kLeft;
  std::vector<Thread> threads;  // sorted by label after normalize
  std::vector<TermId> frame;
  std::map<ProcId, std::uint32_t> unfolds;
  std::vector<BranchRecord> branches;
};

enum class ActionKind : std::uint8_t { kUnfold, kOutput, kInput, kComm };

struct Action {
  ActionKind kind;
  std::string label;
  std::string label2;      // kComm: receiving thread
  TermId recipe = kNoTerm;  // kInput
};

std::string action_name(ActionKind k);
std::string describe(const Model& m, const Action& a);

Config initial_config(Model& m, Side side);

// Runs every internal step (0, |, new, let, if) to completion.
void normalize(Model& m, Config& c);

const Thread* find_thread(const Config& c, const std::string& label);

// Channel and message of a thread at an output whose terms evaluate.
std::optional<std::pair<TermId, TermId>> output_values(Model& m, const Thread& t, Side side);
std::optional<TermId> input_channel(Model& m, const Thread& t, Side side);

// Public free names and public constants.
bool public_atom(const Model& m, TermId t);

// Public atoms are derivable without looking at the frame.
bool channel_deducible(Model& m, const std::vector<TermId>& frame, TermId channel,
                       std::uint32_t depth);

// Applies one action. Returns false if it is not enabled. The caller
// normalizes afterwards.
bool apply(Model& m, Config& c, const Action& a, const Bounds& b);

// Reduction successors of a configuration, followed by normalization. Attacker
// inputs range over `inputs` (recipes against the frame).
std::vector<Config> step(Model& m, const Config& c, const Bounds& b,
                         const std::vector<TermId>& inputs);

}  // namespace umtslab::picalc

#endif  // UMTSLAB_PICALC_SEMANTICS_HPP_
