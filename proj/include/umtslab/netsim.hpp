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

#ifndef UMTSLAB_NETSIM_HPP_
#define UMTSLAB_NETSIM_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "umtslab/bytes.hpp"
#include "umtslab/protocol.hpp"

namespace umtslab::netsim {

enum class Role { kMs, kSn, kAdversary };
std::string_view role_name(Role r);

enum class ActionKind { kDeliver, kDrop, kInject, kReplay, kEavesdrop };
std::string_view action_name(ActionKind a);

// Recipient of injected or replayed bytes. For the MS side, an absent index
// means the MS of the session currently running.
struct Target {
  Role role = Role::kMs;
  std::optional<std::size_t> ms;
  friend bool operator==(const Target&, const Target&) = default;
};

struct AdversaryAction {
  ActionKind kind = ActionKind::kDeliver;
  Bytes bytes;             // kInject
  std::size_t step = 0;    // kReplay: index of an earlier transcript event
  Target to;               // kInject, kReplay

  static AdversaryAction deliver() { return {}; }
  static AdversaryAction drop() { return {ActionKind::kDrop, {}, 0, {}}; }
  static AdversaryAction eavesdrop() { return {ActionKind::kEavesdrop, {}, 0, {}}; }
  static AdversaryAction inject(Bytes b, Target to = {}) {
    return {ActionKind::kInject, std::move(b), 0, to};
  }
  static AdversaryAction replay(std::size_t step, Target to = {}) {
    return {ActionKind::kReplay, {}, step, to};
  }
  friend bool operator==(const AdversaryAction&, const AdversaryAction&) = default;
};

struct SimConfig {
  std::uint64_t seed = 1;
  ProtocolVariant variant = ProtocolVariant::kOriginal;
  std::size_t n_subscribers = 1;
  // Subscriber index per session, in order. Empty: every subscriber once.
  std::vector<std::size_t> sessions;
  std::vector<AdversaryAction> script;
  // Optional fixed IMSIs, one per subscriber; random otherwise.
  std::vector<Imsi> imsis;
  // Enables the identity procedure on both sides.
  bool identity_requests = true;
  std::size_t step_bound = 10'000;
};

class StepBoundExceeded : public Error {
 public:
  explicit StepBoundExceeded(std::size_t bound)
      : Error("scenario exceeded step bound of " + std::to_string(bound)) {}
};

struct Event {
  std::size_t step = 0;
  Role sender = Role::kMs;
  Role receiver = Role::kSn;
  std::size_t session = 0;
  std::size_t subscriber = 0;  // the MS end of the link
  Bytes bytes;
  ActionKind action = ActionKind::kDeliver;
  friend bool operator==(const Event&, const Event&) = default;
};

struct SessionOutcome {
  std::size_t session = 0;
  std::size_t subscriber = 0;
  std::string outcome;  // "accepted", "rejected" or "resynchronized"
  friend bool operator==(const SessionOutcome&, const SessionOutcome&) = default;
};

struct Transcript {
  std::vector<Event> events;
  std::vector<SessionOutcome> outcomes;
  std::vector<Imsi> imsis;
  friend bool operator==(const Transcript&, const Transcript&) = default;
};

// Throws ConfigError on an invalid configuration or script, and
// StepBoundExceeded when the run does not become quiescent in time.
Transcript run_scenario(const SimConfig& cfg);

// Every byte string that crossed the radio link, in order.
std::vector<Bytes> adversary_view(const Transcript& t);

// Scenario file: {seed, variant, n_subscribers, script: [{action, args}], ...}.
SimConfig parse_scenario(std::string_view json_text);
std::string scenario_to_json(const SimConfig& cfg);
// JSON array of events with hex payloads.
std::string transcript_to_json(const Transcript& t);
// One event per line.
std::string transcript_to_jsonl(const Transcript& t);

}  // namespace umtslab::netsim

#endif  // UMTSLAB_NETSIM_HPP_
