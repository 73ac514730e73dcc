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

#ifndef UMTSLAB_ATTACKS_HPP_
#define UMTSLAB_ATTACKS_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "umtslab/netsim.hpp"
#include "umtslab/protocol.hpp"

namespace umtslab::attacks {

enum class LinkVerdict { kSameAsVictim, kDifferent, kUndetermined };
std::string_view verdict_name(LinkVerdict v);

struct Challenge {
  crypto::Rand rand;
  Autn autn;
  friend bool operator==(const Challenge&, const Challenge&) = default;
};

class NoChallengeObserved : public Error {
 public:
  NoChallengeObserved() : Error("no AUTH_REQ observed in transcript") {}
};

// First AUTH_REQ on the link, byte-exact.
Challenge capture_victim_challenge(const netsim::Transcript& t);

// Verdict from the reply bytes alone.
LinkVerdict classify_reply(ByteView reply);

// Re-sends the challenge verbatim to target_ms and classifies the reply.
// Throws ConfigError if variant is not the protocol target_ms runs.
LinkVerdict replay_and_classify(MsState& target_ms, const Challenge& challenge,
                                ProtocolVariant variant);

// Injects an identity request; nullopt when the MS does not answer.
std::optional<Imsi> imsi_catch(MsState& target_ms);

// Script for a two-session scenario: let the first session run honestly,
// let the second MS announce itself, replace the SN's fresh challenge with
// the captured one and drop the reply.
std::vector<netsim::AdversaryAction> linkability_script();
// Bytes of the MS reply to the first adversary-sent message, if any.
std::optional<Bytes> reply_to_injection(const netsim::Transcript& t);

// Script that replaces the challenge of each of n sessions with an identity
// request and, when the MS is expected to answer, drops the answer.
std::vector<netsim::AdversaryAction> imsi_catcher_script(std::size_t sessions, bool answered);
// IMSIs read from IDENTITY_RES messages in the adversary view.
std::vector<Imsi> caught_imsis(const std::vector<Bytes>& view);

struct AttackTrial {
  std::size_t trial = 0;
  bool same = false;  // ground truth: the second session is the victim's
  LinkVerdict verdict = LinkVerdict::kUndetermined;
  Bytes reply;
};

struct AttackReport {
  ProtocolVariant variant = ProtocolVariant::kOriginal;
  std::uint64_t seed = 0;
  std::size_t trials = 0;
  std::size_t correct = 0;
  std::size_t same_as_victim = 0;
  std::size_t different = 0;
  std::size_t undetermined = 0;
  double accuracy = 0.0;
  std::vector<AttackTrial> log;
};

// Runs the linkability attack over netsim with two subscribers per trial.
AttackReport run_linkability_attack(ProtocolVariant variant, std::size_t trials,
                                    std::uint64_t seed, unsigned jobs = 1);

std::string attack_report_to_json(const AttackReport& r);

}  // namespace umtslab::attacks

#endif  // UMTSLAB_ATTACKS_HPP_
