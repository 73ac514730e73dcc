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

#include "umtslab/attacks.hpp"

#include <json.hpp>

#include "umtslab/parallel.hpp"

namespace umtslab::attacks {

using netsim::AdversaryAction;
using netsim::Role;

std::string_view verdict_name(LinkVerdict v) {
  switch (v) {
    case LinkVerdict::kSameAsVictim: return "same_as_victim";
    case LinkVerdict::kDifferent: return "different";
    case LinkVerdict::kUndetermined: return "undetermined";
  }
  return "undetermined";
}

Challenge capture_victim_challenge(const netsim::Transcript& t) {
  for (const auto& e : t.events) {
    auto m = decode(e.bytes);
    if (!m) continue;
    if (const auto* req = std::get_if<msg::AuthRequest>(&*m)) {
      return Challenge{req->rand, req->autn};
    }
  }
  throw NoChallengeObserved();
}

LinkVerdict classify_reply(ByteView reply) {
  auto m = decode(reply);
  if (!m) return LinkVerdict::kUndetermined;
  if (std::holds_alternative<msg::SynchFailure>(*m)) return LinkVerdict::kSameAsVictim;
  if (std::holds_alternative<msg::MacFailure>(*m)) return LinkVerdict::kDifferent;
  return LinkVerdict::kUndetermined;
}

LinkVerdict replay_and_classify(MsState& target_ms, const Challenge& challenge,
                                ProtocolVariant variant) {
  if (target_ms.variant != variant) throw ConfigError("target MS runs a different variant");
  auto reply = ms_receive(target_ms, encode(msg::AuthRequest{challenge.rand, challenge.autn}));
  if (!reply) return LinkVerdict::kUndetermined;
  return classify_reply(encode(*reply));
}

std::optional<Imsi> imsi_catch(MsState& target_ms) {
  auto reply = ms_receive(target_ms, encode(msg::IdentityRequest{}));
  if (!reply) return std::nullopt;
  if (const auto* id = std::get_if<msg::IdentityResponse>(&*reply)) return id->imsi;
  return std::nullopt;
}

namespace {

// LOCATION_UPDATE, AUTH_REQ, AUTH_RES, TMSI_REALL_CMD, TMSI_REALL_COMPLETE.
constexpr std::size_t kHonestSessionLength = 5;
constexpr std::size_t kFirstChallengeStep = 1;

}  // namespace

std::vector<AdversaryAction> linkability_script() {
  std::vector<AdversaryAction> script(kHonestSessionLength + 1, AdversaryAction::deliver());
  script.push_back(AdversaryAction::replay(kFirstChallengeStep));
  script.push_back(AdversaryAction::drop());
  return script;
}

std::optional<Bytes> reply_to_injection(const netsim::Transcript& t) {
  bool injected = false;
  for (const auto& e : t.events) {
    if (e.sender == Role::kAdversary) {
      injected = true;
    } else if (injected && e.sender == Role::kMs) {
      return e.bytes;
    } else if (injected) {
      return std::nullopt;
    }
  }
  return std::nullopt;
}

std::vector<AdversaryAction> imsi_catcher_script(std::size_t sessions, bool answered) {
  std::vector<AdversaryAction> script;
  for (std::size_t i = 0; i < sessions; ++i) {
    script.push_back(AdversaryAction::deliver());
    script.push_back(AdversaryAction::inject(encode(msg::IdentityRequest{})));
    if (answered) script.push_back(AdversaryAction::drop());
  }
  return script;
}

std::vector<Imsi> caught_imsis(const std::vector<Bytes>& view) {
  std::vector<Imsi> out;
  for (const auto& bytes : view) {
    auto m = decode(bytes);
    if (!m) continue;
    if (const auto* id = std::get_if<msg::IdentityResponse>(&*m)) out.push_back(id->imsi);
  }
  return out;
}

AttackReport run_linkability_attack(ProtocolVariant variant, std::size_t trials,
                                    std::uint64_t seed, unsigned jobs) {
  if (trials == 0) throw ConfigError("trials must be at least 1");
  AttackReport report;
  report.variant = variant;
  report.seed = seed;
  report.trials = trials;
  report.log.resize(trials);

  parallel_for(trials, jobs, [&](std::size_t trial) {
    Rng rng(derive_seed(seed, trial));
    netsim::SimConfig cfg;
    cfg.seed = rng.next_u64();
    cfg.variant = variant;
    cfg.n_subscribers = 2;
    bool same = rng.coin();
    cfg.sessions = same ? std::vector<std::size_t>{0, 0} : std::vector<std::size_t>{0, 1};
    cfg.script = linkability_script();
    netsim::Transcript t = netsim::run_scenario(cfg);
    auto reply = reply_to_injection(t);
    AttackTrial& out = report.log[trial];
    out.trial = trial;
    out.same = same;
    out.reply = reply.value_or(Bytes{});
    out.verdict = reply ? classify_reply(*reply) : LinkVerdict::kUndetermined;
  });

  for (const auto& t : report.log) {
    switch (t.verdict) {
      case LinkVerdict::kSameAsVictim:
        ++report.same_as_victim;
        if (t.same) ++report.correct;
        break;
      case LinkVerdict::kDifferent:
        ++report.different;
        if (!t.same) ++report.correct;
        break;
      case LinkVerdict::kUndetermined:
        ++report.undetermined;
        break;
    }
  }
  report.accuracy = static_cast<double>(report.correct) / static_cast<double>(trials);
  return report;
}

std::string attack_report_to_json(const AttackReport& r) {
  using nlohmann::json;
  json log = json::array();
  for (const auto& t : r.log) {
    log.push_back(json{{"trial", t.trial},
                       {"ground_truth", t.same ? "same_as_victim" : "different"},
                       {"verdict", verdict_name(t.verdict)},
                       {"reply_hex", to_hex(t.reply)}});
  }
  json j{{"variant", variant_name(r.variant)},
         {"seed", r.seed},
         {"trials", r.trials},
         {"correct", r.correct},
         {"accuracy", r.accuracy},
         {"verdicts",
          json{{"same_as_victim", r.same_as_victim},
               {"different", r.different},
               {"undetermined", r.undetermined}}},
         {"log", log}};
  return j.dump();
}

}  // namespace umtslab::attacks
