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

#include "umtslab/games.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <functional>

#include "umtslab/attacks.hpp"
#include "umtslab/netsim.hpp"
#include "umtslab/parallel.hpp"

namespace umtslab::games {

using netsim::AdversaryAction;

std::string_view kind_name(GameKind k) {
  return k == GameKind::kUnlinkability ? "unlinkability" : "anonymity";
}

std::optional<GameKind> parse_kind(std::string_view name) {
  if (name == "unlinkability") return GameKind::kUnlinkability;
  if (name == "anonymity") return GameKind::kAnonymity;
  return std::nullopt;
}

double advantage(std::size_t successes, std::size_t trials) {
  if (trials == 0) return 0.0;
  return std::fabs(2.0 * static_cast<double>(successes) / static_cast<double>(trials) - 1.0);
}

namespace {

using View = std::vector<Bytes>;

// A strategy sees only the link bytes and public knowledge.
struct Strategy {
  std::string name;
  // Scripts may depend on the public game parameters only.
  std::function<std::vector<AdversaryAction>(std::size_t sessions, bool identity_requests)>
      script;
  std::function<int(const View& view, Rng& rng)> guess;
};

std::vector<AdversaryAction> honest(std::size_t, bool) { return {}; }

int coin(Rng& rng) { return rng.coin() ? 1 : 0; }

std::vector<Tmsi> announced_tmsis(const View& view) {
  std::vector<Tmsi> out;
  for (const auto& bytes : view) {
    auto m = decode(bytes);
    if (!m) continue;
    if (const auto* lu = std::get_if<msg::LocationUpdate>(&*m)) out.push_back(lu->tmsi);
  }
  return out;
}

bool mentions_known_imsi(const View& view) {
  auto ids = attacks::caught_imsis(view);
  return std::find(ids.begin(), ids.end(), kKnownImsi) != ids.end();
}

// Replays the first session's challenge into every later session.
std::vector<AdversaryAction> replay_script(std::size_t sessions, bool) {
  std::vector<AdversaryAction> script = attacks::linkability_script();
  for (std::size_t s = 2; s < sessions; ++s) {
    script.push_back(AdversaryAction::deliver());
    script.push_back(AdversaryAction::replay(1));
    script.push_back(AdversaryAction::drop());
  }
  return script;
}

Strategy random_guess() {
  return {"random-guess", honest, [](const View&, Rng& rng) { return coin(rng); }};
}

std::vector<Strategy> unlinkability_strategies() {
  return {
      {"replay", replay_script,
       [](const View& view, Rng& rng) {
         switch (attacks::classify_reply(view.back())) {
           case attacks::LinkVerdict::kSameAsVictim: return 0;
           case attacks::LinkVerdict::kDifferent: return 1;
           case attacks::LinkVerdict::kUndetermined: break;
         }
         return coin(rng);
       }},
      random_guess(),
      {"passive", honest,
       [](const View& view, Rng&) {
         auto tmsis = announced_tmsis(view);
         return tmsis.size() >= 2 && tmsis[0] == tmsis[1] ? 0 : 1;
       }},
      {"imsi-catcher", attacks::imsi_catcher_script,
       [](const View& view, Rng& rng) {
         auto ids = attacks::caught_imsis(view);
         if (ids.size() < 2) return coin(rng);
         return ids[0] == ids[1] ? 0 : 1;
       }},
  };
}

std::vector<Strategy> anonymity_strategies() {
  return {
      {"replay", replay_script,
       [](const View& view, Rng& rng) { return mentions_known_imsi(view) ? 1 : coin(rng); }},
      random_guess(),
      {"passive", honest,
       [](const View& view, Rng& rng) { return mentions_known_imsi(view) ? 1 : coin(rng); }},
      {"imsi-catcher", attacks::imsi_catcher_script,
       [](const View& view, Rng& rng) {
         if (attacks::caught_imsis(view).empty()) return coin(rng);
         return mentions_known_imsi(view) ? 1 : 0;
       }},
  };
}

const Strategy& find_strategy(GameKind kind, const std::string& name) {
  static const std::vector<Strategy> unlink = unlinkability_strategies();
  static const std::vector<Strategy> anon = anonymity_strategies();
  const auto& list = kind == GameKind::kUnlinkability ? unlink : anon;
  std::string wanted = name == "random" ? "random-guess" : name;
  for (const auto& s : list) {
    if (s.name == wanted) return s;
  }
  throw UnknownStrategy(name);
}

// Builds the world for bit b. The strategy never sees this configuration.
using WorldBuilder = std::function<netsim::SimConfig(int b, Rng& rng)>;

netsim::SimConfig unlinkability_world(int b, Rng& rng) {
  netsim::SimConfig cfg;
  cfg.seed = rng.next_u64();
  if (b == 0) {
    cfg.n_subscribers = 1;
    cfg.sessions = {0, 0};
  } else {
    cfg.n_subscribers = 2;
    cfg.sessions = {0, 1};
  }
  return cfg;
}

netsim::SimConfig anonymity_world(int b, Rng& rng) {
  netsim::SimConfig cfg;
  cfg.seed = rng.next_u64();
  cfg.n_subscribers = 3;
  for (std::size_t i = 0; i < 3; ++i) {
    Imsi imsi;
    do {
      imsi = Imsi{101'000'000'000'000ULL + rng.below(100'000'000'000ULL)};
    } while (imsi == kKnownImsi ||
             std::find(cfg.imsis.begin(), cfg.imsis.end(), imsi) != cfg.imsis.end());
    cfg.imsis.push_back(imsi);
  }
  if (b == 1) cfg.imsis[rng.below(3)] = kKnownImsi;
  cfg.sessions = {0, 1, 2};
  return cfg;
}

GameResult run_game(const GameSpec& spec, GameKind kind, const WorldBuilder& world) {
  if (spec.trials == 0) throw ConfigError("trials must be at least 1");
  const Strategy& strategy = find_strategy(kind, spec.strategy);
  GameResult result;
  result.spec = spec;
  result.spec.kind = kind;
  result.trials = spec.trials;
  result.log.resize(spec.trials);

  parallel_for(spec.trials, spec.jobs, [&](std::size_t trial) {
    Rng rng(derive_seed(spec.seed, trial));
    int b = rng.coin() ? 1 : 0;
    netsim::SimConfig cfg = world(b, rng);
    cfg.variant = spec.variant;
    cfg.identity_requests = spec.identity_requests;
    cfg.script = strategy.script(cfg.sessions.size(), spec.identity_requests);
    netsim::Transcript t = netsim::run_scenario(cfg);
    int guess = strategy.guess(netsim::adversary_view(t), rng);
    result.log[trial] = GameTrial{trial, b, guess};
  });

  result.successes = static_cast<std::size_t>(std::count_if(
      result.log.begin(), result.log.end(), [](const GameTrial& t) { return t.b == t.guess; }));
  result.advantage = advantage(result.successes, result.trials);
  return result;
}

}  // namespace

std::vector<std::string> strategy_names(GameKind kind) {
  std::vector<std::string> out;
  for (const auto& s : kind == GameKind::kUnlinkability ? unlinkability_strategies()
                                                       : anonymity_strategies()) {
    out.push_back(s.name);
  }
  return out;
}

GameResult play_unlinkability(const GameSpec& spec) {
  return run_game(spec, GameKind::kUnlinkability, unlinkability_world);
}

GameResult play_anonymity(const GameSpec& spec) {
  return run_game(spec, GameKind::kAnonymity, anonymity_world);
}

GameResult play(const GameSpec& spec) {
  return spec.kind == GameKind::kUnlinkability ? play_unlinkability(spec) : play_anonymity(spec);
}

std::string game_result_to_json(const GameResult& r, bool with_log) {
  using nlohmann::json;
  json j{{"kind", kind_name(r.spec.kind)},
         {"variant", variant_name(r.spec.variant)},
         {"strategy", r.spec.strategy},
         {"trials", r.trials},
         {"successes", r.successes},
         {"advantage", r.advantage},
         {"seed", r.spec.seed},
         {"identity_requests", r.spec.identity_requests}};
  if (with_log) {
    json log = json::array();
    for (const auto& t : r.log) log.push_back(json{{"trial", t.trial}, {"b", t.b}, {"guess", t.guess}});
    j["log"] = log;
  }
  return j.dump();
}

}  // namespace umtslab::games
