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

#ifndef UMTSLAB_GAMES_HPP_
#define UMTSLAB_GAMES_HPP_

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "umtslab/protocol.hpp"

namespace umtslab::games {

enum class GameKind { kUnlinkability, kAnonymity };
std::string_view kind_name(GameKind k);
std::optional<GameKind> parse_kind(std::string_view name);

struct GameSpec {
  GameKind kind = GameKind::kUnlinkability;
  ProtocolVariant variant = ProtocolVariant::kOriginal;
  std::size_t trials = 1000;
  std::uint64_t seed = 1;
  std::string strategy = "replay";
  // Lets the MS answer identity requests; off by default.
  bool identity_requests = false;
  unsigned jobs = 1;
};

struct GameTrial {
  std::size_t trial = 0;
  int b = 0;
  int guess = 0;
};

struct GameResult {
  GameSpec spec;
  std::size_t successes = 0;
  std::size_t trials = 0;
  double advantage = 0.0;
  std::vector<GameTrial> log;
};

class UnknownStrategy : public ConfigError {
 public:
  explicit UnknownStrategy(const std::string& name)
      : ConfigError("unknown strategy '" + name + "'") {}
};

// Public identity of the anonymity game's known subscriber.
inline constexpr Imsi kKnownImsi{1'010'123'456'789ULL};

std::vector<std::string> strategy_names(GameKind kind);

// b=0: one subscriber runs two sessions. b=1: two subscribers run one each.
GameResult play_unlinkability(const GameSpec& spec);
// b=0: three anonymous subscribers. b=1: two anonymous subscribers and the
// known one, in random order. One session each.
GameResult play_anonymity(const GameSpec& spec);
GameResult play(const GameSpec& spec);

double advantage(std::size_t successes, std::size_t trials);

// {kind, variant, strategy, trials, successes, advantage, seed, ...}.
std::string game_result_to_json(const GameResult& r, bool with_log = false);

}  // namespace umtslab::games

#endif  // UMTSLAB_GAMES_HPP_
