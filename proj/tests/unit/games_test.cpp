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

#include <gtest/gtest.h>

namespace umtslab::games {
namespace {

constexpr ProtocolVariant kVariants[] = {ProtocolVariant::kOriginal,
                                         ProtocolVariant::kUnifiedError,
                                         ProtocolVariant::kPkEncryptedError};

GameSpec spec(GameKind kind, ProtocolVariant v, std::string strategy, std::size_t trials = 1000) {
  GameSpec s;
  s.kind = kind;
  s.variant = v;
  s.strategy = std::move(strategy);
  s.trials = trials;
  return s;
}

TEST(Games, AdvantageFormula) {
  EXPECT_DOUBLE_EQ(advantage(10, 10), 1.0);
  EXPECT_DOUBLE_EQ(advantage(0, 10), 1.0);
  EXPECT_DOUBLE_EQ(advantage(5, 10), 0.0);
  EXPECT_DOUBLE_EQ(advantage(3, 4), 0.5);
}

TEST(Games, ReplayLinksOriginalOnly) {
  EXPECT_DOUBLE_EQ(
      play_unlinkability(spec(GameKind::kUnlinkability, ProtocolVariant::kOriginal, "replay"))
          .advantage,
      1.0);
  for (auto v : {ProtocolVariant::kUnifiedError, ProtocolVariant::kPkEncryptedError}) {
    EXPECT_LE(play_unlinkability(spec(GameKind::kUnlinkability, v, "replay")).advantage, 0.05);
  }
}

TEST(Games, RandomGuessHasNoAdvantage) {
  for (auto v : kVariants) {
    for (auto kind : {GameKind::kUnlinkability, GameKind::kAnonymity}) {
      EXPECT_LE(play(spec(kind, v, "random-guess")).advantage, 0.05);
    }
  }
  EXPECT_LT(play(spec(GameKind::kUnlinkability, ProtocolVariant::kOriginal, "random-guess",
                      10'000))
                .advantage,
            0.03);
}

TEST(Games, AnonymityHoldsWithoutIdentityProcedure) {
  for (auto v : kVariants) {
    for (const auto& s : strategy_names(GameKind::kAnonymity)) {
      EXPECT_LE(play_anonymity(spec(GameKind::kAnonymity, v, s)).advantage, 0.05) << s;
    }
  }
}

TEST(Games, ImsiCatcherBreaksAnonymity) {
  for (auto v : kVariants) {
    GameSpec s = spec(GameKind::kAnonymity, v, "imsi-catcher");
    s.identity_requests = true;
    EXPECT_DOUBLE_EQ(play_anonymity(s).advantage, 1.0);
  }
}

TEST(Games, FixesNeverLeakMoreThanOriginal) {
  for (const auto& s : strategy_names(GameKind::kUnlinkability)) {
    double original =
        play_unlinkability(spec(GameKind::kUnlinkability, ProtocolVariant::kOriginal, s))
            .advantage;
    double unified =
        play_unlinkability(spec(GameKind::kUnlinkability, ProtocolVariant::kUnifiedError, s))
            .advantage;
    EXPECT_LE(unified, original + 0.05) << s;
  }
}

TEST(Games, Reproducible) {
  GameSpec s = spec(GameKind::kAnonymity, ProtocolVariant::kPkEncryptedError, "replay", 200);
  std::string a = game_result_to_json(play(s), true);
  s.jobs = 3;
  EXPECT_EQ(game_result_to_json(play(s), true), a);
}

TEST(Games, UnknownStrategy) {
  EXPECT_THROW(play(spec(GameKind::kAnonymity, ProtocolVariant::kOriginal, "oracle")),
               UnknownStrategy);
  EXPECT_THROW(play(spec(GameKind::kAnonymity, ProtocolVariant::kOriginal, "replay", 0)),
               ConfigError);
}

}  // namespace
}  // namespace umtslab::games
