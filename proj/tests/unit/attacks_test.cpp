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

#include <gtest/gtest.h>

#include <set>

namespace umtslab::attacks {
namespace {

struct Pair {
  SnState sn;
  MsState victim;
  MsState other;
};

MsState make_ms(SnState& sn, Rng& rng, Imsi imsi, ProtocolVariant v, std::uint64_t seed) {
  MsState ms;
  ms.record = provision_subscriber(rng, imsi);
  ms.tmsi = fresh_tmsi(sn);
  sn.enrol(ms.record, ms.tmsi);
  ms.variant = v;
  ms.pk_hn = sn.hn_keys.pk;
  ms.rng = Rng(seed);
  return ms;
}

Pair make_pair(std::uint64_t seed, ProtocolVariant v) {
  Pair p;
  Rng rng(seed);
  p.sn.variant = v;
  p.sn.hn_keys = crypto::generate_keypair(rng);
  p.sn.rng = Rng(derive_seed(seed, 9));
  p.victim = make_ms(p.sn, rng, Imsi{111}, v, derive_seed(seed, 1));
  p.other = make_ms(p.sn, rng, Imsi{222}, v, derive_seed(seed, 2));
  return p;
}

// The victim accepts a fresh challenge, which the adversary records.
Challenge victim_session(Pair& p) {
  AuthVector av = hn_generate_auth_vector(p.sn, p.victim.record.imsi);
  ms_handle_auth_request(p.victim, av.rand, av.autn);
  return Challenge{av.rand, av.autn};
}

TEST(Attacks, CaptureReturnsFirstChallenge) {
  netsim::SimConfig cfg;
  cfg.sessions = {0, 0};
  netsim::Transcript t = netsim::run_scenario(cfg);
  Challenge c = capture_victim_challenge(t);
  Bytes first = t.events[1].bytes;
  EXPECT_EQ(encode(msg::AuthRequest{c.rand, c.autn}), first);
  EXPECT_NE(encode(msg::AuthRequest{c.rand, c.autn}), t.events[6].bytes);
  EXPECT_THROW(capture_victim_challenge(netsim::Transcript{}), NoChallengeObserved);
}

TEST(Attacks, OriginalVariantLinksVictim) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    Pair p = make_pair(seed, ProtocolVariant::kOriginal);
    Challenge c = victim_session(p);
    EXPECT_EQ(replay_and_classify(p.victim, c, ProtocolVariant::kOriginal),
              LinkVerdict::kSameAsVictim);
    EXPECT_EQ(replay_and_classify(p.other, c, ProtocolVariant::kOriginal),
              LinkVerdict::kDifferent);
  }
}

TEST(Attacks, FixesAreUndetermined) {
  for (auto v : {ProtocolVariant::kUnifiedError, ProtocolVariant::kPkEncryptedError}) {
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
      Pair p = make_pair(seed, v);
      Challenge c = victim_session(p);
      EXPECT_EQ(replay_and_classify(p.victim, c, v), LinkVerdict::kUndetermined);
      EXPECT_EQ(replay_and_classify(p.other, c, v), LinkVerdict::kUndetermined);
    }
  }
}

TEST(Attacks, VariantMismatchIsRejected) {
  Pair p = make_pair(1, ProtocolVariant::kOriginal);
  Challenge c = victim_session(p);
  EXPECT_THROW(replay_and_classify(p.victim, c, ProtocolVariant::kUnifiedError), ConfigError);
}

TEST(Attacks, ImsiCatcher) {
  Pair p = make_pair(4, ProtocolVariant::kPkEncryptedError);
  EXPECT_EQ(imsi_catch(p.victim), Imsi{111});
  EXPECT_EQ(imsi_catch(p.victim), Imsi{111});
  EXPECT_EQ(imsi_catch(p.other), Imsi{222});
  p.other.identity_procedure_enabled = false;
  EXPECT_FALSE(imsi_catch(p.other).has_value());
}

TEST(Attacks, NetsimRouteAgreesWithDirectRoute) {
  AttackReport r = run_linkability_attack(ProtocolVariant::kOriginal, 200, 5);
  EXPECT_EQ(r.correct, 200u);
  EXPECT_DOUBLE_EQ(r.accuracy, 1.0);
  for (const auto& t : r.log) {
    EXPECT_EQ(t.verdict, t.same ? LinkVerdict::kSameAsVictim : LinkVerdict::kDifferent);
  }
}

TEST(Attacks, FixesNeutraliseNetsimAttack) {
  AttackReport u = run_linkability_attack(ProtocolVariant::kUnifiedError, 200, 5);
  EXPECT_EQ(u.undetermined, 200u);
  for (const auto& t : u.log) EXPECT_EQ(t.reply, u.log[0].reply);

  AttackReport pk = run_linkability_attack(ProtocolVariant::kPkEncryptedError, 200, 5);
  EXPECT_EQ(pk.undetermined, 200u);
  std::set<Bytes> distinct;
  for (const auto& t : pk.log) {
    EXPECT_EQ(t.reply.size(), 1 + crypto::kPkCiphertextSize);
    distinct.insert(t.reply);
  }
  EXPECT_EQ(distinct.size(), 200u);
}

TEST(Attacks, ParallelRunMatchesSerial) {
  AttackReport a = run_linkability_attack(ProtocolVariant::kOriginal, 64, 77, 1);
  AttackReport b = run_linkability_attack(ProtocolVariant::kOriginal, 64, 77, 4);
  EXPECT_EQ(attack_report_to_json(a), attack_report_to_json(b));
}

}  // namespace
}  // namespace umtslab::attacks
