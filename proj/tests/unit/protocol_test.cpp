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

#include "umtslab/protocol.hpp"

#include <gtest/gtest.h>

namespace umtslab {
namespace {

struct World {
  SnState sn;
  MsState ms;
};

World make_world(std::uint64_t seed, ProtocolVariant variant) {
  World w;
  Rng rng(seed);
  w.sn.variant = variant;
  w.sn.rng = Rng(derive_seed(seed, 1));
  w.sn.hn_keys = crypto::generate_keypair(rng);
  SubscriberRecord rec = provision_subscriber(rng, Imsi{208150000000000 + seed % 1000});
  Tmsi t = fresh_tmsi(w.sn);
  w.sn.enrol(rec, t);
  w.ms.record = rec;
  w.ms.tmsi = t;
  w.ms.variant = variant;
  w.ms.pk_hn = w.sn.hn_keys.pk;
  w.ms.rng = Rng(derive_seed(seed, 2));
  return w;
}

AuthOutcome honest_session(World& w) {
  Imsi imsi = w.ms.record.imsi;
  AuthVector av = hn_generate_auth_vector(w.sn, imsi);
  AkaMessage reply = ms_handle_auth_request(w.ms, av.rand, av.autn);
  return sn_verify_response(w.sn, imsi, av, reply);
}

TEST(Protocol, HonestRunCompletes) {
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    World w = make_world(seed, static_cast<ProtocolVariant>(seed % 3));
    for (int i = 0; i < 3; ++i) {
      AuthOutcome o = honest_session(w);
      ASSERT_TRUE(std::holds_alternative<outcome::Accepted>(o));
      EXPECT_EQ(std::get<outcome::Accepted>(o).keys, *w.ms.keys);
    }
    EXPECT_EQ(w.ms.record.sqn_ms.value(), 3u);
  }
}

TEST(Protocol, ReplayedChallengeIsRejected) {
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    World w = make_world(seed, ProtocolVariant::kOriginal);
    AuthVector av = hn_generate_auth_vector(w.sn, w.ms.record.imsi);
    ASSERT_TRUE(std::holds_alternative<msg::AuthResponse>(
        ms_handle_auth_request(w.ms, av.rand, av.autn)));
    AkaMessage again = ms_handle_auth_request(w.ms, av.rand, av.autn);
    auto* s = std::get_if<msg::SynchFailure>(&again);
    ASSERT_NE(s, nullptr);
    EXPECT_EQ(s->auts, make_auts(w.ms.record.k, w.ms.record.sqn_ms, av.rand));
  }
}

TEST(Protocol, ForeignChallengeFailsMac) {
  World a = make_world(1, ProtocolVariant::kOriginal);
  World b = make_world(2, ProtocolVariant::kOriginal);
  AuthVector av = hn_generate_auth_vector(a.sn, a.ms.record.imsi);
  EXPECT_TRUE(std::holds_alternative<msg::MacFailure>(
      ms_handle_auth_request(b.ms, av.rand, av.autn)));
}

TEST(Protocol, ResynchronizationRoundTrip) {
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    auto variant = seed % 2 ? ProtocolVariant::kOriginal : ProtocolVariant::kPkEncryptedError;
    World w = make_world(seed, variant);
    Rng r(seed);
    std::uint64_t ahead = 1 + r.below(1000);
    w.ms.record.sqn_ms = crypto::Sqn(ahead);
    Imsi imsi = w.ms.record.imsi;
    AuthVector av = hn_generate_auth_vector(w.sn, imsi);
    AkaMessage reply = ms_handle_auth_request(w.ms, av.rand, av.autn);
    ASSERT_TRUE(std::holds_alternative<outcome::Resynchronized>(
        sn_verify_response(w.sn, imsi, av, reply)));
    EXPECT_EQ(w.sn.subscribers.at(imsi).sqn_hn.value(), ahead);
    EXPECT_TRUE(std::holds_alternative<outcome::Accepted>(honest_session(w)));
  }
}

TEST(Protocol, TamperedAutsIsRejected) {
  World w = make_world(5, ProtocolVariant::kOriginal);
  w.ms.record.sqn_ms = crypto::Sqn(10);
  Imsi imsi = w.ms.record.imsi;
  AuthVector av = hn_generate_auth_vector(w.sn, imsi);
  AkaMessage reply = ms_handle_auth_request(w.ms, av.rand, av.autn);
  std::get<msg::SynchFailure>(reply).auts.mac_s.bytes[0] ^= 1;
  auto before = w.sn.subscribers.at(imsi).sqn_hn;
  EXPECT_TRUE(std::holds_alternative<outcome::Rejected>(sn_verify_response(w.sn, imsi, av, reply)));
  EXPECT_EQ(w.sn.subscribers.at(imsi).sqn_hn, before);
}

TEST(Protocol, UnifiedVariantHidesCause) {
  World w = make_world(3, ProtocolVariant::kUnifiedError);
  AuthVector av = hn_generate_auth_vector(w.sn, w.ms.record.imsi);
  ms_handle_auth_request(w.ms, av.rand, av.autn);
  AkaMessage synch = ms_handle_auth_request(w.ms, av.rand, av.autn);
  World other = make_world(4, ProtocolVariant::kUnifiedError);
  AkaMessage mac = ms_handle_auth_request(other.ms, av.rand, av.autn);
  EXPECT_EQ(encode(synch), encode(mac));
}

TEST(Protocol, EncryptedFailuresHaveEqualLength) {
  World w = make_world(3, ProtocolVariant::kPkEncryptedError);
  AuthVector av = hn_generate_auth_vector(w.sn, w.ms.record.imsi);
  ms_handle_auth_request(w.ms, av.rand, av.autn);
  Bytes synch = encode(ms_handle_auth_request(w.ms, av.rand, av.autn));
  Bytes synch2 = encode(ms_handle_auth_request(w.ms, av.rand, av.autn));
  World other = make_world(4, ProtocolVariant::kPkEncryptedError);
  other.ms.pk_hn = w.sn.hn_keys.pk;
  Bytes mac = encode(ms_handle_auth_request(other.ms, av.rand, av.autn));
  EXPECT_EQ(synch.size(), mac.size());
  EXPECT_EQ(synch[0], mac[0]);
  EXPECT_NE(synch, synch2);
}

TEST(Protocol, TmsiReallocationRoundTrip) {
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    World w = make_world(seed, ProtocolVariant::kOriginal);
    Imsi imsi = w.ms.record.imsi;
    AuthOutcome o = honest_session(w);
    const auto& keys = std::get<outcome::Accepted>(o).keys;
    Tmsi old = w.ms.tmsi;
    AkaMessage cmd = tmsi_reallocate(w.sn, imsi, keys.ck);
    // Not committed until the MS confirms.
    EXPECT_EQ(w.sn.lookup(old), imsi);
    AkaMessage done = ms_handle_tmsi_realloc(w.ms, std::get<msg::TmsiReallocCmd>(cmd), keys.ck);
    EXPECT_TRUE(std::holds_alternative<msg::TmsiReallocComplete>(done));
    sn_complete_tmsi_realloc(w.sn, imsi);
    EXPECT_EQ(w.sn.lookup(w.ms.tmsi), imsi);
    if (w.ms.tmsi != old) EXPECT_FALSE(w.sn.lookup(old).has_value());
  }
}

TEST(Protocol, TmsiReallocRejectsWrongKey) {
  World w = make_world(9, ProtocolVariant::kOriginal);
  Imsi imsi = w.ms.record.imsi;
  crypto::CipherKey ck;
  ck.bytes[0] = 1;
  AkaMessage cmd = tmsi_reallocate(w.sn, imsi, ck);
  Tmsi before = w.ms.tmsi;
  EXPECT_THROW(ms_handle_tmsi_realloc(w.ms, std::get<msg::TmsiReallocCmd>(cmd), crypto::CipherKey{}),
               crypto::AuthenticityFailure);
  EXPECT_EQ(w.ms.tmsi, before);
  sn_abandon_tmsi_realloc(w.sn, imsi);
  EXPECT_EQ(w.sn.lookup(before), imsi);
}

TEST(Protocol, IdentityRequestRevealsImsi) {
  World w = make_world(7, ProtocolVariant::kOriginal);
  auto reply = ms_receive(w.ms, encode(msg::IdentityRequest{}));
  ASSERT_TRUE(reply);
  EXPECT_EQ(std::get<msg::IdentityResponse>(*reply).imsi, w.ms.record.imsi);
  w.ms.identity_procedure_enabled = false;
  EXPECT_FALSE(ms_receive(w.ms, encode(msg::IdentityRequest{})).has_value());
}

TEST(Protocol, VariantNames) {
  for (auto v : {ProtocolVariant::kOriginal, ProtocolVariant::kUnifiedError,
                 ProtocolVariant::kPkEncryptedError}) {
    EXPECT_EQ(parse_variant(variant_name(v)), v);
  }
  EXPECT_FALSE(parse_variant("bogus").has_value());
}

}  // namespace
}  // namespace umtslab
