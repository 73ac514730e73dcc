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

#ifndef UMTSLAB_PROTOCOL_HPP_
#define UMTSLAB_PROTOCOL_HPP_

#include <map>
#include <optional>
#include <string_view>
#include <variant>

#include "umtslab/bytes.hpp"
#include "umtslab/crypto.hpp"
#include "umtslab/messages.hpp"

namespace umtslab {

enum class ProtocolVariant { kOriginal, kUnifiedError, kPkEncryptedError };

// "original", "unified", "pk".
std::string_view variant_name(ProtocolVariant v);
std::optional<ProtocolVariant> parse_variant(std::string_view name);

struct SubscriberRecord {
  Imsi imsi;
  crypto::LongTermKey k;
  crypto::Sqn sqn_hn;
  crypto::Sqn sqn_ms;
};

struct AuthVector {
  crypto::Rand rand;
  Autn autn;
  crypto::ResponseTag xres;
  crypto::CipherKey ck;
  crypto::IntegrityKey ik;
};

class UnknownSubscriber : public Error {
 public:
  UnknownSubscriber() : Error("unknown subscriber") {}
};

class InvalidAuts : public Error {
 public:
  InvalidAuts() : Error("AUTS failed verification") {}
};

// Failure cause carried inside EncryptedFailure payloads.
enum class FailureCause : std::uint8_t { kMac = 0x01, kSynch = 0x02 };

struct MsState {
  SubscriberRecord record;
  Tmsi tmsi;
  ProtocolVariant variant = ProtocolVariant::kOriginal;
  Bytes pk_hn;
  // Keys of the last successful authentication; needed for TMSI reallocation.
  std::optional<crypto::SessionKeys> keys;
  bool identity_procedure_enabled = true;
  Rng rng{0};
};

struct SnState {
  std::map<Imsi, SubscriberRecord> subscribers;
  std::map<Tmsi, Imsi> tmsi_to_imsi;
  std::map<Imsi, Tmsi> imsi_to_tmsi;
  // TMSIs sent in a reallocation command but not yet confirmed.
  std::map<Imsi, Tmsi> pending_tmsi;
  ProtocolVariant variant = ProtocolVariant::kOriginal;
  crypto::KeyPair hn_keys;
  Rng rng{0};

  std::optional<Imsi> lookup(const Tmsi& tmsi) const;
  // Registers a subscriber and its initial TMSI. Throws Error on a duplicate
  // IMSI or TMSI.
  void enrol(const SubscriberRecord& record, const Tmsi& tmsi);
};

namespace outcome {
struct Accepted {
  crypto::SessionKeys keys;
};
struct Rejected {};
struct Resynchronized {};
}  // namespace outcome

using AuthOutcome = std::variant<outcome::Accepted, outcome::Rejected, outcome::Resynchronized>;
std::string_view outcome_name(const AuthOutcome& o);

// Fresh subscriber with a random key and both counters at zero.
SubscriberRecord provision_subscriber(Rng& rng, Imsi imsi);
// Draws a TMSI that is not bound or pending in sn.
Tmsi fresh_tmsi(SnState& sn);

Autn make_autn(const crypto::LongTermKey& k, crypto::Sqn sqn, const crypto::Rand& rand);
Auts make_auts(const crypto::LongTermKey& k, crypto::Sqn sqn_ms, const crypto::Rand& rand);

// Increments the HN counter and derives a vector for it from a fresh RAND.
AuthVector hn_generate_auth_vector(SnState& sn, const Imsi& imsi);

AkaMessage ms_handle_auth_request(MsState& ms, const crypto::Rand& rand, const Autn& autn);

AuthOutcome sn_verify_response(SnState& sn, const Imsi& imsi, const AuthVector& pending,
                               const AkaMessage& msg);

// Throws InvalidAuts (state unchanged) when the AUTS MAC does not verify.
void sn_resynchronize(SnState& sn, const Imsi& imsi, const crypto::Rand& rand,
                      const Auts& auts);

AkaMessage tmsi_reallocate(SnState& sn, const Imsi& imsi, const crypto::CipherKey& ck);
// Commits the pending TMSI for imsi; no-op if nothing is pending.
void sn_complete_tmsi_realloc(SnState& sn, const Imsi& imsi);
// Drops the pending TMSI; the previous binding stays in force.
void sn_abandon_tmsi_realloc(SnState& sn, const Imsi& imsi);

// Throws crypto::AuthenticityFailure without changing ms on a bad ciphertext.
AkaMessage ms_handle_tmsi_realloc(MsState& ms, const msg::TmsiReallocCmd& cmd,
                                  const crypto::CipherKey& ck);

AkaMessage ms_handle_identity_request(const MsState& ms);

// Radio-side dispatcher of the MS: decodes link bytes and returns the reply,
// if any. Undecodable bytes tagged as AUTH_REQ take the MAC-failure path.
std::optional<AkaMessage> ms_receive(MsState& ms, ByteView bytes);

}  // namespace umtslab

#endif  // UMTSLAB_PROTOCOL_HPP_
