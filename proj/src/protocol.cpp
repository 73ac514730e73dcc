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

#include <algorithm>

namespace umtslab {

using crypto::Sqn;

std::string_view variant_name(ProtocolVariant v) {
  switch (v) {
    case ProtocolVariant::kOriginal: return "original";
    case ProtocolVariant::kUnifiedError: return "unified";
    case ProtocolVariant::kPkEncryptedError: return "pk";
  }
  return "original";
}

std::optional<ProtocolVariant> parse_variant(std::string_view name) {
  if (name == "original") return ProtocolVariant::kOriginal;
  if (name == "unified") return ProtocolVariant::kUnifiedError;
  if (name == "pk") return ProtocolVariant::kPkEncryptedError;
  return std::nullopt;
}

std::string_view outcome_name(const AuthOutcome& o) {
  switch (o.index()) {
    case 0: return "accepted";
    case 1: return "rejected";
    default: return "resynchronized";
  }
}

std::optional<Imsi> SnState::lookup(const Tmsi& tmsi) const {
  auto it = tmsi_to_imsi.find(tmsi);
  if (it == tmsi_to_imsi.end()) return std::nullopt;
  return it->second;
}

void SnState::enrol(const SubscriberRecord& record, const Tmsi& tmsi) {
  if (subscribers.contains(record.imsi)) throw Error("duplicate IMSI");
  if (tmsi_to_imsi.contains(tmsi)) throw Error("duplicate TMSI");
  subscribers.emplace(record.imsi, record);
  tmsi_to_imsi.emplace(tmsi, record.imsi);
  imsi_to_tmsi.emplace(record.imsi, tmsi);
}

SubscriberRecord provision_subscriber(Rng& rng, Imsi imsi) {
  return SubscriberRecord{imsi, crypto::generate_key(rng), Sqn(0), Sqn(0)};
}

Tmsi fresh_tmsi(SnState& sn) {
  auto in_use = [&sn](const Tmsi& t) {
    if (sn.tmsi_to_imsi.contains(t)) return true;
    return std::any_of(sn.pending_tmsi.begin(), sn.pending_tmsi.end(),
                       [&t](const auto& p) { return p.second == t; });
  };
  Tmsi t;
  do {
    sn.rng.fill(t.bytes);
  } while (in_use(t));
  return t;
}

Autn make_autn(const crypto::LongTermKey& k, Sqn sqn, const crypto::Rand& rand) {
  return Autn{crypto::xor_mask(sqn, crypto::f5(k, rand)), crypto::f1(k, sqn, rand)};
}

Auts make_auts(const crypto::LongTermKey& k, Sqn sqn_ms, const crypto::Rand& rand) {
  return Auts{crypto::xor_mask(sqn_ms, crypto::f5_star(k, rand)),
              crypto::f1_star(k, sqn_ms, rand)};
}

AuthVector hn_generate_auth_vector(SnState& sn, const Imsi& imsi) {
  auto it = sn.subscribers.find(imsi);
  if (it == sn.subscribers.end()) throw UnknownSubscriber();
  SubscriberRecord& rec = it->second;
  rec.sqn_hn = Sqn(rec.sqn_hn.value() + 1);

  AuthVector av;
  sn.rng.fill(av.rand.bytes);
  av.autn = make_autn(rec.k, rec.sqn_hn, av.rand);
  av.xres = crypto::f2(rec.k, av.rand);
  av.ck = crypto::f3(rec.k, av.rand);
  av.ik = crypto::f4(rec.k, av.rand);
  return av;
}

namespace {

AkaMessage failure_reply(MsState& ms, FailureCause cause, const crypto::Rand& rand) {
  switch (ms.variant) {
    case ProtocolVariant::kOriginal:
      if (cause == FailureCause::kMac) return msg::MacFailure{};
      return msg::SynchFailure{make_auts(ms.record.k, ms.record.sqn_ms, rand)};
    case ProtocolVariant::kUnifiedError:
      return msg::UnifiedFailure{};
    case ProtocolVariant::kPkEncryptedError: {
      Bytes payload{static_cast<std::uint8_t>(cause)};
      if (cause == FailureCause::kSynch) {
        Auts auts = make_auts(ms.record.k, ms.record.sqn_ms, rand);
        append(payload, auts.concealed_sqn_ms.view());
        append(payload, auts.mac_s.view());
      }
      payload.resize(crypto::kPkPlaintextSize, 0);
      auto randomness = ms.rng.bytes<crypto::kPkRandomnessSize>();
      Bytes ct = crypto::pk_encrypt(ms.pk_hn, payload, randomness);
      msg::EncryptedFailure m;
      std::copy(ct.begin(), ct.end(), m.ciphertext.begin());
      return m;
    }
  }
  return msg::MacFailure{};
}

struct DecodedFailure {
  FailureCause cause;
  std::optional<Auts> auts;
};

std::optional<DecodedFailure> open_encrypted_failure(const SnState& sn,
                                                     const msg::EncryptedFailure& m) {
  Bytes payload;
  try {
    payload = crypto::pk_decrypt(sn.hn_keys.sk, m.ciphertext);
  } catch (const crypto::DecryptionFailure&) {
    return std::nullopt;
  }
  if (payload.size() != crypto::kPkPlaintextSize) return std::nullopt;
  if (payload[0] == static_cast<std::uint8_t>(FailureCause::kMac)) {
    return DecodedFailure{FailureCause::kMac, std::nullopt};
  }
  if (payload[0] != static_cast<std::uint8_t>(FailureCause::kSynch)) return std::nullopt;
  ByteView p(payload);
  Auts auts{crypto::ConcealedSqn::from(p.subspan(1, crypto::kSqnSize)),
            crypto::Mac::from(p.subspan(1 + crypto::kSqnSize, crypto::kMacSize))};
  return DecodedFailure{FailureCause::kSynch, auts};
}

AuthOutcome resynchronize_or_reject(SnState& sn, const Imsi& imsi, const crypto::Rand& rand,
                                    const Auts& auts) {
  try {
    sn_resynchronize(sn, imsi, rand, auts);
  } catch (const InvalidAuts&) {
    return outcome::Rejected{};
  }
  return outcome::Resynchronized{};
}

}  // namespace

AkaMessage ms_handle_auth_request(MsState& ms, const crypto::Rand& rand, const Autn& autn) {
  const auto& k = ms.record.k;
  Sqn sqn_hn = crypto::unmask(autn.concealed_sqn, crypto::f5(k, rand));
  if (crypto::f1(k, sqn_hn, rand) != autn.mac) {
    return failure_reply(ms, FailureCause::kMac, rand);
  }
  if (sqn_hn <= ms.record.sqn_ms) {
    return failure_reply(ms, FailureCause::kSynch, rand);
  }
  ms.record.sqn_ms = sqn_hn;
  ms.keys = crypto::session_keys(k, rand);
  return msg::AuthResponse{crypto::f2(k, rand)};
}

AuthOutcome sn_verify_response(SnState& sn, const Imsi& imsi, const AuthVector& pending,
                               const AkaMessage& m) {
  if (const auto* r = std::get_if<msg::AuthResponse>(&m)) {
    if (r->res == pending.xres) return outcome::Accepted{{pending.ck, pending.ik}};
    return outcome::Rejected{};
  }
  if (const auto* s = std::get_if<msg::SynchFailure>(&m)) {
    return resynchronize_or_reject(sn, imsi, pending.rand, s->auts);
  }
  if (const auto* e = std::get_if<msg::EncryptedFailure>(&m)) {
    auto failure = open_encrypted_failure(sn, *e);
    if (failure && failure->auts) {
      return resynchronize_or_reject(sn, imsi, pending.rand, *failure->auts);
    }
  }
  return outcome::Rejected{};
}

void sn_resynchronize(SnState& sn, const Imsi& imsi, const crypto::Rand& rand,
                      const Auts& auts) {
  auto it = sn.subscribers.find(imsi);
  if (it == sn.subscribers.end()) throw UnknownSubscriber();
  SubscriberRecord& rec = it->second;
  Sqn sqn_ms = crypto::unmask(auts.concealed_sqn_ms, crypto::f5_star(rec.k, rand));
  if (crypto::f1_star(rec.k, sqn_ms, rand) != auts.mac_s) throw InvalidAuts();
  rec.sqn_hn = std::max(rec.sqn_hn, sqn_ms);
}

AkaMessage tmsi_reallocate(SnState& sn, const Imsi& imsi, const crypto::CipherKey& ck) {
  if (!sn.subscribers.contains(imsi)) throw UnknownSubscriber();
  sn.pending_tmsi.erase(imsi);
  Tmsi next = fresh_tmsi(sn);
  sn.pending_tmsi[imsi] = next;
  auto nonce = sn.rng.bytes<crypto::kSencNonceSize>();
  Bytes ct = crypto::senc(ck.view(), next.bytes, nonce);
  msg::TmsiReallocCmd cmd;
  std::copy(ct.begin(), ct.end(), cmd.ciphertext.begin());
  return cmd;
}

void sn_complete_tmsi_realloc(SnState& sn, const Imsi& imsi) {
  auto it = sn.pending_tmsi.find(imsi);
  if (it == sn.pending_tmsi.end()) return;
  if (auto old = sn.imsi_to_tmsi.find(imsi); old != sn.imsi_to_tmsi.end()) {
    sn.tmsi_to_imsi.erase(old->second);
  }
  sn.tmsi_to_imsi[it->second] = imsi;
  sn.imsi_to_tmsi[imsi] = it->second;
  sn.pending_tmsi.erase(it);
}

void sn_abandon_tmsi_realloc(SnState& sn, const Imsi& imsi) {
  sn.pending_tmsi.erase(imsi);
}

AkaMessage ms_handle_tmsi_realloc(MsState& ms, const msg::TmsiReallocCmd& cmd,
                                  const crypto::CipherKey& ck) {
  Bytes plain = crypto::sdec(ck.view(), cmd.ciphertext);
  if (plain.size() != ms.tmsi.bytes.size()) throw crypto::AuthenticityFailure();
  std::copy(plain.begin(), plain.end(), ms.tmsi.bytes.begin());
  return msg::TmsiReallocComplete{};
}

AkaMessage ms_handle_identity_request(const MsState& ms) {
  return msg::IdentityResponse{ms.record.imsi};
}

std::optional<AkaMessage> ms_receive(MsState& ms, ByteView bytes) {
  auto m = decode(bytes);
  if (!m) {
    if (!bytes.empty() && bytes[0] == static_cast<std::uint8_t>(MessageTag::kAuthRequest)) {
      // Any RAND works here: a garbage token fails the MAC check.
      return failure_reply(ms, FailureCause::kMac, crypto::Rand{});
    }
    return std::nullopt;
  }
  if (const auto* req = std::get_if<msg::AuthRequest>(&*m)) {
    return ms_handle_auth_request(ms, req->rand, req->autn);
  }
  if (std::holds_alternative<msg::IdentityRequest>(*m)) {
    if (!ms.identity_procedure_enabled) return std::nullopt;
    return ms_handle_identity_request(ms);
  }
  if (const auto* cmd = std::get_if<msg::TmsiReallocCmd>(&*m)) {
    if (!ms.keys) return std::nullopt;
    try {
      return ms_handle_tmsi_realloc(ms, *cmd, ms.keys->ck);
    } catch (const crypto::AuthenticityFailure&) {
      return std::nullopt;
    }
  }
  return std::nullopt;
}

}  // namespace umtslab
