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

#ifndef UMTSLAB_MESSAGES_HPP_
#define UMTSLAB_MESSAGES_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <variant>

#include "umtslab/bytes.hpp"
#include "umtslab/crypto.hpp"

namespace umtslab {

// Permanent subscriber identity: up to 15 decimal digits, 8 bytes on the wire.
struct Imsi {
  std::uint64_t value = 0;
  std::string digits() const;
  friend auto operator<=>(const Imsi&, const Imsi&) = default;
};

struct Tmsi {
  std::array<std::uint8_t, 4> bytes{};
  friend auto operator<=>(const Tmsi&, const Tmsi&) = default;
};

struct Autn {
  crypto::ConcealedSqn concealed_sqn;
  crypto::Mac mac;
  friend bool operator==(const Autn&, const Autn&) = default;
};

struct Auts {
  crypto::ConcealedSqn concealed_sqn_ms;
  crypto::Mac mac_s;
  friend bool operator==(const Auts&, const Auts&) = default;
};

namespace msg {

struct LocationUpdate {
  Tmsi tmsi;
  friend bool operator==(const LocationUpdate&, const LocationUpdate&) = default;
};
struct IdentityRequest {
  friend bool operator==(const IdentityRequest&, const IdentityRequest&) = default;
};
struct IdentityResponse {
  Imsi imsi;
  friend bool operator==(const IdentityResponse&, const IdentityResponse&) = default;
};
struct AuthRequest {
  crypto::Rand rand;
  Autn autn;
  friend bool operator==(const AuthRequest&, const AuthRequest&) = default;
};
struct AuthResponse {
  crypto::ResponseTag res;
  friend bool operator==(const AuthResponse&, const AuthResponse&) = default;
};
struct MacFailure {
  friend bool operator==(const MacFailure&, const MacFailure&) = default;
};
struct SynchFailure {
  Auts auts;
  friend bool operator==(const SynchFailure&, const SynchFailure&) = default;
};
struct UnifiedFailure {
  friend bool operator==(const UnifiedFailure&, const UnifiedFailure&) = default;
};
struct EncryptedFailure {
  std::array<std::uint8_t, crypto::kPkCiphertextSize> ciphertext{};
  friend bool operator==(const EncryptedFailure&, const EncryptedFailure&) = default;
};
struct AuthReject {
  friend bool operator==(const AuthReject&, const AuthReject&) = default;
};
inline constexpr std::size_t kTmsiCiphertextSize =
    crypto::kSencNonceSize + 4 + crypto::kSencTagSize;
struct TmsiReallocCmd {
  std::array<std::uint8_t, kTmsiCiphertextSize> ciphertext{};
  friend bool operator==(const TmsiReallocCmd&, const TmsiReallocCmd&) = default;
};
struct TmsiReallocComplete {
  friend bool operator==(const TmsiReallocComplete&, const TmsiReallocComplete&) = default;
};

}  // namespace msg

using AkaMessage =
    std::variant<msg::LocationUpdate, msg::IdentityRequest, msg::IdentityResponse,
                 msg::AuthRequest, msg::AuthResponse, msg::MacFailure, msg::SynchFailure,
                 msg::UnifiedFailure, msg::EncryptedFailure, msg::AuthReject,
                 msg::TmsiReallocCmd, msg::TmsiReallocComplete>;

// Wire tags, in variant order starting at 0x01.
enum class MessageTag : std::uint8_t {
  kLocationUpdate = 0x01,
  kIdentityRequest,
  kIdentityResponse,
  kAuthRequest,
  kAuthResponse,
  kMacFailure,
  kSynchFailure,
  kUnifiedFailure,
  kEncryptedFailure,
  kAuthReject,
  kTmsiReallocCmd,
  kTmsiReallocComplete,
};

MessageTag tag_of(const AkaMessage& m);
// Upper-case wire name, e.g. "AUTH_REQ".
const char* message_name(MessageTag tag);

// 1-byte tag followed by fixed-width big-endian fields.
Bytes encode(const AkaMessage& m);
// Returns nullopt for unknown tags, wrong lengths or out-of-range fields.
std::optional<AkaMessage> decode(ByteView bytes);

}  // namespace umtslab

#endif  // UMTSLAB_MESSAGES_HPP_
