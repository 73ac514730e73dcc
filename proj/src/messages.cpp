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

#include "umtslab/messages.hpp"

#include <algorithm>
#include <cstdio>

namespace umtslab {

namespace {

constexpr std::uint64_t kMaxImsi = 999'999'999'999'999ULL;

class Reader {
 public:
  explicit Reader(ByteView b) : b_(b) {}

  bool take(std::span<std::uint8_t> out) {
    if (b_.size() - pos_ < out.size()) return false;
    std::copy_n(b_.begin() + pos_, out.size(), out.begin());
    pos_ += out.size();
    return true;
  }
  bool done() const { return pos_ == b_.size(); }

 private:
  ByteView b_;
  std::size_t pos_ = 0;
};

void put_u64(Bytes& out, std::uint64_t v) {
  for (int i = 7; i >= 0; --i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

template <typename T>
std::optional<AkaMessage> finish(Reader& r, T m) {
  if (!r.done()) return std::nullopt;
  return AkaMessage{std::move(m)};
}

}  // namespace

std::string Imsi::digits() const {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%015llu", static_cast<unsigned long long>(value));
  return buf;
}

MessageTag tag_of(const AkaMessage& m) {
  return static_cast<MessageTag>(m.index() + 1);
}

const char* message_name(MessageTag tag) {
  switch (tag) {
    case MessageTag::kLocationUpdate: return "LOCATION_UPDATE";
    case MessageTag::kIdentityRequest: return "IDENTITY_REQ";
    case MessageTag::kIdentityResponse: return "IDENTITY_RES";
    case MessageTag::kAuthRequest: return "AUTH_REQ";
    case MessageTag::kAuthResponse: return "AUTH_RES";
    case MessageTag::kMacFailure: return "MAC_FAIL";
    case MessageTag::kSynchFailure: return "SYNCH_FAIL";
    case MessageTag::kUnifiedFailure: return "AUTH_FAIL";
    case MessageTag::kEncryptedFailure: return "ENC_FAIL";
    case MessageTag::kAuthReject: return "AUTH_REJECT";
    case MessageTag::kTmsiReallocCmd: return "TMSI_REALL_CMD";
    case MessageTag::kTmsiReallocComplete: return "TMSI_REALL_COMPLETE";
  }
  return "UNKNOWN";
}

Bytes encode(const AkaMessage& m) {
  Bytes out;
  out.push_back(static_cast<std::uint8_t>(tag_of(m)));
  std::visit(
      [&out](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, msg::LocationUpdate>) {
          append(out, v.tmsi.bytes);
        } else if constexpr (std::is_same_v<T, msg::IdentityResponse>) {
          put_u64(out, v.imsi.value);
        } else if constexpr (std::is_same_v<T, msg::AuthRequest>) {
          append(out, v.rand.view());
          append(out, v.autn.concealed_sqn.view());
          append(out, v.autn.mac.view());
        } else if constexpr (std::is_same_v<T, msg::AuthResponse>) {
          append(out, v.res.view());
        } else if constexpr (std::is_same_v<T, msg::SynchFailure>) {
          append(out, v.auts.concealed_sqn_ms.view());
          append(out, v.auts.mac_s.view());
        } else if constexpr (std::is_same_v<T, msg::EncryptedFailure> ||
                             std::is_same_v<T, msg::TmsiReallocCmd>) {
          append(out, v.ciphertext);
        }
      },
      m);
  return out;
}

std::optional<AkaMessage> decode(ByteView bytes) {
  if (bytes.empty()) return std::nullopt;
  Reader r(bytes.subspan(1));
  switch (static_cast<MessageTag>(bytes[0])) {
    case MessageTag::kLocationUpdate: {
      msg::LocationUpdate m;
      if (!r.take(m.tmsi.bytes)) return std::nullopt;
      return finish(r, m);
    }
    case MessageTag::kIdentityRequest: return finish(r, msg::IdentityRequest{});
    case MessageTag::kIdentityResponse: {
      std::array<std::uint8_t, 8> raw{};
      if (!r.take(raw)) return std::nullopt;
      std::uint64_t v = 0;
      for (std::uint8_t b : raw) v = (v << 8) | b;
      if (v > kMaxImsi) return std::nullopt;
      return finish(r, msg::IdentityResponse{Imsi{v}});
    }
    case MessageTag::kAuthRequest: {
      msg::AuthRequest m;
      if (!r.take(m.rand.bytes) || !r.take(m.autn.concealed_sqn.bytes) ||
          !r.take(m.autn.mac.bytes)) {
        return std::nullopt;
      }
      return finish(r, m);
    }
    case MessageTag::kAuthResponse: {
      msg::AuthResponse m;
      if (!r.take(m.res.bytes)) return std::nullopt;
      return finish(r, m);
    }
    case MessageTag::kMacFailure: return finish(r, msg::MacFailure{});
    case MessageTag::kSynchFailure: {
      msg::SynchFailure m;
      if (!r.take(m.auts.concealed_sqn_ms.bytes) || !r.take(m.auts.mac_s.bytes)) {
        return std::nullopt;
      }
      return finish(r, m);
    }
    case MessageTag::kUnifiedFailure: return finish(r, msg::UnifiedFailure{});
    case MessageTag::kEncryptedFailure: {
      msg::EncryptedFailure m;
      if (!r.take(m.ciphertext)) return std::nullopt;
      return finish(r, m);
    }
    case MessageTag::kAuthReject: return finish(r, msg::AuthReject{});
    case MessageTag::kTmsiReallocCmd: {
      msg::TmsiReallocCmd m;
      if (!r.take(m.ciphertext)) return std::nullopt;
      return finish(r, m);
    }
    case MessageTag::kTmsiReallocComplete: return finish(r, msg::TmsiReallocComplete{});
  }
  return std::nullopt;
}

}  // namespace umtslab
