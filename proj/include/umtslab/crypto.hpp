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

#ifndef UMTSLAB_CRYPTO_HPP_
#define UMTSLAB_CRYPTO_HPP_

#include <algorithm>
#include <array>
#include <compare>
#include <cstdint>

#include "umtslab/bytes.hpp"

// Keyed functions of the AKA protocol plus the symmetric and public-key
// primitives used by TMSI reallocation and the encrypted-failure variant.
//
// f1..f5, f1* and f5* are HMAC-SHA256 under the long-term key over a one-byte
// function tag followed by the inputs, truncated to the 3GPP field widths:
//
//   f1  0x01 || SQN || RAND -> MAC (8)      f1* 0x11 || SQN || RAND -> MAC (8)
//   f2  0x02 || RAND        -> RES (8)      f5* 0x15 || RAND        -> AK  (6)
//   f3  0x03 || RAND        -> CK (16)
//   f4  0x04 || RAND        -> IK (16)
//   f5  0x05 || RAND        -> AK  (6)
namespace umtslab::crypto {

inline constexpr std::size_t kKeySize = 16;
inline constexpr std::size_t kRandSize = 16;
inline constexpr std::size_t kSqnSize = 6;
inline constexpr std::size_t kMacSize = 8;
inline constexpr std::size_t kResSize = 8;
inline constexpr std::size_t kAkSize = 6;
inline constexpr std::size_t kSencNonceSize = 12;
inline constexpr std::size_t kSencTagSize = 16;
inline constexpr std::size_t kPkRandomnessSize = 16;
inline constexpr std::size_t kPkPlaintextSize = 32;
inline constexpr std::size_t kPkPublicKeySize = 32;
// Encrypted block: one length byte then the zero-padded payload.
inline constexpr std::size_t kPkBlockSize = 1 + kPkPlaintextSize;
inline constexpr std::size_t kPkCiphertextSize =
    kPkPublicKeySize + kPkBlockSize + kSencTagSize;

// Fixed-width byte string with value semantics. The tag type keeps keys,
// nonces and tags of equal width from being mixed up.
template <typename Tag, std::size_t N>
struct Block {
  static constexpr std::size_t kSize = N;
  std::array<std::uint8_t, N> bytes{};

  static Block from(ByteView b) {
    if (b.size() != N) throw Error("wrong field width");
    Block out;
    std::copy(b.begin(), b.end(), out.bytes.begin());
    return out;
  }
  ByteView view() const { return bytes; }
  friend bool operator==(const Block&, const Block&) = default;
  friend auto operator<=>(const Block&, const Block&) = default;
};

struct LongTermKeyTag;
struct RandTag;
struct MacTag;
struct ResTag;
struct AkTag;
struct ConcealedSqnTag;
struct CipherKeyTag;
struct IntegrityKeyTag;

using LongTermKey = Block<LongTermKeyTag, kKeySize>;
using Rand = Block<RandTag, kRandSize>;
using Mac = Block<MacTag, kMacSize>;
using ResponseTag = Block<ResTag, kResSize>;
using AnonymityKey = Block<AkTag, kAkSize>;
using ConcealedSqn = Block<ConcealedSqnTag, kSqnSize>;
using CipherKey = Block<CipherKeyTag, kKeySize>;
using IntegrityKey = Block<IntegrityKeyTag, kKeySize>;

// 48-bit sequence number.
class Sqn {
 public:
  static constexpr std::uint64_t kMax = (std::uint64_t{1} << 48) - 1;

  constexpr Sqn() = default;
  explicit Sqn(std::uint64_t value);

  constexpr std::uint64_t value() const { return value_; }
  std::array<std::uint8_t, kSqnSize> encode() const;
  static Sqn decode(ByteView b);

  friend constexpr auto operator<=>(Sqn, Sqn) = default;

 private:
  std::uint64_t value_ = 0;
};

struct SessionKeys {
  CipherKey ck;
  IntegrityKey ik;
  friend bool operator==(const SessionKeys&, const SessionKeys&) = default;
};

struct KeyPair {
  Bytes pk;
  Bytes sk;
};

class AuthenticityFailure : public Error {
 public:
  AuthenticityFailure() : Error("ciphertext failed authentication") {}
};

class DecryptionFailure : public Error {
 public:
  explicit DecryptionFailure(const char* what) : Error(what) {}
};

LongTermKey generate_key(Rng& rng);
KeyPair generate_keypair(Rng& rng);

Mac f1(const LongTermKey& k, Sqn sqn, const Rand& rand);
ResponseTag f2(const LongTermKey& k, const Rand& rand);
CipherKey f3(const LongTermKey& k, const Rand& rand);
IntegrityKey f4(const LongTermKey& k, const Rand& rand);
AnonymityKey f5(const LongTermKey& k, const Rand& rand);
Mac f1_star(const LongTermKey& k, Sqn sqn_ms, const Rand& rand);
AnonymityKey f5_star(const LongTermKey& k, const Rand& rand);

SessionKeys session_keys(const LongTermKey& k, const Rand& rand);

// Bytewise XOR of the big-endian 6-byte encoding of sqn with ak.
ConcealedSqn xor_mask(Sqn sqn, const AnonymityKey& ak);
// Inverse of xor_mask.
Sqn unmask(const ConcealedSqn& concealed, const AnonymityKey& ak);

// Authenticated encryption; output is nonce || ciphertext || tag.
Bytes senc(ByteView key, ByteView plaintext, ByteView nonce);
// Throws AuthenticityFailure on tampering, wrong key or truncated input.
Bytes sdec(ByteView key, ByteView ciphertext);

// Randomised public-key encryption. Payloads longer than kPkPlaintextSize are
// rejected; shorter ones are zero padded inside the encrypted block, so every
// ciphertext has kPkCiphertextSize bytes. pk_decrypt returns the payload.
Bytes pk_encrypt(ByteView pk, ByteView payload, ByteView randomness);
Bytes pk_decrypt(ByteView sk, ByteView ciphertext);

}  // namespace umtslab::crypto

#endif  // UMTSLAB_CRYPTO_HPP_
