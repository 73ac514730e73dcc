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

#include "umtslab/crypto.hpp"

#include <sodium.h>

#include <mutex>

namespace umtslab::crypto {
namespace {

void ensure_sodium() {
  static std::once_flag once;
  std::call_once(once, [] {
    if (sodium_init() < 0) throw Error("libsodium initialisation failed");
  });
}

using Digest = std::array<std::uint8_t, crypto_auth_hmacsha256_BYTES>;

Digest keyed_prf(ByteView key, std::uint8_t tag, ByteView a, ByteView b = {}) {
  ensure_sodium();
  crypto_auth_hmacsha256_state st;
  crypto_auth_hmacsha256_init(&st, key.data(), key.size());
  crypto_auth_hmacsha256_update(&st, &tag, 1);
  crypto_auth_hmacsha256_update(&st, a.data(), a.size());
  if (!b.empty()) crypto_auth_hmacsha256_update(&st, b.data(), b.size());
  Digest out{};
  crypto_auth_hmacsha256_final(&st, out.data());
  return out;
}

template <typename Out>
Out truncate(const Digest& d) {
  Out out;
  std::copy_n(d.begin(), Out::kSize, out.bytes.begin());
  return out;
}

std::array<std::uint8_t, 32> expand_senc_key(ByteView key) {
  static constexpr std::uint8_t kLabel[] = {'s', 'e', 'n', 'c'};
  Digest d = keyed_prf(key, 0x53, kLabel);
  return d;
}

std::array<std::uint8_t, 32> sha256(ByteView a, ByteView b = {}, ByteView c = {}) {
  ensure_sodium();
  crypto_hash_sha256_state st;
  crypto_hash_sha256_init(&st);
  crypto_hash_sha256_update(&st, a.data(), a.size());
  crypto_hash_sha256_update(&st, b.data(), b.size());
  crypto_hash_sha256_update(&st, c.data(), c.size());
  std::array<std::uint8_t, 32> out{};
  crypto_hash_sha256_final(&st, out.data());
  return out;
}

std::array<std::uint8_t, 32> pk_session_key(ByteView shared, ByteView epk, ByteView pk) {
  static constexpr std::uint8_t kLabel[] = {'u', 'm', 't', 's', '-', 'p', 'k', 'e'};
  Bytes prefix(kLabel, kLabel + sizeof kLabel);
  append(prefix, shared);
  return sha256(prefix, epk, pk);
}

}  // namespace

Sqn::Sqn(std::uint64_t value) : value_(value) {
  if (value > kMax) throw Error("sequence number exceeds 48 bits");
}

std::array<std::uint8_t, kSqnSize> Sqn::encode() const {
  std::array<std::uint8_t, kSqnSize> out{};
  for (std::size_t i = 0; i < kSqnSize; ++i) {
    out[i] = static_cast<std::uint8_t>(value_ >> (8 * (kSqnSize - 1 - i)));
  }
  return out;
}

Sqn Sqn::decode(ByteView b) {
  if (b.size() != kSqnSize) throw Error("sequence number must be 6 bytes");
  std::uint64_t v = 0;
  for (std::uint8_t byte : b) v = (v << 8) | byte;
  return Sqn(v);
}

LongTermKey generate_key(Rng& rng) {
  LongTermKey k;
  rng.fill(k.bytes);
  return k;
}

KeyPair generate_keypair(Rng& rng) {
  ensure_sodium();
  KeyPair kp;
  kp.sk.resize(crypto_scalarmult_SCALARBYTES);
  rng.fill(kp.sk);
  kp.pk.resize(crypto_scalarmult_BYTES);
  crypto_scalarmult_base(kp.pk.data(), kp.sk.data());
  return kp;
}

Mac f1(const LongTermKey& k, Sqn sqn, const Rand& rand) {
  auto s = sqn.encode();
  return truncate<Mac>(keyed_prf(k.view(), 0x01, s, rand.view()));
}

ResponseTag f2(const LongTermKey& k, const Rand& rand) {
  return truncate<ResponseTag>(keyed_prf(k.view(), 0x02, rand.view()));
}

CipherKey f3(const LongTermKey& k, const Rand& rand) {
  return truncate<CipherKey>(keyed_prf(k.view(), 0x03, rand.view()));
}

IntegrityKey f4(const LongTermKey& k, const Rand& rand) {
  return truncate<IntegrityKey>(keyed_prf(k.view(), 0x04, rand.view()));
}

AnonymityKey f5(const LongTermKey& k, const Rand& rand) {
  return truncate<AnonymityKey>(keyed_prf(k.view(), 0x05, rand.view()));
}

Mac f1_star(const LongTermKey& k, Sqn sqn_ms, const Rand& rand) {
  auto s = sqn_ms.encode();
  return truncate<Mac>(keyed_prf(k.view(), 0x11, s, rand.view()));
}

AnonymityKey f5_star(const LongTermKey& k, const Rand& rand) {
  return truncate<AnonymityKey>(keyed_prf(k.view(), 0x15, rand.view()));
}

SessionKeys session_keys(const LongTermKey& k, const Rand& rand) {
  return {f3(k, rand), f4(k, rand)};
}

ConcealedSqn xor_mask(Sqn sqn, const AnonymityKey& ak) {
  auto s = sqn.encode();
  ConcealedSqn out;
  for (std::size_t i = 0; i < kSqnSize; ++i) out.bytes[i] = s[i] ^ ak.bytes[i];
  return out;
}

Sqn unmask(const ConcealedSqn& concealed, const AnonymityKey& ak) {
  std::array<std::uint8_t, kSqnSize> s{};
  for (std::size_t i = 0; i < kSqnSize; ++i) s[i] = concealed.bytes[i] ^ ak.bytes[i];
  return Sqn::decode(s);
}

Bytes senc(ByteView key, ByteView plaintext, ByteView nonce) {
  if (nonce.size() != kSencNonceSize) throw Error("senc nonce must be 12 bytes");
  auto k = expand_senc_key(key);
  Bytes out(nonce.begin(), nonce.end());
  out.resize(kSencNonceSize + plaintext.size() + kSencTagSize);
  unsigned long long clen = 0;
  crypto_aead_chacha20poly1305_ietf_encrypt(out.data() + kSencNonceSize, &clen,
                                            plaintext.data(), plaintext.size(),
                                            nullptr, 0, nullptr, nonce.data(), k.data());
  out.resize(kSencNonceSize + clen);
  return out;
}

Bytes sdec(ByteView key, ByteView ciphertext) {
  if (ciphertext.size() < kSencNonceSize + kSencTagSize) throw AuthenticityFailure();
  auto k = expand_senc_key(key);
  const std::uint8_t* nonce = ciphertext.data();
  ByteView body = ciphertext.subspan(kSencNonceSize);
  Bytes out(body.size() - kSencTagSize);
  unsigned long long mlen = 0;
  if (crypto_aead_chacha20poly1305_ietf_decrypt(out.data(), &mlen, nullptr, body.data(),
                                                body.size(), nullptr, 0, nonce,
                                                k.data()) != 0) {
    throw AuthenticityFailure();
  }
  out.resize(mlen);
  return out;
}

Bytes pk_encrypt(ByteView pk, ByteView payload, ByteView randomness) {
  ensure_sodium();
  if (pk.size() != kPkPublicKeySize) throw Error("public key must be 32 bytes");
  if (randomness.size() != kPkRandomnessSize) throw Error("pk randomness must be 16 bytes");
  if (payload.size() > kPkPlaintextSize) throw Error("pk payload exceeds 32 bytes");

  auto esk = sha256(randomness);
  std::array<std::uint8_t, 32> epk{};
  crypto_scalarmult_base(epk.data(), esk.data());
  std::array<std::uint8_t, 32> shared{};
  if (crypto_scalarmult(shared.data(), esk.data(), pk.data()) != 0) {
    throw Error("degenerate public key");
  }
  auto key = pk_session_key(shared, epk, pk);

  std::array<std::uint8_t, kPkBlockSize> block{};
  block[0] = static_cast<std::uint8_t>(payload.size());
  std::copy(payload.begin(), payload.end(), block.begin() + 1);

  std::array<std::uint8_t, crypto_aead_chacha20poly1305_ietf_NPUBBYTES> nonce{};
  Bytes out(epk.begin(), epk.end());
  out.resize(kPkCiphertextSize);
  unsigned long long clen = 0;
  crypto_aead_chacha20poly1305_ietf_encrypt(out.data() + kPkPublicKeySize, &clen,
                                            block.data(), block.size(), nullptr, 0,
                                            nullptr, nonce.data(), key.data());
  return out;
}

Bytes pk_decrypt(ByteView sk, ByteView ciphertext) {
  ensure_sodium();
  if (sk.size() != crypto_scalarmult_SCALARBYTES) {
    throw DecryptionFailure("secret key must be 32 bytes");
  }
  if (ciphertext.size() != kPkCiphertextSize) {
    throw DecryptionFailure("ciphertext has wrong length");
  }
  ByteView epk = ciphertext.first(kPkPublicKeySize);
  ByteView body = ciphertext.subspan(kPkPublicKeySize);
  std::array<std::uint8_t, 32> shared{};
  if (crypto_scalarmult(shared.data(), sk.data(), epk.data()) != 0) {
    throw DecryptionFailure("degenerate ephemeral key");
  }
  std::array<std::uint8_t, 32> pk{};
  crypto_scalarmult_base(pk.data(), sk.data());
  auto key = pk_session_key(shared, epk, pk);

  std::array<std::uint8_t, kPkBlockSize> block{};
  std::array<std::uint8_t, crypto_aead_chacha20poly1305_ietf_NPUBBYTES> nonce{};
  unsigned long long mlen = 0;
  if (crypto_aead_chacha20poly1305_ietf_decrypt(block.data(), &mlen, nullptr, body.data(),
                                                body.size(), nullptr, 0, nonce.data(),
                                                key.data()) != 0) {
    throw DecryptionFailure("ciphertext failed authentication");
  }
  if (block[0] > kPkPlaintextSize) throw DecryptionFailure("bad payload length");
  return Bytes(block.begin() + 1, block.begin() + 1 + block[0]);
}

}  // namespace umtslab::crypto
