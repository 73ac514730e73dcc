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

#ifndef UMTSLAB_BYTES_HPP_
#define UMTSLAB_BYTES_HPP_

#include <array>
#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace umtslab {

using Bytes = std::vector<std::uint8_t>;
using ByteView = std::span<const std::uint8_t>;

// Base class of every error raised by the library. The C API maps the
// concrete subclass onto a status code.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

std::string to_hex(ByteView bytes);
// Throws ConfigError on odd length or non-hex characters.
Bytes from_hex(std::string_view hex);

template <std::size_t N>
Bytes to_bytes(const std::array<std::uint8_t, N>& a) {
  return Bytes(a.begin(), a.end());
}

inline void append(Bytes& out, ByteView b) {
  out.insert(out.end(), b.begin(), b.end());
}

// Deterministic random source. Only raw engine output is consumed so that
// streams are identical across standard library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }
  bool coin() { return (engine_() >> 63) != 0; }
  // Uniform in [0, bound) by rejection; bound must be > 0.
  std::uint64_t below(std::uint64_t bound);
  void fill(std::span<std::uint8_t> out);

  template <std::size_t N>
  std::array<std::uint8_t, N> bytes() {
    std::array<std::uint8_t, N> a{};
    fill(a);
    return a;
  }

 private:
  std::mt19937_64 engine_;
};

// Derives an independent stream seed from (seed, index); SplitMix64 finaliser.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

}  // namespace umtslab

#endif  // UMTSLAB_BYTES_HPP_
