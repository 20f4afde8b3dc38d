// Copyright 2026 The vaccsc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <limits>
#include <string_view>
#include <utility>
#include <vector>

#include "vaccsc/bytes.hpp"

namespace vaccsc {

/// Seedable ChaCha20 keystream generator.
///
/// A seeded generator yields the same byte stream on every platform, which
/// keeps simulations and their transaction logs reproducible. The
/// entropy-keyed variant is suitable for real nonces and signing keys.
/// Integer and real draws are defined here (not via <random>
/// distributions) so results do not depend on the standard library.
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t seed);
  static Rng from_key(const ByteArray<32>& key);
  static Rng from_entropy();

  /// Independent stream keyed by (this key, label); does not consume output.
  Rng fork(std::string_view label) const;

  void fill(std::span<std::uint8_t> out);

  template <std::size_t N>
  ByteArray<N> bytes() {
    ByteArray<N> out{};
    fill(out);
    return out;
  }

  /// Little-endian read of the next 8 stream bytes.
  std::uint64_t next_u64();

  /// Uniform in [0, bound); bound must be positive.
  std::uint64_t uniform_below(std::uint64_t bound);

  /// Uniform in [0, 1) with 53 bits of precision.
  double uniform01();

  bool bernoulli(double p) { return uniform01() < p; }

  template <class T>
  void shuffle(std::vector<T>& items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      auto j = static_cast<std::size_t>(uniform_below(i));
      using std::swap;
      swap(items[i - 1], items[j]);
    }
  }

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }
  result_type operator()() { return next_u64(); }

 private:
  explicit Rng(const ByteArray<32>& key, int);
  void refill();

  static constexpr std::size_t kBufferSize = 4096;

  ByteArray<32> key_{};
  std::uint32_t next_block_ = 0;
  std::array<std::uint8_t, kBufferSize> buffer_{};
  std::size_t pos_ = kBufferSize;
};

}  // namespace vaccsc
