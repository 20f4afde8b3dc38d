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

#include "vaccsc/rng.hpp"

#include <stdexcept>

#include "vaccsc/crypto.hpp"

namespace vaccsc {

namespace {

constexpr std::string_view kSeedDomain = "vaccsc.rng.seed";
constexpr std::string_view kForkDomain = "vaccsc.rng.fork";

}  // namespace

Rng::Rng(const ByteArray<32>& key, int) : key_(key) {}

Rng::Rng(std::uint64_t seed) {
  ByteWriter w;
  w.raw(as_bytes(kSeedDomain));
  w.u64(seed);
  key_ = crypto::sha256(w.data());
}

Rng Rng::from_key(const ByteArray<32>& key) { return Rng(key, 0); }

Rng Rng::from_entropy() {
  ByteArray<32> key{};
  crypto::os_random_bytes(key);
  return Rng(key, 0);
}

Rng Rng::fork(std::string_view label) const {
  crypto::Sha256 h;
  h.update(kForkDomain).update(key_).update(label);
  return Rng(h.finish(), 0);
}

void Rng::refill() {
  constexpr std::uint32_t kBlocks = kBufferSize / 64;
  if (next_block_ > std::numeric_limits<std::uint32_t>::max() - kBlocks) {
    throw std::runtime_error("Rng: keystream exhausted");
  }
  crypto::chacha20_keystream(key_, next_block_, buffer_);
  next_block_ += kBlocks;
  pos_ = 0;
}

void Rng::fill(std::span<std::uint8_t> out) {
  std::size_t written = 0;
  while (written < out.size()) {
    if (pos_ == kBufferSize) {
      refill();
    }
    auto n = std::min(out.size() - written, kBufferSize - pos_);
    std::copy_n(buffer_.begin() + static_cast<std::ptrdiff_t>(pos_), n,
                out.begin() + static_cast<std::ptrdiff_t>(written));
    pos_ += n;
    written += n;
  }
}

std::uint64_t Rng::next_u64() {
  ByteArray<8> b{};
  fill(b);
  std::uint64_t v = 0;
  for (int i = 7; i >= 0; --i) {
    v = (v << 8) | b[static_cast<std::size_t>(i)];
  }
  return v;
}

std::uint64_t Rng::uniform_below(std::uint64_t bound) {
  if (bound == 0) {
    throw std::invalid_argument("Rng::uniform_below: bound must be positive");
  }
  // Rejection sampling on the largest multiple of bound.
  const std::uint64_t limit = max() - (max() % bound + 1) % bound;
  for (;;) {
    auto v = next_u64();
    if (v <= limit) {
      return v % bound;
    }
  }
}

double Rng::uniform01() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

}  // namespace vaccsc
