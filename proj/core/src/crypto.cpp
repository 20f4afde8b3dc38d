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

#include "vaccsc/crypto.hpp"

#include <sodium.h>

#include <stdexcept>

namespace vaccsc::crypto {

void ensure_initialized() {
  static const bool ok = sodium_init() >= 0;
  if (!ok) {
    throw std::runtime_error("libsodium initialisation failed (no entropy source?)");
  }
}

Digest sha256(ByteView data) {
  ensure_initialized();
  Digest out{};
  crypto_hash_sha256(out.data(), data.data(), data.size());
  return out;
}

struct Sha256::State {
  crypto_hash_sha256_state st;
};

Sha256::Sha256() : state_(std::make_unique<State>()) {
  ensure_initialized();
  crypto_hash_sha256_init(&state_->st);
}

Sha256::~Sha256() = default;

Sha256& Sha256::update(ByteView data) {
  crypto_hash_sha256_update(&state_->st, data.data(), data.size());
  return *this;
}

Digest Sha256::finish() {
  Digest out{};
  crypto_hash_sha256_final(&state_->st, out.data());
  return out;
}

void ed25519_keypair_from_seed(const SigningSeed& seed, PublicKey& pk, SecretKey& sk) {
  ensure_initialized();
  crypto_sign_seed_keypair(pk.data(), sk.data(), seed.data());
}

Signature ed25519_sign(const SecretKey& sk, ByteView message) {
  Signature sig{};
  crypto_sign_detached(sig.data(), nullptr, message.data(), message.size(), sk.data());
  return sig;
}

bool ed25519_verify(const PublicKey& pk, ByteView message, const Signature& sig) {
  return crypto_sign_verify_detached(sig.data(), message.data(), message.size(),
                                     pk.data()) == 0;
}

void chacha20_keystream(const ByteArray<32>& key, std::uint32_t block_counter,
                        std::span<std::uint8_t> out) {
  static const ByteArray<crypto_stream_chacha20_ietf_NONCEBYTES> kZeroNonce{};
  std::fill(out.begin(), out.end(), std::uint8_t{0});
  crypto_stream_chacha20_ietf_xor_ic(out.data(), out.data(), out.size(), kZeroNonce.data(),
                                     block_counter, key.data());
}

void os_random_bytes(std::span<std::uint8_t> out) {
  ensure_initialized();
  randombytes_buf(out.data(), out.size());
}

}  // namespace vaccsc::crypto
