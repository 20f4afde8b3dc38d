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

#include <memory>

#include "vaccsc/bytes.hpp"

namespace vaccsc::crypto {

using Digest = ByteArray<32>;

// Throws std::runtime_error if libsodium cannot be initialised.
void ensure_initialized();

Digest sha256(ByteView data);

class Sha256 {
 public:
  Sha256();
  ~Sha256();
  Sha256(const Sha256&) = delete;
  Sha256& operator=(const Sha256&) = delete;

  Sha256& update(ByteView data);
  Sha256& update(std::string_view s) { return update(as_bytes(s)); }
  Digest finish();

 private:
  struct State;
  std::unique_ptr<State> state_;
};

using PublicKey = ByteArray<32>;
using SecretKey = ByteArray<64>;
using Signature = ByteArray<64>;
using SigningSeed = ByteArray<32>;

// Ed25519. Key derivation from a 32-byte seed is deterministic.
void ed25519_keypair_from_seed(const SigningSeed& seed, PublicKey& pk, SecretKey& sk);
Signature ed25519_sign(const SecretKey& sk, ByteView message);
bool ed25519_verify(const PublicKey& pk, ByteView message, const Signature& sig);

// IETF ChaCha20 keystream starting at the given 64-byte block counter,
// all-zero 96-bit nonce.
void chacha20_keystream(const ByteArray<32>& key, std::uint32_t block_counter,
                        std::span<std::uint8_t> out);

void os_random_bytes(std::span<std::uint8_t> out);

}  // namespace vaccsc::crypto
