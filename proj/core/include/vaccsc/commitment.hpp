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

#include <compare>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "vaccsc/bytes.hpp"
#include "vaccsc/crypto.hpp"
#include "vaccsc/rng.hpp"

namespace vaccsc::commitment {

enum class ShotContent : std::uint8_t {
  Placebo = 0x00,
  Vaccine = 0x01,
};

constexpr std::uint8_t encode(ShotContent c) { return static_cast<std::uint8_t>(c); }
std::optional<ShotContent> decode_content(std::uint8_t byte);

/// "vaccine" / "placebo"
std::string_view to_string(ShotContent c);
std::optional<ShotContent> parse_content(std::string_view s);

inline constexpr std::size_t kNonceSize = 32;
inline constexpr std::size_t kOpeningSize = kNonceSize + 1;

struct Nonce {
  ByteArray<kNonceSize> bytes{};

  auto operator<=>(const Nonce&) const = default;
};

/// Preimage of a shot commitment: nonce bytes followed by the content byte.
struct Opening {
  ShotContent content = ShotContent::Placebo;
  Nonce nonce;

  ByteArray<kOpeningSize> serialize() const;
  static std::optional<Opening> deserialize(ByteView bytes);

  bool operator==(const Opening&) const = default;
};

/// SHA-256 digest; doubles as the shot identifier on the ledger.
struct Commitment {
  crypto::Digest digest{};

  std::string hex() const { return to_hex(digest); }
  static std::optional<Commitment> from_hex(std::string_view hex);

  auto operator<=>(const Commitment&) const = default;
};

/// Hash-commit over an arbitrary canonical preimage. Shot openings and
/// coin-flip contributions both go through this.
Commitment commit_bytes(ByteView preimage);

Commitment commit(const Opening& opening);

bool verify_opening(const Commitment& c, const Opening& opening);

/// Serialized-opening form. Anything that is not exactly 33 bytes with a
/// valid content byte is rejected as false.
bool verify_opening(const Commitment& c, ByteView serialized_opening);

Nonce generate_nonce(Rng& rng);

struct GoldenVector {
  Nonce nonce;
  ShotContent content = ShotContent::Placebo;
  Commitment expected;
};

/// Conformance file: [{nonce_hex, content, expected_digest_hex}, ...].
/// Throws std::invalid_argument on malformed entries.
std::vector<GoldenVector> golden_vectors_from_json(const nlohmann::json& j);
nlohmann::json golden_vectors_to_json(const std::vector<GoldenVector>& vectors);

}  // namespace vaccsc::commitment
