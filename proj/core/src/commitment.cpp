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

#include "vaccsc/commitment.hpp"

#include <stdexcept>

#include <nlohmann/json.hpp>

namespace vaccsc::commitment {

std::optional<ShotContent> decode_content(std::uint8_t byte) {
  switch (byte) {
    case 0x00:
      return ShotContent::Placebo;
    case 0x01:
      return ShotContent::Vaccine;
    default:
      return std::nullopt;
  }
}

std::string_view to_string(ShotContent c) {
  return c == ShotContent::Vaccine ? "vaccine" : "placebo";
}

std::optional<ShotContent> parse_content(std::string_view s) {
  if (s == "vaccine" || s == "Vaccine") return ShotContent::Vaccine;
  if (s == "placebo" || s == "Placebo") return ShotContent::Placebo;
  return std::nullopt;
}

ByteArray<kOpeningSize> Opening::serialize() const {
  ByteArray<kOpeningSize> out{};
  std::copy(nonce.bytes.begin(), nonce.bytes.end(), out.begin());
  out[kNonceSize] = encode(content);
  return out;
}

std::optional<Opening> Opening::deserialize(ByteView bytes) {
  if (bytes.size() != kOpeningSize) {
    return std::nullopt;
  }
  auto content = decode_content(bytes[kNonceSize]);
  if (!content) {
    return std::nullopt;
  }
  Opening o;
  o.content = *content;
  std::copy_n(bytes.begin(), kNonceSize, o.nonce.bytes.begin());
  return o;
}

std::optional<Commitment> Commitment::from_hex(std::string_view hex) {
  auto digest = array_from_hex<32>(hex);
  if (!digest) {
    return std::nullopt;
  }
  return Commitment{*digest};
}

Commitment commit_bytes(ByteView preimage) { return Commitment{crypto::sha256(preimage)}; }

Commitment commit(const Opening& opening) { return commit_bytes(opening.serialize()); }

bool verify_opening(const Commitment& c, const Opening& opening) { return commit(opening) == c; }

bool verify_opening(const Commitment& c, ByteView serialized_opening) {
  auto opening = Opening::deserialize(serialized_opening);
  return opening && verify_opening(c, *opening);
}

Nonce generate_nonce(Rng& rng) { return Nonce{rng.bytes<kNonceSize>()}; }

std::vector<GoldenVector> golden_vectors_from_json(const nlohmann::json& j) {
  if (!j.is_array()) {
    throw std::invalid_argument("golden vectors: expected a JSON array");
  }
  std::vector<GoldenVector> out;
  for (const auto& entry : j) {
    auto nonce = array_from_hex<kNonceSize>(entry.at("nonce_hex").get<std::string>());
    auto content = parse_content(entry.at("content").get<std::string>());
    auto expected = Commitment::from_hex(entry.at("expected_digest_hex").get<std::string>());
    if (!nonce || !content || !expected) {
      throw std::invalid_argument("golden vectors: malformed entry " + entry.dump());
    }
    out.push_back({Nonce{*nonce}, *content, *expected});
  }
  return out;
}

nlohmann::json golden_vectors_to_json(const std::vector<GoldenVector>& vectors) {
  auto out = nlohmann::json::array();
  for (const auto& v : vectors) {
    out.push_back({{"nonce_hex", to_hex(v.nonce.bytes)},
                   {"content", std::string(to_string(v.content))},
                   {"expected_digest_hex", v.expected.hex()}});
  }
  return out;
}

}  // namespace vaccsc::commitment
