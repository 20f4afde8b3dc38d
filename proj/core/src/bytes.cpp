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

#include "vaccsc/bytes.hpp"

#include <bit>
#include <cstring>

namespace vaccsc {

namespace {

constexpr char kHexDigits[] = "0123456789abcdef";

int hex_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

}  // namespace

std::string to_hex(ByteView bytes) {
  std::string out;
  out.reserve(bytes.size() * 2);
  for (auto b : bytes) {
    out.push_back(kHexDigits[b >> 4]);
    out.push_back(kHexDigits[b & 0x0f]);
  }
  return out;
}

std::optional<Bytes> from_hex(std::string_view hex) {
  if (hex.size() % 2 != 0) {
    return std::nullopt;
  }
  Bytes out;
  out.reserve(hex.size() / 2);
  for (std::size_t i = 0; i < hex.size(); i += 2) {
    int hi = hex_value(hex[i]);
    int lo = hex_value(hex[i + 1]);
    if (hi < 0 || lo < 0) {
      return std::nullopt;
    }
    out.push_back(static_cast<std::uint8_t>((hi << 4) | lo));
  }
  return out;
}

void ByteWriter::u32(std::uint32_t v) {
  for (int shift = 24; shift >= 0; shift -= 8) {
    out_.push_back(static_cast<std::uint8_t>(v >> shift));
  }
}

void ByteWriter::u64(std::uint64_t v) {
  for (int shift = 56; shift >= 0; shift -= 8) {
    out_.push_back(static_cast<std::uint8_t>(v >> shift));
  }
}

void ByteWriter::f64(double v) { u64(std::bit_cast<std::uint64_t>(v)); }

void ByteWriter::var_bytes(ByteView bytes) {
  if (bytes.size() > UINT32_MAX) {
    throw std::length_error("ByteWriter: field exceeds 4 GiB");
  }
  u32(static_cast<std::uint32_t>(bytes.size()));
  raw(bytes);
}

ByteView ByteReader::raw(std::size_t n) {
  if (remaining() < n) {
    throw DecodeError("unexpected end of input");
  }
  auto view = in_.subspan(pos_, n);
  pos_ += n;
  return view;
}

std::uint8_t ByteReader::u8() { return raw(1)[0]; }

std::uint32_t ByteReader::u32() {
  auto view = raw(4);
  std::uint32_t v = 0;
  for (auto b : view) v = (v << 8) | b;
  return v;
}

std::uint64_t ByteReader::u64() {
  auto view = raw(8);
  std::uint64_t v = 0;
  for (auto b : view) v = (v << 8) | b;
  return v;
}

double ByteReader::f64() { return std::bit_cast<double>(u64()); }

bool ByteReader::boolean() {
  auto v = u8();
  if (v > 1) {
    throw DecodeError("invalid boolean byte");
  }
  return v == 1;
}

Bytes ByteReader::var_bytes() {
  auto n = u32();
  auto view = raw(n);
  return Bytes(view.begin(), view.end());
}

std::string ByteReader::str() {
  auto n = u32();
  auto view = raw(n);
  return std::string(view.begin(), view.end());
}

void ByteReader::expect_done() const {
  if (!done()) {
    throw DecodeError("trailing bytes after record");
  }
}

}  // namespace vaccsc
