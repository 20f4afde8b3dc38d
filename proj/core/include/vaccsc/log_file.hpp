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

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>

#include <nlohmann/json.hpp>

#include "vaccsc/ledger.hpp"

namespace vaccsc::ledger {

// Binary transaction log.
//
//   file    := magic record* footer
//   magic   := "VSCLOG" 0x00 0x01
//   record  := u32 length | body[length] | chain[32]
//   body    := kind:u8 payload
//   chain_i := SHA-256(chain_{i-1} | u32 length | body), chain_{-1} = SHA-256("vaccsc.log.v1")
//
// Record 0 is the genesis (kind 1), records 1..n are transactions (kind 2),
// the last record is the footer (kind 3): u64 transaction count followed by
// the 32-byte digest of the final ledger state.

inline constexpr std::uint8_t kGenesisRecord = 1;
inline constexpr std::uint8_t kTransactionRecord = 2;
inline constexpr std::uint8_t kFooterRecord = 3;

class LogFormatError : public std::runtime_error {
 public:
  LogFormatError(std::size_t record_index, const std::string& what)
      : std::runtime_error(what), record_index_(record_index) {}
  std::size_t record_index() const { return record_index_; }

 private:
  std::size_t record_index_;
};

struct ParsedLog {
  TransactionLog log;
  std::optional<crypto::Digest> final_state_digest;  // absent if footer missing
};

Bytes encode_log(const TransactionLog& log, const crypto::Digest& final_state_digest);
inline Bytes encode_log(const Ledger& ledger) { return encode_log(ledger.log(), ledger.state_digest()); }

/// Verifies framing and the hash chain. With require_footer=false a log that
/// simply stops after a complete record is accepted (mid-trial snapshots).
ParsedLog decode_log(ByteView bytes, bool require_footer = true);

Bytes read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, ByteView bytes);

/// Human-readable export; events are described by `contract` when given.
nlohmann::json export_json(const TransactionLog& log, const crypto::Digest& final_state_digest,
                           const Contract* contract = nullptr);

struct AuditResult {
  bool ok = false;
  std::optional<std::size_t> first_divergent_record;
  std::string message;
  std::optional<Ledger> replayed;
};

/// Chain check, full replay, then comparison with the embedded final digest.
AuditResult audit_log(ByteView bytes, const ContractFactory& factory);

}  // namespace vaccsc::ledger
