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

#include "vaccsc/log_file.hpp"

#include <fstream>
#include <iterator>

namespace vaccsc::ledger {

namespace {

constexpr ByteArray<8> kMagic = {'V', 'S', 'C', 'L', 'O', 'G', 0x00, 0x01};
constexpr std::string_view kChainSeed = "vaccsc.log.v1";

crypto::Digest chain_step(const crypto::Digest& prev, ByteView body) {
  ByteWriter len;
  len.u32(static_cast<std::uint32_t>(body.size()));
  crypto::Sha256 h;
  h.update(prev).update(len.data()).update(body);
  return h.finish();
}

class RecordWriter {
 public:
  RecordWriter() : chain_(crypto::sha256(as_bytes(kChainSeed))) { out_.raw(kMagic); }

  void append(const Bytes& body) {
    out_.u32(static_cast<std::uint32_t>(body.size()));
    out_.raw(body);
    chain_ = chain_step(chain_, body);
    out_.raw(chain_);
  }

  Bytes take() { return out_.take(); }

 private:
  ByteWriter out_;
  crypto::Digest chain_;
};

}  // namespace

Bytes encode_log(const TransactionLog& log, const crypto::Digest& final_state_digest) {
  RecordWriter out;
  {
    ByteWriter w;
    w.u8(kGenesisRecord);
    log.genesis.encode(w);
    out.append(w.take());
  }
  for (const auto& rec : log.records) {
    ByteWriter w;
    w.u8(kTransactionRecord);
    rec.encode(w);
    out.append(w.take());
  }
  {
    ByteWriter w;
    w.u8(kFooterRecord);
    w.u64(log.records.size());
    w.raw(final_state_digest);
    out.append(w.take());
  }
  return out.take();
}

ParsedLog decode_log(ByteView bytes, bool require_footer) {
  if (bytes.size() < kMagic.size() || !std::equal(kMagic.begin(), kMagic.end(), bytes.begin())) {
    throw LogFormatError(0, "not a vaccsc transaction log (bad magic)");
  }
  ByteReader in(bytes.subspan(kMagic.size()));
  auto chain = crypto::sha256(as_bytes(kChainSeed));

  ParsedLog parsed;
  bool have_genesis = false;
  for (std::size_t index = 0; !in.done(); ++index) {
    if (parsed.final_state_digest) {
      throw LogFormatError(index, "data after footer record");
    }
    try {
      auto length = in.u32();
      auto body = in.raw(length);
      auto stored_chain = in.array<32>();
      chain = chain_step(chain, body);
      if (chain != stored_chain) {
        throw LogFormatError(index, "hash chain mismatch");
      }
      ByteReader r(body);
      auto kind = r.u8();
      if (index == 0) {
        if (kind != kGenesisRecord) {
          throw LogFormatError(index, "first record is not a genesis record");
        }
        parsed.log.genesis = Genesis::decode(r);
        have_genesis = true;
      } else if (kind == kTransactionRecord) {
        auto rec = TransactionRecord::decode(r);
        if (rec.index != parsed.log.records.size()) {
          throw LogFormatError(index, "transaction index out of sequence");
        }
        parsed.log.records.push_back(std::move(rec));
      } else if (kind == kFooterRecord) {
        auto count = r.u64();
        if (count != parsed.log.records.size()) {
          throw LogFormatError(index, "footer transaction count mismatch");
        }
        parsed.final_state_digest = r.array<32>();
      } else {
        throw LogFormatError(index, "unknown record kind " + std::to_string(kind));
      }
      r.expect_done();
    } catch (const DecodeError& e) {
      throw LogFormatError(index, std::string("malformed record: ") + e.what());
    }
  }
  if (!have_genesis) {
    throw LogFormatError(0, "log has no genesis record");
  }
  if (require_footer && !parsed.final_state_digest) {
    throw LogFormatError(parsed.log.records.size() + 1, "log is truncated (no footer record)");
  }
  return parsed;
}

Bytes read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("cannot open " + path.string());
  }
  return Bytes(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

void write_file(const std::filesystem::path& path, ByteView bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw std::runtime_error("cannot write " + path.string());
  }
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
}

nlohmann::json export_json(const TransactionLog& log, const crypto::Digest& final_state_digest,
                           const Contract* contract) {
  auto txs = nlohmann::json::array();
  for (const auto& rec : log.records) {
    auto events = nlohmann::json::array();
    for (const auto& e : rec.events) {
      nlohmann::json je = {{"index", e.index}, {"name", e.name}, {"cause", e.cause}};
      je["data"] = contract ? contract->describe_event(e) : nlohmann::json{{"payload_hex", to_hex(e.payload)}};
      events.push_back(std::move(je));
    }
    nlohmann::json jt = {
        {"index", rec.index},
        {"tick", rec.tick},
        {"sender", rec.tx.sender.hex()},
        {"sender_public_key", to_hex(rec.tx.sender_key)},
        {"method", rec.tx.method},
        {"payload_hex", to_hex(rec.tx.payload)},
        {"sequence", rec.tx.sequence},
        {"signature", to_hex(rec.tx.signature)},
        {"status", rec.rejection ? "rejected" : "accepted"},
        {"events", std::move(events)},
    };
    if (rec.rejection) {
      jt["rejection"] = {{"kind", std::string(to_string(rec.rejection->kind))},
                         {"code", rec.rejection->code},
                         {"detail", rec.rejection->detail}};
    }
    txs.push_back(std::move(jt));
  }
  return {{"format", "vaccsc-log-export/1"},
          {"genesis", log.genesis.to_json()},
          {"transactions", std::move(txs)},
          {"final_state_digest", to_hex(final_state_digest)}};
}

AuditResult audit_log(ByteView bytes, const ContractFactory& factory) {
  AuditResult result;
  ParsedLog parsed;
  try {
    parsed = decode_log(bytes, /*require_footer=*/true);
  } catch (const LogFormatError& e) {
    result.first_divergent_record = e.record_index();
    result.message = e.what();
    return result;
  }

  auto replay = replay_and_verify(parsed.log, factory);
  if (replay.divergence) {
    result.first_divergent_record = replay.divergence->record_index;
    result.message = replay.divergence->reason;
    return result;
  }
  auto digest = replay.ledger->state_digest();
  result.replayed = std::move(replay.ledger);
  if (digest != *parsed.final_state_digest) {
    result.first_divergent_record = parsed.log.records.size() + 1;
    result.message = "replayed state digest " + to_hex(digest) +
                     " does not match the recorded final state";
    return result;
  }
  result.ok = true;
  result.message = "replayed state matches recorded digest " + to_hex(digest);
  return result;
}

}  // namespace vaccsc::ledger
