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

#include <filesystem>

#include <doctest.h>

#include "support.hpp"
#include "vaccsc/log_file.hpp"

using namespace vaccsc;
using namespace vaccsc::ledger;

namespace {

const ledger::Ledger& small_run() {
  static const auto run = actors::simulate(testing::small_params(8, 3), testing::disease(0.5, 0.15), {}, 21);
  return run.ledger;
}

struct RawRecord {
  std::size_t offset;  // of the length prefix
  std::size_t size;    // prefix + body + chain
};

// Walks the container format without the library's decoder.
std::vector<RawRecord> walk(ByteView bytes, bool& chain_ok) {
  std::vector<RawRecord> out;
  auto chain = crypto::sha256(as_bytes("vaccsc.log.v1"));
  chain_ok = true;
  std::size_t pos = 8;
  while (pos < bytes.size()) {
    std::uint32_t len = (std::uint32_t{bytes[pos]} << 24) | (std::uint32_t{bytes[pos + 1]} << 16) |
                        (std::uint32_t{bytes[pos + 2]} << 8) | bytes[pos + 3];
    crypto::Sha256 h;
    h.update(chain).update(bytes.subspan(pos, 4 + len));
    chain = h.finish();
    chain_ok = chain_ok && std::equal(chain.begin(), chain.end(), bytes.begin() + static_cast<std::ptrdiff_t>(pos + 4 + len));
    out.push_back({pos, 4 + len + 32});
    pos += 4 + len + 32;
  }
  return out;
}

Bytes without_record(const Bytes& bytes, const RawRecord& r) {
  Bytes out(bytes.begin(), bytes.begin() + static_cast<std::ptrdiff_t>(r.offset));
  out.insert(out.end(), bytes.begin() + static_cast<std::ptrdiff_t>(r.offset + r.size), bytes.end());
  return out;
}

}  // namespace

TEST_CASE("encoded log starts with the magic and carries a valid hash chain") {
  auto bytes = encode_log(small_run());
  const std::string magic("VSCLOG\0\x01", 8);
  CHECK(std::equal(magic.begin(), magic.end(), bytes.begin(),
                   [](char a, std::uint8_t b) { return static_cast<std::uint8_t>(a) == b; }));
  bool chain_ok = false;
  auto records = walk(bytes, chain_ok);
  CHECK(chain_ok);
  CHECK(records.size() == small_run().log().records.size() + 2);
  CHECK(bytes[records.back().offset + 4] == kFooterRecord);
  CHECK(bytes[records.front().offset + 4] == kGenesisRecord);
}

TEST_CASE("decode inverts encode") {
  const auto& l = small_run();
  auto parsed = decode_log(encode_log(l));
  CHECK(parsed.log.genesis == l.log().genesis);
  CHECK(parsed.log.records == l.log().records);
  CHECK(parsed.final_state_digest == l.state_digest());
}

TEST_CASE("audit accepts the untampered log and reproduces the state") {
  const auto& l = small_run();
  auto result = audit_log(encode_log(l), trial::VaccineTrial::factory());
  CHECK(result.ok);
  REQUIRE(result.replayed);
  CHECK(result.replayed->state_bytes() == l.state_bytes());
}

TEST_CASE("every single-byte change is detected") {
  auto bytes = encode_log(small_run());
  const auto factory = trial::VaccineTrial::factory();
  std::size_t missed = 0;
  for (std::size_t i = 0; i < bytes.size(); ++i) {
    auto copy = bytes;
    copy[i] ^= 0x01;
    if (audit_log(copy, factory).ok) ++missed;
  }
  CHECK(missed == 0);
}

TEST_CASE("record deletion reports the deleted position") {
  auto bytes = encode_log(small_run());
  bool chain_ok = false;
  auto records = walk(bytes, chain_ok);
  const auto factory = trial::VaccineTrial::factory();
  for (std::size_t i = 0; i < records.size(); ++i) {
    auto result = audit_log(without_record(bytes, records[i]), factory);
    CHECK_FALSE(result.ok);
    REQUIRE(result.first_divergent_record);
    CHECK(*result.first_divergent_record == i);
  }
}

TEST_CASE("missing footer is tolerated only on request") {
  auto bytes = encode_log(small_run());
  bool chain_ok = false;
  auto records = walk(bytes, chain_ok);
  auto truncated = without_record(bytes, records.back());
  CHECK_THROWS_AS(decode_log(truncated), LogFormatError);
  auto parsed = decode_log(truncated, /*require_footer=*/false);
  CHECK_FALSE(parsed.final_state_digest);
  CHECK(parsed.log.records.size() == small_run().log().records.size());
  CHECK_FALSE(audit_log(truncated, trial::VaccineTrial::factory()).ok);
}

TEST_CASE("garbage input is a format error, not a crash") {
  CHECK_THROWS_AS(decode_log(Bytes{}), LogFormatError);
  CHECK_THROWS_AS(decode_log(as_bytes("VSCLOG")), LogFormatError);
  Bytes header{'V', 'S', 'C', 'L', 'O', 'G', 0, 1};
  CHECK_THROWS_AS(decode_log(header), LogFormatError);
  header.push_back(0xff);
  CHECK_THROWS_AS(decode_log(header), LogFormatError);
}

TEST_CASE("files round-trip and the JSON export lists every transaction") {
  const auto& l = small_run();
  auto path = std::filesystem::temp_directory_path() / "vaccsc_log_file_test.vlog";
  write_file(path, encode_log(l));
  CHECK(read_file(path) == encode_log(l));
  std::filesystem::remove(path);
  CHECK_THROWS(read_file(path));

  auto j = export_json(l.log(), l.state_digest(), &l.contract());
  CHECK(j["format"] == "vaccsc-log-export/1");
  CHECK(j["transactions"].size() == l.log().records.size());
  CHECK(j["final_state_digest"] == to_hex(l.state_digest()));
  std::size_t rejected = 0;
  for (const auto& t : j["transactions"]) rejected += t["status"] == "rejected";
  CHECK(rejected == l.rejections().size());
}
