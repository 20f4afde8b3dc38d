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

#include "vaccsc/ledger.hpp"

#include <sstream>

namespace vaccsc::ledger {

namespace {

constexpr std::string_view kTxDomain = "vaccsc.tx.v1";
constexpr std::string_view kGenesisDomain = "vaccsc.genesis.v1";

}  // namespace

std::optional<Address> Address::from_hex(std::string_view hex) {
  auto bytes = array_from_hex<kAddressSize>(hex);
  if (!bytes) {
    return std::nullopt;
  }
  return Address{*bytes};
}

Address address_of(const crypto::PublicKey& pk) {
  auto digest = crypto::sha256(pk);
  Address a;
  std::copy_n(digest.begin(), kAddressSize, a.bytes.begin());
  return a;
}

KeyPair KeyPair::from_seed(const crypto::SigningSeed& seed) {
  KeyPair kp;
  crypto::ed25519_keypair_from_seed(seed, kp.pk_, kp.sk_);
  return kp;
}

Account create_account(Rng& rng) {
  auto keys = KeyPair::from_seed(rng.bytes<32>());
  auto address = keys.address();
  return {std::move(keys), address};
}

Bytes SignedTransaction::signing_bytes(std::string_view method, ByteView payload,
                                       std::uint64_t sequence) {
  ByteWriter w;
  w.raw(as_bytes(kTxDomain));
  w.str(method);
  w.var_bytes(payload);
  w.u64(sequence);
  return w.take();
}

void SignedTransaction::encode(ByteWriter& w) const {
  w.raw(sender.bytes);
  w.raw(sender_key);
  w.str(method);
  w.var_bytes(payload);
  w.u64(sequence);
  w.raw(signature);
}

SignedTransaction SignedTransaction::decode(ByteReader& r) {
  SignedTransaction tx;
  tx.sender.bytes = r.array<kAddressSize>();
  tx.sender_key = r.array<32>();
  tx.method = r.str();
  tx.payload = r.var_bytes();
  tx.sequence = r.u64();
  tx.signature = r.array<64>();
  return tx;
}

SignedTransaction sign_transaction(const KeyPair& keys, std::string method, Bytes payload,
                                   std::uint64_t sequence) {
  SignedTransaction tx;
  tx.sender = keys.address();
  tx.sender_key = keys.public_key();
  tx.signature = keys.sign(SignedTransaction::signing_bytes(method, payload, sequence));
  tx.method = std::move(method);
  tx.payload = std::move(payload);
  tx.sequence = sequence;
  return tx;
}

void Event::encode(ByteWriter& w) const {
  w.u64(index);
  w.str(name);
  w.var_bytes(payload);
  w.u64(cause);
}

Event Event::decode(ByteReader& r) {
  Event e;
  e.index = r.u64();
  e.name = r.str();
  e.payload = r.var_bytes();
  e.cause = r.u64();
  return e;
}

std::string_view to_string(RejectKind k) {
  switch (k) {
    case RejectKind::BadSignature:
      return "BadSignature";
    case RejectKind::StaleSequence:
      return "StaleSequence";
    case RejectKind::UnknownMethod:
      return "UnknownMethod";
    case RejectKind::ContractRejection:
      return "ContractRejection";
  }
  return "?";
}

ContractRejection::ContractRejection(std::string code, std::string detail)
    : std::runtime_error(detail.empty() ? code : code + ": " + detail),
      code_(std::move(code)),
      detail_(std::move(detail)) {}

nlohmann::json Contract::describe_event(const Event& e) const {
  return {{"payload_hex", to_hex(e.payload)}};
}

Genesis Genesis::create(const KeyPair& deployer, std::string contract_id, nlohmann::json params) {
  Genesis g;
  g.contract_id = std::move(contract_id);
  g.deployer_key = deployer.public_key();
  g.deployer = deployer.address();
  g.params = std::move(params);
  g.signature = deployer.sign(g.signing_bytes());
  return g;
}

Bytes Genesis::signing_bytes() const {
  ByteWriter w;
  w.raw(as_bytes(kGenesisDomain));
  w.str(contract_id);
  w.str(params.dump());
  return w.take();
}

bool Genesis::verify() const {
  return address_of(deployer_key) == deployer &&
         crypto::ed25519_verify(deployer_key, signing_bytes(), signature);
}

nlohmann::json Genesis::to_json() const {
  return {{"contract", contract_id},
          {"deployer", deployer.hex()},
          {"deployer_public_key", to_hex(deployer_key)},
          {"params", params},
          {"signature", to_hex(signature)}};
}

Genesis Genesis::from_json(const nlohmann::json& j) {
  Genesis g;
  g.contract_id = j.at("contract").get<std::string>();
  auto deployer = Address::from_hex(j.at("deployer").get<std::string>());
  auto pk = array_from_hex<32>(j.at("deployer_public_key").get<std::string>());
  auto sig = array_from_hex<64>(j.at("signature").get<std::string>());
  if (!deployer || !pk || !sig) {
    throw GenesisError("genesis: malformed hex field");
  }
  g.deployer = *deployer;
  g.deployer_key = *pk;
  g.signature = *sig;
  g.params = j.at("params");
  return g;
}

void Genesis::encode(ByteWriter& w) const {
  w.str(contract_id);
  w.raw(deployer_key);
  w.raw(deployer.bytes);
  w.str(params.dump());
  w.raw(signature);
}

Genesis Genesis::decode(ByteReader& r) {
  Genesis g;
  g.contract_id = r.str();
  g.deployer_key = r.array<32>();
  g.deployer.bytes = r.array<kAddressSize>();
  auto text = r.str();
  g.params = nlohmann::json::parse(text, nullptr, /*allow_exceptions=*/false);
  if (g.params.is_discarded()) {
    throw DecodeError("genesis: params are not valid JSON");
  }
  g.signature = r.array<64>();
  return g;
}

void TransactionRecord::encode(ByteWriter& w) const {
  w.u64(index);
  w.u64(tick);
  tx.encode(w);
  w.boolean(rejection.has_value());
  if (rejection) {
    w.u8(static_cast<std::uint8_t>(rejection->kind));
    w.str(rejection->code);
    w.str(rejection->detail);
  }
  w.u32(static_cast<std::uint32_t>(events.size()));
  for (const auto& e : events) {
    e.encode(w);
  }
}

TransactionRecord TransactionRecord::decode(ByteReader& r) {
  TransactionRecord rec;
  rec.index = r.u64();
  rec.tick = r.u64();
  rec.tx = SignedTransaction::decode(r);
  if (r.boolean()) {
    Rejection rej;
    auto kind = r.u8();
    if (kind > static_cast<std::uint8_t>(RejectKind::ContractRejection)) {
      throw DecodeError("transaction record: bad rejection kind");
    }
    rej.kind = static_cast<RejectKind>(kind);
    rej.code = r.str();
    rej.detail = r.str();
    rec.rejection = std::move(rej);
  }
  auto n = r.u32();
  if (n > r.remaining()) {
    throw DecodeError("transaction record: event count exceeds record size");
  }
  rec.events.reserve(n);
  for (std::uint32_t i = 0; i < n; ++i) {
    rec.events.push_back(Event::decode(r));
  }
  return rec;
}

Ledger::Ledger(Genesis genesis, const ContractFactory& factory) {
  if (!genesis.verify()) {
    throw GenesisError("genesis signature does not verify under the deployer key");
  }
  contract_ = factory(genesis);
  if (!contract_) {
    throw GenesisError("contract factory returned no contract");
  }
  log_.genesis = std::move(genesis);
}

Ledger::Ledger(const Ledger& other)
    : log_(other.log_),
      contract_(other.contract_->clone()),
      next_sequence_(other.next_sequence_),
      events_(other.events_) {}

Ledger& Ledger::operator=(const Ledger& other) {
  if (this != &other) {
    Ledger copy(other);
    *this = std::move(copy);
  }
  return *this;
}

std::uint64_t Ledger::next_sequence(const Address& sender) const {
  auto it = next_sequence_.find(sender);
  return it == next_sequence_.end() ? 0 : it->second;
}

SubmitResult Ledger::submit(const SignedTransaction& tx) {
  TransactionRecord rec;
  rec.index = log_.records.size();
  rec.tick = tick();
  rec.tx = tx;

  auto reject = [&](RejectKind kind, std::string code, std::string detail) -> SubmitResult {
    rec.rejection = Rejection{kind, std::move(code), std::move(detail)};
    Rejection reason = *rec.rejection;
    log_.records.push_back(std::move(rec));
    return Rejected{std::move(reason)};
  };

  if (address_of(tx.sender_key) != tx.sender ||
      !crypto::ed25519_verify(
          tx.sender_key, SignedTransaction::signing_bytes(tx.method, tx.payload, tx.sequence),
          tx.signature)) {
    return reject(RejectKind::BadSignature, "BadSignature", {});
  }
  if (tx.sequence < next_sequence(tx.sender)) {
    return reject(RejectKind::StaleSequence, "StaleSequence",
                  "expected sequence >= " + std::to_string(next_sequence(tx.sender)));
  }
  // Authentic and fresh from here on: the sequence number is consumed even if
  // the contract rejects the call.
  next_sequence_[tx.sender] = tx.sequence + 1;

  if (!contract_->has_method(tx.method)) {
    return reject(RejectKind::UnknownMethod, "UnknownMethod", tx.method);
  }

  std::vector<EmittedEvent> emitted;
  try {
    emitted = contract_->apply(CallContext{tx.sender, rec.tick, rec.index}, tx.method, tx.payload);
  } catch (const ContractRejection& e) {
    return reject(RejectKind::ContractRejection, e.code(), e.detail());
  }

  for (auto& e : emitted) {
    rec.events.push_back(Event{events_.size() + rec.events.size(), std::move(e.name),
                               std::move(e.payload), rec.index});
  }
  events_.insert(events_.end(), rec.events.begin(), rec.events.end());
  Accepted accepted{rec.events};
  log_.records.push_back(std::move(rec));
  return accepted;
}

nlohmann::json Ledger::query(std::string_view view, const nlohmann::json& params) const {
  return contract_->query(view, params);
}

Bytes Ledger::state_bytes() const {
  ByteWriter w;
  w.u64(tick());
  w.u64(events_.size());
  w.u32(static_cast<std::uint32_t>(next_sequence_.size()));
  for (const auto& [address, seq] : next_sequence_) {
    w.raw(address.bytes);
    w.u64(seq);
  }
  w.var_bytes(contract_->serialize_state());
  return w.take();
}

crypto::Digest Ledger::state_digest() const { return crypto::sha256(state_bytes()); }

std::vector<const TransactionRecord*> Ledger::rejections() const {
  std::vector<const TransactionRecord*> out;
  for (const auto& rec : log_.records) {
    if (rec.rejection) out.push_back(&rec);
  }
  return out;
}

Ledger replay(const TransactionLog& log, const ContractFactory& factory) {
  Ledger ledger(log.genesis, factory);
  for (const auto& rec : log.records) {
    ledger.submit(rec.tx);
  }
  return ledger;
}

ReplayResult replay_and_verify(const TransactionLog& log, const ContractFactory& factory) {
  ReplayResult result;
  try {
    result.ledger.emplace(log.genesis, factory);
  } catch (const std::exception& e) {
    result.divergence = ReplayDivergence{0, std::string("genesis rejected: ") + e.what()};
    return result;
  }
  auto& ledger = *result.ledger;
  for (std::size_t i = 0; i < log.records.size(); ++i) {
    const auto& rec = log.records[i];
    auto diverge = [&](std::string why) {
      result.divergence = ReplayDivergence{i + 1, "transaction " + std::to_string(i) + ": " + why};
    };
    if (rec.index != i || rec.tick != ledger.tick()) {
      diverge("index/tick out of order");
      return result;
    }
    ledger.submit(rec.tx);
    const auto& replayed = ledger.log().records.back();
    if (replayed.rejection != rec.rejection) {
      std::ostringstream os;
      os << "outcome differs (logged "
         << (rec.rejection ? rec.rejection->code : std::string("Accepted")) << ", replayed "
         << (replayed.rejection ? replayed.rejection->code : std::string("Accepted")) << ")";
      diverge(os.str());
      return result;
    }
    if (replayed.events != rec.events) {
      diverge("emitted events differ");
      return result;
    }
  }
  return result;
}

}  // namespace vaccsc::ledger
