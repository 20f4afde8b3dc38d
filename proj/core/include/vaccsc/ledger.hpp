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
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "vaccsc/bytes.hpp"
#include "vaccsc/crypto.hpp"
#include "vaccsc/rng.hpp"

namespace vaccsc::ledger {

inline constexpr std::size_t kAddressSize = 20;

/// First 20 bytes of SHA-256(public key).
struct Address {
  ByteArray<kAddressSize> bytes{};

  std::string hex() const { return to_hex(bytes); }
  static std::optional<Address> from_hex(std::string_view hex);

  auto operator<=>(const Address&) const = default;
};

Address address_of(const crypto::PublicKey& pk);

class KeyPair {
 public:
  static KeyPair from_seed(const crypto::SigningSeed& seed);

  const crypto::PublicKey& public_key() const { return pk_; }
  Address address() const { return address_of(pk_); }
  crypto::Signature sign(ByteView message) const { return crypto::ed25519_sign(sk_, message); }

 private:
  crypto::PublicKey pk_{};
  crypto::SecretKey sk_{};
};

struct Account {
  KeyPair keys;
  Address address;
};

/// Fresh Ed25519 keypair whose seed is drawn from rng.
Account create_account(Rng& rng);

struct SignedTransaction {
  Address sender;
  crypto::PublicKey sender_key{};
  std::string method;
  Bytes payload;
  std::uint64_t sequence = 0;
  crypto::Signature signature{};

  /// The signed message covers (method, payload, sequence).
  static Bytes signing_bytes(std::string_view method, ByteView payload, std::uint64_t sequence);

  void encode(ByteWriter& w) const;
  static SignedTransaction decode(ByteReader& r);

  bool operator==(const SignedTransaction&) const = default;
};

SignedTransaction sign_transaction(const KeyPair& keys, std::string method, Bytes payload,
                                   std::uint64_t sequence);

struct Event {
  std::uint64_t index = 0;
  std::string name;
  Bytes payload;
  std::uint64_t cause = 0;  // index of the emitting transaction

  void encode(ByteWriter& w) const;
  static Event decode(ByteReader& r);

  bool operator==(const Event&) const = default;
};

struct EmittedEvent {
  std::string name;
  Bytes payload;
};

enum class RejectKind : std::uint8_t {
  BadSignature = 0,
  StaleSequence = 1,
  UnknownMethod = 2,
  ContractRejection = 3,
};

std::string_view to_string(RejectKind k);

struct Rejection {
  RejectKind kind = RejectKind::ContractRejection;
  std::string code;  // RejectKind name, or the contract's error code
  std::string detail;

  bool operator==(const Rejection&) const = default;
};

/// Thrown by contract methods; the ledger turns it into a logged rejection.
/// Contract methods must validate before mutating so a throw leaves state
/// untouched.
class ContractRejection : public std::runtime_error {
 public:
  explicit ContractRejection(std::string code, std::string detail = {});
  const std::string& code() const { return code_; }
  const std::string& detail() const { return detail_; }

 private:
  std::string code_;
  std::string detail_;
};

class UnknownView : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct CallContext {
  Address sender;
  std::uint64_t tick = 0;
  std::uint64_t tx_index = 0;
};

class Contract {
 public:
  virtual ~Contract() = default;

  virtual std::unique_ptr<Contract> clone() const = 0;
  virtual bool has_method(std::string_view method) const = 0;
  virtual std::vector<EmittedEvent> apply(const CallContext& ctx, std::string_view method,
                                          ByteView payload) = 0;
  /// Deterministic, field-ordered binary encoding of the full state.
  virtual Bytes serialize_state() const = 0;
  /// Read-only. Throws UnknownView.
  virtual nlohmann::json query(std::string_view view, const nlohmann::json& params) const = 0;
  virtual nlohmann::json describe_event(const Event& e) const;
};

class GenesisError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Deployment record: contract identifier, deployer, initial parameters,
/// signed by the deployer over (contract_id, canonical params JSON).
struct Genesis {
  std::string contract_id;
  crypto::PublicKey deployer_key{};
  Address deployer;
  nlohmann::json params;
  crypto::Signature signature{};

  static Genesis create(const KeyPair& deployer, std::string contract_id, nlohmann::json params);

  Bytes signing_bytes() const;
  bool verify() const;

  nlohmann::json to_json() const;
  static Genesis from_json(const nlohmann::json& j);

  void encode(ByteWriter& w) const;
  static Genesis decode(ByteReader& r);

  bool operator==(const Genesis&) const = default;
};

/// Builds the genesis contract state; throws GenesisError (or a
/// ContractRejection) when the deployment is invalid.
using ContractFactory = std::function<std::unique_ptr<Contract>(const Genesis&)>;

struct TransactionRecord {
  std::uint64_t index = 0;
  std::uint64_t tick = 0;
  SignedTransaction tx;
  std::optional<Rejection> rejection;
  std::vector<Event> events;

  bool accepted() const { return !rejection.has_value(); }

  void encode(ByteWriter& w) const;
  static TransactionRecord decode(ByteReader& r);

  bool operator==(const TransactionRecord&) const = default;
};

struct TransactionLog {
  Genesis genesis;
  std::vector<TransactionRecord> records;
};

struct Accepted {
  std::vector<Event> events;
};

struct Rejected {
  Rejection reason;
};

using SubmitResult = std::variant<Accepted, Rejected>;

inline bool is_accepted(const SubmitResult& r) { return std::holds_alternative<Accepted>(r); }

/// Single-writer contract host. Transactions are applied strictly in
/// submission order; the logical tick is the submission ordinal.
class Ledger {
 public:
  Ledger(Genesis genesis, const ContractFactory& factory);

  Ledger(const Ledger& other);
  Ledger& operator=(const Ledger& other);
  Ledger(Ledger&&) noexcept = default;
  Ledger& operator=(Ledger&&) noexcept = default;

  SubmitResult submit(const SignedTransaction& tx);

  nlohmann::json query(std::string_view view,
                       const nlohmann::json& params = nlohmann::json::object()) const;

  const Contract& contract() const { return *contract_; }

  template <class T>
  const T& contract_as() const {
    return dynamic_cast<const T&>(*contract_);
  }

  /// Ledger bookkeeping (tick, sequences, event count) plus contract state.
  Bytes state_bytes() const;
  crypto::Digest state_digest() const;

  const TransactionLog& log() const { return log_; }
  const std::vector<Event>& events() const { return events_; }
  std::vector<const TransactionRecord*> rejections() const;

  std::uint64_t tick() const { return log_.records.size(); }
  std::uint64_t next_sequence(const Address& sender) const;

 private:
  TransactionLog log_;
  std::unique_ptr<Contract> contract_;
  std::map<Address, std::uint64_t> next_sequence_;
  std::vector<Event> events_;
};

/// Re-executes every logged transaction from genesis.
Ledger replay(const TransactionLog& log, const ContractFactory& factory);

struct ReplayDivergence {
  std::size_t record_index = 0;  // 0 = genesis, i + 1 = transaction i
  std::string reason;
};

struct ReplayResult {
  std::optional<Ledger> ledger;
  std::optional<ReplayDivergence> divergence;
};

/// Replays and checks each record's outcome and events against what the log
/// claims; stops at the first divergence.
ReplayResult replay_and_verify(const TransactionLog& log, const ContractFactory& factory);

}  // namespace vaccsc::ledger
