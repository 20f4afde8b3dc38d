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

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "vaccsc/bytes.hpp"
#include "vaccsc/coinflip.hpp"
#include "vaccsc/commitment.hpp"
#include "vaccsc/efficiency.hpp"
#include "vaccsc/ledger.hpp"

// Canonical payloads for the trial contract's methods and events. Each call
// type carries its method name; encode()/decode() use the ByteWriter format.
namespace vaccsc::trial::calls {

using commitment::Commitment;
using ledger::Address;

struct AssignShotToClinic {
  static constexpr std::string_view kMethod = "assign_shot_to_clinic";
  Commitment shot;
  Address clinic;

  Bytes encode() const;
  static AssignShotToClinic decode(ByteView payload);
};

struct BeginBinding {
  static constexpr std::string_view kMethod = "begin_binding";
  Address patient;
  Commitment clinic_commit;

  Bytes encode() const;
  static BeginBinding decode(ByteView payload);
};

struct PatientCommit {
  static constexpr std::string_view kMethod = "patient_commit";
  std::uint64_t session = 0;
  Commitment commit;

  Bytes encode() const;
  static PatientCommit decode(ByteView payload);
};

struct ClinicReveal {
  static constexpr std::string_view kMethod = "clinic_reveal";
  std::uint64_t session = 0;
  coinflip::RandomContribution contribution;

  Bytes encode() const;
  static ClinicReveal decode(ByteView payload);
};

struct PatientReveal {
  static constexpr std::string_view kMethod = "patient_reveal";
  std::uint64_t session = 0;
  coinflip::RandomContribution contribution;

  Bytes encode() const;
  static PatientReveal decode(ByteView payload);
};

struct AbortBinding {
  static constexpr std::string_view kMethod = "abort_binding";
  std::uint64_t session = 0;

  Bytes encode() const;
  static AbortBinding decode(ByteView payload);
};

struct ConfirmBinding {
  static constexpr std::string_view kMethod = "confirm_binding";
  Commitment shot;

  Bytes encode() const;
  static ConfirmBinding decode(ByteView payload);
};

struct ReportSick {
  static constexpr std::string_view kMethod = "report_sick";

  Bytes encode() const { return {}; }
  static ReportSick decode(ByteView payload);
};

/// The opening is carried as raw bytes so that malformed openings reach the
/// contract and are rejected there (and logged) rather than at encoding.
struct RevealEntry {
  Commitment commitment;
  Bytes opening;

  static RevealEntry from_opening(const Commitment& c, const commitment::Opening& o);
};

struct RevealControls {
  static constexpr std::string_view kMethod = "reveal_controls";
  std::vector<RevealEntry> entries;

  Bytes encode() const;
  static RevealControls decode(ByteView payload);
};

/// Reveal payload file: [{commitment_hex, nonce_hex, content}, ...].
/// Throws std::invalid_argument on malformed entries.
RevealControls reveal_from_json(const nlohmann::json& j);
nlohmann::json reveal_to_json(const RevealControls& reveal);

template <class Call>
ledger::SignedTransaction make_transaction(const ledger::KeyPair& keys, std::uint64_t sequence,
                                           const Call& call) {
  return ledger::sign_transaction(keys, std::string(Call::kMethod), call.encode(), sequence);
}

}  // namespace vaccsc::trial::calls

namespace vaccsc::trial::events {

using commitment::Commitment;
using ledger::Address;

struct ShotAssigned {
  static constexpr std::string_view kName = "ShotAssigned";
  Commitment shot;
  Address clinic;

  Bytes encode() const;
  static ShotAssigned decode(ByteView payload);
};

struct BindingStarted {
  static constexpr std::string_view kName = "BindingStarted";
  std::uint64_t session = 0;
  Address clinic;
  Address patient;
  std::uint64_t deadline = 0;

  Bytes encode() const;
  static BindingStarted decode(ByteView payload);
};

struct BindingSelected {
  static constexpr std::string_view kName = "BindingSelected";
  std::uint64_t session = 0;
  Commitment shot;
  Address patient;
  std::uint64_t selected_index = 0;
  std::uint64_t available = 0;

  Bytes encode() const;
  static BindingSelected decode(ByteView payload);
};

struct BindingAborted {
  static constexpr std::string_view kName = "BindingAborted";
  std::uint64_t session = 0;

  Bytes encode() const;
  static BindingAborted decode(ByteView payload);
};

struct BindingConfirmed {
  static constexpr std::string_view kName = "BindingConfirmed";
  Commitment shot;
  Address patient;

  Bytes encode() const;
  static BindingConfirmed decode(ByteView payload);
};

struct PatientSick {
  static constexpr std::string_view kName = "PatientSick";
  Commitment shot;
  Address patient;
  std::uint64_t infected_count = 0;

  Bytes encode() const;
  static PatientSick decode(ByteView payload);
};

struct TrialFinished {
  static constexpr std::string_view kName = "TrialFinished";
  std::uint64_t infected_count = 0;

  Bytes encode() const;
  static TrialFinished decode(ByteView payload);
};

struct TrialFinalized {
  static constexpr std::string_view kName = "TrialFinalized";
  std::uint64_t ar0 = 0;
  std::uint64_t ar1 = 0;
  Efficiency efficiency;
  bool approved = false;

  Bytes encode() const;
  static TrialFinalized decode(ByteView payload);
};

template <class E>
ledger::EmittedEvent emit(const E& e) {
  return {std::string(E::kName), e.encode()};
}

/// First event of type E in the list, decoded.
template <class E>
std::optional<E> find(const std::vector<ledger::Event>& events) {
  for (const auto& e : events) {
    if (e.name == E::kName) return E::decode(e.payload);
  }
  return std::nullopt;
}

nlohmann::json describe(const ledger::Event& e);

}  // namespace vaccsc::trial::events
