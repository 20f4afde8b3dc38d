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

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "vaccsc/coinflip.hpp"
#include "vaccsc/commitment.hpp"
#include "vaccsc/efficiency.hpp"
#include "vaccsc/ledger.hpp"
#include "vaccsc/trial_calls.hpp"

namespace vaccsc::trial {

using commitment::Commitment;
using ledger::Address;
using ledger::CallContext;
using ledger::EmittedEvent;

inline constexpr std::uint64_t kDefaultBindingDeadlineTicks = 100;

struct TrialConfig {
  std::uint64_t num_participants = 0;
  std::uint64_t infected_threshold = 0;
  double target_efficiency = 0.0;  // percent
  std::vector<Address> clinics;
  Address developer;
  std::uint64_t binding_deadline_ticks = kDefaultBindingDeadlineTicks;

  /// Throws std::invalid_argument naming the violated constraint.
  void validate() const;
  bool is_clinic(const Address& a) const;

  void encode(ByteWriter& w) const;

  bool operator==(const TrialConfig&) const = default;
};

enum class TrialPhase : std::uint8_t {
  Deployed = 0,
  Distributing = 1,
  Active = 2,
  RevealPending = 3,
  Finalized = 4,
};

enum class VaccineType : std::uint8_t {
  Unknown = 0,
  Placebo = 1,
  VaccineByElimination = 2,
};

enum class VaccineStatus { Pending, Approved, Rejected };

std::string_view to_string(TrialPhase p);
std::string_view to_string(VaccineType t);
std::string_view to_string(VaccineStatus s);

/// One row per shot. Fields are written once, in declaration order over the
/// life of the trial.
struct ShotRecord {
  Commitment commit;
  std::optional<Address> clinic;
  std::optional<Address> patient;
  bool got_sick = false;
  VaccineType vaccine_type = VaccineType::Unknown;
  bool patient_confirmed = false;
  std::optional<std::uint64_t> session_id;
  std::optional<coinflip::Session> session;

  bool operator==(const ShotRecord&) const = default;
};

struct TrialOutcome {
  std::uint64_t ar0 = 0;
  std::uint64_t ar1 = 0;
  Efficiency efficiency;
  bool approved = false;

  bool operator==(const TrialOutcome&) const = default;
};

/// Coin-flip binding of one patient to one of a clinic's free shots.
struct Binding {
  std::uint64_t id = 0;
  Address clinic;
  Address patient;
  coinflip::Session session;
  std::optional<std::size_t> shot;

  bool open() const {
    return session.phase() == coinflip::Phase::AwaitingCommits ||
           session.phase() == coinflip::Phase::AwaitingReveals;
  }
  bool operator==(const Binding&) const = default;
};

enum class TrialError {
  InvalidDeployment,
  DuplicateCommitment,
  ParticipantCountMismatch,
  NotDeveloper,
  WrongPhase,
  UnknownShot,
  AlreadyAssigned,
  UnknownClinic,
  NotClinic,
  InvalidPatient,
  NoShotsAvailable,
  PatientAlreadyBound,
  BindingInProgress,
  UnknownSession,
  NotSessionParty,
  NotProvisionalPatient,
  AlreadyConfirmed,
  NotBoundPatient,
  AlreadySick,
  TrialNotActive,
  NotRevealPhase,
  NotSickShot,
  DuplicateReveal,
  BadOpening,
  NotPlacebo,
  MalformedPayload,
};

std::string_view to_string(TrialError e);

/// ContractRejection whose code is to_string(error).
[[noreturn]] void reject(TrialError error, std::string detail = {});

/// Deployment descriptor: config fields plus the hex commitment list.
nlohmann::json deployment_descriptor(const TrialConfig& config,
                                     const std::vector<Commitment>& commits);
/// Throws std::invalid_argument on malformed descriptors.
std::pair<TrialConfig, std::vector<Commitment>> parse_deployment_descriptor(const nlohmann::json& j);

class VaccineTrial final : public ledger::Contract {
 public:
  static constexpr std::string_view kContractId = "vaccsc.phase3/1";

  /// Throws ledger::ContractRejection (InvalidDeployment,
  /// DuplicateCommitment, ParticipantCountMismatch, NotDeveloper).
  static VaccineTrial deploy(TrialConfig config, std::vector<Commitment> commits,
                             const Address& deployer);

  /// Builds the contract from a genesis whose params are a deployment
  /// descriptor.
  static ledger::ContractFactory factory();

  // Contract methods. Each validates completely before mutating and throws
  // ledger::ContractRejection on failure.
  std::vector<EmittedEvent> assign_shot_to_clinic(const CallContext& ctx,
                                                  const calls::AssignShotToClinic& call);
  std::vector<EmittedEvent> begin_binding(const CallContext& ctx, const calls::BeginBinding& call);
  std::vector<EmittedEvent> patient_commit(const CallContext& ctx, const calls::PatientCommit& call);
  std::vector<EmittedEvent> clinic_reveal(const CallContext& ctx, const calls::ClinicReveal& call);
  std::vector<EmittedEvent> patient_reveal(const CallContext& ctx, const calls::PatientReveal& call);
  std::vector<EmittedEvent> abort_binding(const CallContext& ctx, const calls::AbortBinding& call);
  std::vector<EmittedEvent> confirm_binding(const CallContext& ctx, const calls::ConfirmBinding& call);
  std::vector<EmittedEvent> report_sick(const CallContext& ctx, const calls::ReportSick& call);
  std::vector<EmittedEvent> reveal_controls(const CallContext& ctx, const calls::RevealControls& call);

  // Read-only views.
  const TrialConfig& config() const { return config_; }
  TrialPhase phase() const { return phase_; }
  std::uint64_t infected_count() const { return infected_; }
  VaccineStatus vaccine_status() const;
  const std::optional<TrialOutcome>& outcome() const { return outcome_; }
  const std::vector<ShotRecord>& shots() const { return shots_; }
  const ShotRecord* find_shot(const Commitment& c) const;
  /// The clinic's shots with no patient yet, ascending by digest.
  std::vector<Commitment> free_shots(const Address& clinic) const;
  std::vector<Commitment> sick_shots() const;
  const Binding* find_binding(std::uint64_t id) const;
  std::optional<Commitment> shot_of_patient(const Address& patient) const;

  // ledger::Contract
  std::unique_ptr<ledger::Contract> clone() const override;
  bool has_method(std::string_view method) const override;
  std::vector<EmittedEvent> apply(const CallContext& ctx, std::string_view method,
                                  ByteView payload) override;
  Bytes serialize_state() const override;
  nlohmann::json query(std::string_view view, const nlohmann::json& params) const override;
  nlohmann::json describe_event(const ledger::Event& e) const override;

 private:
  VaccineTrial() = default;

  std::optional<std::size_t> index_of(const Commitment& c) const;
  std::size_t require_shot(const Commitment& c) const;
  Binding& require_binding(std::uint64_t id);
  std::vector<EmittedEvent> reveal(const CallContext& ctx, std::uint64_t session_id,
                                   coinflip::Party party,
                                   const coinflip::RandomContribution& contribution);
  void close_pending(const Binding& b);

  TrialConfig config_;
  TrialPhase phase_ = TrialPhase::Deployed;
  std::vector<ShotRecord> shots_;  // ascending by commitment digest
  std::uint64_t assigned_ = 0;
  std::uint64_t infected_ = 0;
  std::uint64_t next_session_id_ = 0;
  std::map<std::uint64_t, Binding> bindings_;
  std::optional<TrialOutcome> outcome_;

  // Derived indexes (not serialized; rebuilt identically on replay).
  std::map<Address, std::size_t> patient_shot_;
  std::map<Address, std::uint64_t> pending_patient_;
  std::map<Address, std::uint64_t> pending_by_clinic_;
  std::map<Address, std::uint64_t> free_by_clinic_;
};

}  // namespace vaccsc::trial
