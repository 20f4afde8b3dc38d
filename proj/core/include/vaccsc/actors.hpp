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
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "vaccsc/commitment.hpp"
#include "vaccsc/ledger.hpp"
#include "vaccsc/rng.hpp"
#include "vaccsc/trial.hpp"

namespace vaccsc::actors {

using commitment::Commitment;
using commitment::Opening;
using commitment::ShotContent;

/// Per-epoch Bernoulli infection, independent across patients.
struct DiseaseModel {
  double p_control = 0.0;
  double p_vaccine = 0.0;
  std::uint64_t epochs = 1000;  // give up (IncompleteTrial) after this many
  /// Optional per-clinic multiplier on both probabilities (missing = 1).
  std::vector<double> clinic_risk;

  void validate() const;
  double risk_at(std::size_t clinic) const;
  /// 100 * (1 - p_vaccine / p_control); absent when p_control is 0.
  trial::Efficiency model_efficiency() const;
};

struct ScenarioParams {
  std::uint64_t num_participants = 0;
  std::uint64_t infected_threshold = 0;
  double target_efficiency = 50.0;
  std::uint64_t num_clinics = 2;
  double vaccine_fraction = 0.5;
  std::uint64_t binding_deadline_ticks = trial::kDefaultBindingDeadlineTicks;

  void validate() const;
};

enum class Role { Developer, Clinic, Patient };

std::string_view to_string(Role r);

struct Honest {};
struct DeveloperOmitControls {
  double fraction = 0.0;
};
struct DeveloperForgeControls {
  std::uint64_t count = 1;
};
/// Sends vaccine shots to the first clinics and placebo shots to the last.
struct DeveloperBiasedDistribution {};
struct ClinicColludeWithPatient {
  std::uint64_t target_index = 0;
};
/// Each epoch, every healthy unreported patient reports sick with this
/// probability.
struct PatientFalseSick {
  double probability = 0.0;
};
/// Each patient independently never reports a real infection with this
/// probability.
struct PatientNeverReport {
  double probability = 0.0;
};

using Behavior = std::variant<Honest, DeveloperOmitControls, DeveloperForgeControls,
                              DeveloperBiasedDistribution, ClinicColludeWithPatient,
                              PatientFalseSick, PatientNeverReport>;

struct Strategy {
  Role role = Role::Patient;
  Behavior behavior = Honest{};

  /// Throws std::invalid_argument if the behavior does not belong to the role
  /// or its parameter is out of range.
  void validate() const;
  std::string describe() const;
};

struct StrategySet {
  std::string name = "honest";
  Strategy developer{Role::Developer, Honest{}};
  Strategy clinic{Role::Clinic, Honest{}};
  Strategy patient{Role::Patient, Honest{}};

  void validate() const;
};

enum class TrialStatus { Finalized, IncompleteTrial };

std::string_view to_string(TrialStatus s);

/// Hidden assignment row. Lives only in the runner and the report file.
struct GroundTruthRow {
  Commitment commit;
  Opening opening;
  std::size_t clinic = 0;
  std::optional<std::size_t> patient;
  bool infected = false;
  std::optional<std::uint64_t> infected_epoch;
  bool reported_sick = false;  // accepted by the ledger
  bool false_report = false;
};

struct ForgeAttempt {
  std::string kind;  // "vaccine-as-control", "flipped-content", "random-opening", "not-sick"
  std::uint64_t tx_index = 0;
  std::optional<std::string> rejection_code;
  bool logged_as_rejection = false;
  bool state_unchanged = false;
};

struct ForgeEvidence {
  std::vector<ForgeAttempt> attempts;

  bool all_rejected() const;
  bool all_logged() const;
  bool state_unchanged() const;
};

struct CollusionOutcome {
  std::size_t clinic = 0;
  std::size_t patient = 0;
  std::uint64_t target_index = 0;
  std::uint64_t selected_index = 0;
  std::uint64_t available = 0;
  Commitment shot;
  ShotContent content = ShotContent::Placebo;  // ground truth, unknown to the pair
  bool content_visible_on_ledger = false;

  bool hit() const { return selected_index == target_index; }
};

struct CollusionSummary {
  std::uint64_t attempts = 0;
  std::uint64_t hits = 0;
  std::uint64_t vaccine = 0;
};

struct TrialReport {
  std::uint64_t seed = 0;
  std::string strategy_name;
  ScenarioParams params;
  DiseaseModel disease;
  trial::TrialConfig config;

  TrialStatus status = TrialStatus::IncompleteTrial;
  std::string diagnostics;
  std::uint64_t epochs_run = 0;

  std::vector<GroundTruthRow> ground_truth;
  std::optional<trial::TrialOutcome> ledger_outcome;
  std::map<std::string, std::uint64_t> rejection_summary;

  /// Efficiency the truthful reveal would give for the ledger's sick set,
  /// computed from the hidden assignment table.
  std::uint64_t truthful_ar0 = 0;
  std::uint64_t truthful_ar1 = 0;
  trial::Efficiency truthful_efficiency;
  trial::Efficiency model_efficiency;
  std::optional<double> divergence_vs_truthful;  // ledger - truthful, percentage points
  std::optional<double> divergence_vs_model;

  std::optional<ForgeEvidence> forge_evidence;
  std::optional<CollusionSummary> collusion;

  std::uint64_t transactions = 0;
  crypto::Digest final_state_digest{};
};

struct Actor {
  ledger::Account account;
  Rng rng;
  std::uint64_t next_sequence = 0;
};

/// One simulated trial: accounts, the developer's hidden manifest, the ledger
/// and the actors driving it. Steps can be run one at a time so tests can
/// interpose adversarial calls.
class TrialWorld {
 public:
  TrialWorld(ScenarioParams params, DiseaseModel disease, StrategySet strategies,
             std::uint64_t seed);

  void deploy();
  void distribute();
  void enrol_all();
  /// Returns true once the infected threshold is reached.
  bool run_epochs();
  void reveal();
  TrialReport report() const;

  /// Honest enrolment of one patient at its clinic; returns the bound shot.
  Commitment enrol(std::size_t patient);

  /// Tries `count` forged control reveals, each alongside the full set of
  /// true controls. Needs the reveal phase.
  ForgeEvidence developer_forge_attempt(std::uint64_t count);

  /// Clinic and patient pick R1, R2 = R1 xor target so the XOR lands on
  /// target_index (reduced mod the clinic's free-shot count).
  CollusionOutcome collusion_attempt(std::size_t clinic, std::size_t patient,
                                     std::uint64_t target_index);

  /// Signs with the actor's key and next sequence number, then submits.
  template <class Call>
  ledger::SubmitResult submit(Actor& actor, const Call& call) {
    return ledger_->submit(trial::calls::make_transaction(actor.account.keys, actor.next_sequence++, call));
  }

  const ledger::Ledger& ledger() const { return *ledger_; }
  const trial::VaccineTrial& contract() const;
  const trial::TrialConfig& config() const { return config_; }
  const std::vector<GroundTruthRow>& ground_truth() const { return truth_; }
  const std::map<Commitment, std::size_t>& manifest_index() const { return by_commit_; }

  Actor& developer() { return developer_; }
  Actor& clinic(std::size_t k) { return clinics_.at(k); }
  Actor& patient(std::size_t i) { return patients_.at(i); }
  std::size_t clinic_of_patient(std::size_t i) const { return patient_clinic_.at(i); }
  std::size_t num_patients() const { return patients_.size(); }

 private:
  Commitment bind(std::size_t patient, std::optional<std::uint64_t> collude_target,
                  CollusionOutcome* outcome);
  std::vector<std::size_t> true_controls() const;
  void submit_reveal(const std::vector<std::size_t>& rows);

  ScenarioParams params_;
  DiseaseModel disease_;
  StrategySet strategies_;
  std::uint64_t seed_;

  Rng disease_rng_;
  Rng behavior_rng_;
  Rng schedule_rng_;

  Actor developer_;
  std::vector<Actor> clinics_;
  std::vector<Actor> patients_;
  std::vector<std::size_t> patient_clinic_;
  std::vector<bool> never_reporter_;

  trial::TrialConfig config_;
  std::vector<GroundTruthRow> truth_;  // manifest order
  std::map<Commitment, std::size_t> by_commit_;
  std::vector<std::optional<std::size_t>> patient_row_;

  std::optional<ledger::Ledger> ledger_;
  std::uint64_t epochs_run_ = 0;
  bool threshold_reached_ = false;
  std::optional<ForgeEvidence> forge_evidence_;
  std::optional<CollusionSummary> collusion_;
};

struct ScenarioRun {
  TrialReport report;
  ledger::Ledger ledger;
};

/// deploy -> distribute -> enrol -> epochs -> reveal, deterministic in seed.
/// Never throws for an unreachable threshold: the report says
/// IncompleteTrial and the ledger holds the partial history.
ScenarioRun simulate(const ScenarioParams& params, const DiseaseModel& disease,
                     const StrategySet& strategies, std::uint64_t seed);

TrialReport run_scenario(const ScenarioParams& params, const DiseaseModel& disease,
                         const StrategySet& strategies, std::uint64_t seed);

/// Runs every seed, optionally on worker threads; results are in seed order.
std::vector<TrialReport> run_seeds(const ScenarioParams& params, const DiseaseModel& disease,
                                   const StrategySet& strategies,
                                   const std::vector<std::uint64_t>& seeds, unsigned threads = 1);

enum class SelectionAdversary {
  Constant,        // fixed R regardless of anything seen
  AdaptiveCommit,  // R derived from the honest party's commitment digest
};

/// Session-level experiment: an honest party commits a uniform contribution
/// first, the adversary then commits (constant or adapted to the honest
/// commitment), both reveal, and the XOR picks an index in [0, available).
/// Returns the histogram of selected indices.
std::vector<std::uint64_t> adversarial_selection_histogram(SelectionAdversary adversary,
                                                           std::uint64_t available,
                                                           std::uint64_t draws,
                                                           std::uint64_t seed);

}  // namespace vaccsc::actors
