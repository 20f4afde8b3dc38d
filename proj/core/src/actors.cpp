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

#include "vaccsc/actors.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace vaccsc::actors {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

Actor make_actor(Rng rng) {
  auto account = ledger::create_account(rng);
  return Actor{std::move(account), std::move(rng), 0};
}

void check_probability(double p, const char* what) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::invalid_argument(std::string(what) + " must lie in [0, 1]");
  }
}

std::vector<ledger::Event> expect_accepted(ledger::SubmitResult r, std::string_view what) {
  if (const auto* rej = std::get_if<ledger::Rejected>(&r)) {
    throw std::logic_error(std::string(what) + " unexpectedly rejected: " + rej->reason.code + " " +
                           rej->reason.detail);
  }
  return std::move(std::get<ledger::Accepted>(r).events);
}

bool contains(ByteView haystack, ByteView needle) {
  return std::search(haystack.begin(), haystack.end(), needle.begin(), needle.end()) != haystack.end();
}

}  // namespace

// ---------------------------------------------------------------------------
// Parameters and strategies

void DiseaseModel::validate() const {
  check_probability(p_control, "p_control");
  check_probability(p_vaccine, "p_vaccine");
  if (epochs == 0) {
    throw std::invalid_argument("epochs must be positive");
  }
  for (double r : clinic_risk) {
    if (!(r >= 0.0)) throw std::invalid_argument("clinic_risk multipliers must be non-negative");
  }
}

double DiseaseModel::risk_at(std::size_t clinic) const {
  return clinic < clinic_risk.size() ? clinic_risk[clinic] : 1.0;
}

trial::Efficiency DiseaseModel::model_efficiency() const {
  if (p_control == 0.0) return {};
  return {100.0 * (1.0 - p_vaccine / p_control)};
}

void ScenarioParams::validate() const {
  if (num_clinics == 0) {
    throw std::invalid_argument("num_clinics must be positive");
  }
  if (num_clinics > num_participants) {
    throw std::invalid_argument("more clinics than participants");
  }
  check_probability(vaccine_fraction, "vaccine_fraction");
  // Remaining checks are the contract's own deployment rules.
  trial::TrialConfig probe;
  probe.num_participants = num_participants;
  probe.infected_threshold = infected_threshold;
  probe.target_efficiency = target_efficiency;
  probe.clinics.resize(1);
  probe.clinics[0].bytes[0] = 1;
  probe.binding_deadline_ticks = binding_deadline_ticks;
  probe.validate();
}

std::string_view to_string(Role r) {
  switch (r) {
    case Role::Developer:
      return "developer";
    case Role::Clinic:
      return "clinic";
    case Role::Patient:
      return "patient";
  }
  return "?";
}

std::string_view to_string(TrialStatus s) {
  return s == TrialStatus::Finalized ? "Finalized" : "IncompleteTrial";
}

void Strategy::validate() const {
  auto fail = [&](const std::string& why) {
    throw std::invalid_argument(std::string(to_string(role)) + " strategy: " + why);
  };
  std::visit(overloaded{
                 [](const Honest&) {},
                 [&](const DeveloperOmitControls& b) {
                   if (role != Role::Developer) fail("omit_controls is a developer behavior");
                   check_probability(b.fraction, "omit fraction");
                 },
                 [&](const DeveloperForgeControls& b) {
                   if (role != Role::Developer) fail("forge_controls is a developer behavior");
                   if (b.count == 0) fail("forge count must be positive");
                 },
                 [&](const DeveloperBiasedDistribution&) {
                   if (role != Role::Developer) fail("biased_distribution is a developer behavior");
                 },
                 [&](const ClinicColludeWithPatient&) {
                   if (role != Role::Clinic) fail("collude_with_patient is a clinic behavior");
                 },
                 [&](const PatientFalseSick& b) {
                   if (role != Role::Patient) fail("false_sick is a patient behavior");
                   check_probability(b.probability, "false_sick probability");
                 },
                 [&](const PatientNeverReport& b) {
                   if (role != Role::Patient) fail("never_report is a patient behavior");
                   check_probability(b.probability, "never_report probability");
                 },
             },
             behavior);
}

std::string Strategy::describe() const {
  std::ostringstream os;
  std::visit(overloaded{
                 [&](const Honest&) { os << "honest"; },
                 [&](const DeveloperOmitControls& b) { os << "omit_controls(" << b.fraction << ")"; },
                 [&](const DeveloperForgeControls& b) { os << "forge_controls(" << b.count << ")"; },
                 [&](const DeveloperBiasedDistribution&) { os << "biased_distribution"; },
                 [&](const ClinicColludeWithPatient& b) {
                   os << "collude_with_patient(" << b.target_index << ")";
                 },
                 [&](const PatientFalseSick& b) { os << "false_sick(" << b.probability << ")"; },
                 [&](const PatientNeverReport& b) { os << "never_report(" << b.probability << ")"; },
             },
             behavior);
  return os.str();
}

void StrategySet::validate() const {
  if (developer.role != Role::Developer || clinic.role != Role::Clinic || patient.role != Role::Patient) {
    throw std::invalid_argument("strategy set must cover developer, clinic and patient roles");
  }
  developer.validate();
  clinic.validate();
  patient.validate();
}

bool ForgeEvidence::all_rejected() const {
  return std::all_of(attempts.begin(), attempts.end(),
                     [](const ForgeAttempt& a) { return a.rejection_code.has_value(); });
}

bool ForgeEvidence::all_logged() const {
  return std::all_of(attempts.begin(), attempts.end(),
                     [](const ForgeAttempt& a) { return a.logged_as_rejection; });
}

bool ForgeEvidence::state_unchanged() const {
  return std::all_of(attempts.begin(), attempts.end(),
                     [](const ForgeAttempt& a) { return a.state_unchanged; });
}

// ---------------------------------------------------------------------------
// TrialWorld

TrialWorld::TrialWorld(ScenarioParams params, DiseaseModel disease, StrategySet strategies,
                       std::uint64_t seed)
    : params_(std::move(params)),
      disease_(std::move(disease)),
      strategies_(std::move(strategies)),
      seed_(seed),
      disease_rng_(Rng(seed).fork("disease")),
      behavior_rng_(Rng(seed).fork("behavior")),
      schedule_rng_(Rng(seed).fork("schedule")),
      developer_(make_actor(Rng(seed).fork("developer"))) {
  params_.validate();
  disease_.validate();
  strategies_.validate();

  Rng root(seed);
  for (std::uint64_t k = 0; k < params_.num_clinics; ++k) {
    clinics_.push_back(make_actor(root.fork("clinic/" + std::to_string(k))));
  }
  const double never = std::holds_alternative<PatientNeverReport>(strategies_.patient.behavior)
                           ? std::get<PatientNeverReport>(strategies_.patient.behavior).probability
                           : 0.0;
  for (std::uint64_t i = 0; i < params_.num_participants; ++i) {
    patients_.push_back(make_actor(root.fork("patient/" + std::to_string(i))));
    never_reporter_.push_back(never > 0.0 && behavior_rng_.bernoulli(never));
  }
  patient_row_.assign(patients_.size(), std::nullopt);

  config_.num_participants = params_.num_participants;
  config_.infected_threshold = params_.infected_threshold;
  config_.target_efficiency = params_.target_efficiency;
  config_.developer = developer_.account.address;
  config_.binding_deadline_ticks = params_.binding_deadline_ticks;
  for (const auto& c : clinics_) config_.clinics.push_back(c.account.address);
}

const trial::VaccineTrial& TrialWorld::contract() const {
  return ledger_->contract_as<trial::VaccineTrial>();
}

void TrialWorld::deploy() {
  const auto n = params_.num_participants;
  const auto n_vaccine =
      static_cast<std::uint64_t>(std::llround(params_.vaccine_fraction * static_cast<double>(n)));
  std::vector<ShotContent> contents(n, ShotContent::Placebo);
  std::fill_n(contents.begin(), n_vaccine, ShotContent::Vaccine);
  developer_.rng.shuffle(contents);

  std::vector<Commitment> commits;
  for (auto content : contents) {
    GroundTruthRow row;
    row.opening = Opening{content, commitment::generate_nonce(developer_.rng)};
    row.commit = commitment::commit(row.opening);
    by_commit_.emplace(row.commit, truth_.size());
    commits.push_back(row.commit);
    truth_.push_back(std::move(row));
  }

  auto genesis = ledger::Genesis::create(developer_.account.keys,
                                         std::string(trial::VaccineTrial::kContractId),
                                         trial::deployment_descriptor(config_, commits));
  ledger_.emplace(std::move(genesis), trial::VaccineTrial::factory());
}

void TrialWorld::distribute() {
  const auto n = truth_.size();
  const auto k = clinics_.size();
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;

  const bool biased = std::holds_alternative<DeveloperBiasedDistribution>(strategies_.developer.behavior);
  if (biased) {
    std::stable_partition(order.begin(), order.end(), [&](std::size_t row) {
      return truth_[row].opening.content == ShotContent::Vaccine;
    });
  }

  std::vector<std::size_t> per_clinic(k, 0);
  for (std::size_t j = 0; j < n; ++j) {
    // Honest: round-robin over a shuffled manifest. Biased: contiguous blocks
    // of a vaccine-first ordering.
    auto clinic = biased ? j * k / n : j % k;
    auto row = order[j];
    truth_[row].clinic = clinic;
    ++per_clinic[clinic];
    expect_accepted(submit(developer_, trial::calls::AssignShotToClinic{
                                           truth_[row].commit, clinics_[clinic].account.address}),
                    "assign_shot_to_clinic");
  }

  patient_clinic_.clear();
  for (std::size_t c = 0; c < k; ++c) {
    patient_clinic_.insert(patient_clinic_.end(), per_clinic[c], c);
  }
}

Commitment TrialWorld::enrol(std::size_t patient) {
  return bind(patient, std::nullopt, nullptr);
}

Commitment TrialWorld::bind(std::size_t patient, std::optional<std::uint64_t> collude_target,
                            CollusionOutcome* outcome) {
  const auto k = outcome ? outcome->clinic : patient_clinic_.at(patient);
  auto& clinic = clinics_.at(k);
  auto& pat = patients_.at(patient);

  coinflip::RandomContribution r1{clinic.rng.next_u64(), commitment::generate_nonce(clinic.rng)};
  coinflip::RandomContribution r2;
  std::uint64_t target = 0;
  std::uint64_t available = 0;
  if (collude_target) {
    available = contract().free_shots(clinic.account.address).size();
    if (available == 0) throw std::logic_error("collusion: clinic has no free shots");
    target = *collude_target % available;
    r2.value = r1.value ^ target;
  } else {
    r2.value = pat.rng.next_u64();
  }
  r2.nonce = commitment::generate_nonce(pat.rng);

  auto started = expect_accepted(
      submit(clinic, trial::calls::BeginBinding{pat.account.address, r1.commit()}), "begin_binding");
  auto session = trial::events::find<trial::events::BindingStarted>(started)->session;
  expect_accepted(submit(pat, trial::calls::PatientCommit{session, r2.commit()}), "patient_commit");
  expect_accepted(submit(clinic, trial::calls::ClinicReveal{session, r1}), "clinic_reveal");
  auto completed =
      expect_accepted(submit(pat, trial::calls::PatientReveal{session, r2}), "patient_reveal");
  auto selected = *trial::events::find<trial::events::BindingSelected>(completed);
  expect_accepted(submit(pat, trial::calls::ConfirmBinding{selected.shot}), "confirm_binding");

  auto row = by_commit_.at(selected.shot);
  truth_[row].patient = patient;
  patient_row_[patient] = row;

  if (outcome) {
    outcome->patient = patient;
    outcome->target_index = target;
    outcome->selected_index = selected.selected_index;
    outcome->available = selected.available;
    outcome->shot = selected.shot;
    outcome->content = truth_[row].opening.content;
    auto state = ledger_->state_bytes();
    auto opening = truth_[row].opening.serialize();
    outcome->content_visible_on_ledger =
        contains(state, truth_[row].opening.nonce.bytes) || contains(state, opening);
  }
  return selected.shot;
}

void TrialWorld::enrol_all() {
  const auto* collude = std::get_if<ClinicColludeWithPatient>(&strategies_.clinic.behavior);
  if (collude) collusion_ = CollusionSummary{};
  for (std::size_t i = 0; i < patients_.size(); ++i) {
    if (!collude) {
      bind(i, std::nullopt, nullptr);
      continue;
    }
    CollusionOutcome out;
    out.clinic = patient_clinic_[i];
    bind(i, collude->target_index, &out);
    ++collusion_->attempts;
    if (out.hit()) ++collusion_->hits;
    if (out.content == ShotContent::Vaccine) ++collusion_->vaccine;
  }
}

CollusionOutcome TrialWorld::collusion_attempt(std::size_t clinic, std::size_t patient,
                                               std::uint64_t target_index) {
  CollusionOutcome out;
  out.clinic = clinic;
  bind(patient, target_index, &out);
  return out;
}

bool TrialWorld::run_epochs() {
  const auto* false_sick = std::get_if<PatientFalseSick>(&strategies_.patient.behavior);
  std::vector<bool> infected(patients_.size(), false);
  std::vector<bool> reported(patients_.size(), false);

  for (std::uint64_t epoch = 1; epoch <= disease_.epochs; ++epoch) {
    epochs_run_ = epoch;
    std::vector<std::size_t> reports;
    bool anyone_left = false;
    for (std::size_t i = 0; i < patients_.size(); ++i) {
      if (!patient_row_[i]) continue;
      auto& row = truth_[*patient_row_[i]];
      if (!infected[i]) {
        const double base = row.opening.content == ShotContent::Vaccine ? disease_.p_vaccine
                                                                          : disease_.p_control;
        const double p = std::min(1.0, base * disease_.risk_at(row.clinic));
        if (disease_rng_.bernoulli(p)) {
          infected[i] = true;
          row.infected = true;
          row.infected_epoch = epoch;
          if (!never_reporter_[i] && !reported[i]) {
            reports.push_back(i);
            reported[i] = true;
          }
        }
      }
      if (false_sick && !infected[i] && !reported[i] && behavior_rng_.bernoulli(false_sick->probability)) {
        row.false_report = true;
        reports.push_back(i);
        reported[i] = true;
      }
      if (!reported[i] && (!infected[i] || false_sick)) anyone_left = true;
    }

    // Reports within an epoch reach the ledger in random order; whatever
    // arrives after the threshold transaction is rejected by the contract.
    schedule_rng_.shuffle(reports);
    for (auto i : reports) {
      submit(patients_[i], trial::calls::ReportSick{});
    }
    if (contract().phase() == trial::TrialPhase::RevealPending) {
      threshold_reached_ = true;
      return true;
    }
    if (!anyone_left) break;
  }
  return false;
}

std::vector<std::size_t> TrialWorld::true_controls() const {
  // The developer learns the sick set from the public view and looks each
  // commitment up in its private manifest.
  std::vector<std::size_t> rows;
  for (const auto& hex : ledger_->query("sick_shots")) {
    auto row = by_commit_.at(*Commitment::from_hex(hex.get<std::string>()));
    if (truth_[row].opening.content == ShotContent::Placebo) rows.push_back(row);
  }
  return rows;
}

void TrialWorld::submit_reveal(const std::vector<std::size_t>& rows) {
  trial::calls::RevealControls call;
  for (auto row : rows) {
    call.entries.push_back(trial::calls::RevealEntry::from_opening(truth_[row].commit, truth_[row].opening));
  }
  expect_accepted(submit(developer_, call), "reveal_controls");
}

ForgeEvidence TrialWorld::developer_forge_attempt(std::uint64_t count) {
  if (!ledger_ || contract().phase() != trial::TrialPhase::RevealPending) {
    throw std::logic_error("forge attempt requires the reveal phase");
  }
  auto controls = true_controls();
  std::vector<std::size_t> sick_vaccine;
  std::vector<std::size_t> healthy;
  for (std::size_t row = 0; row < truth_.size(); ++row) {
    const auto* rec = contract().find_shot(truth_[row].commit);
    if (rec->got_sick && truth_[row].opening.content == ShotContent::Vaccine) {
      sick_vaccine.push_back(row);
    } else if (!rec->got_sick) {
      healthy.push_back(row);
    }
  }

  ForgeEvidence evidence;
  for (std::uint64_t a = 0; a < count; ++a) {
    trial::calls::RevealEntry forged;
    ForgeAttempt attempt;
    if (!sick_vaccine.empty()) {
      const auto& row = truth_[sick_vaccine[a % sick_vaccine.size()]];
      forged.commitment = row.commit;
      switch (a % 3) {
        case 0:
          attempt.kind = "vaccine-as-control";
          forged = trial::calls::RevealEntry::from_opening(row.commit, row.opening);
          break;
        case 1: {
          attempt.kind = "flipped-content";
          Opening flipped{ShotContent::Placebo, row.opening.nonce};
          forged = trial::calls::RevealEntry::from_opening(row.commit, flipped);
          break;
        }
        default: {
          attempt.kind = "random-opening";
          auto noise = developer_.rng.bytes<commitment::kOpeningSize>();
          forged.opening.assign(noise.begin(), noise.end());
          break;
        }
      }
    } else if (!healthy.empty()) {
      attempt.kind = "not-sick";
      const auto& row = truth_[healthy[a % healthy.size()]];
      Opening as_control{ShotContent::Placebo, row.opening.nonce};
      forged = trial::calls::RevealEntry::from_opening(row.commit, as_control);
    } else {
      break;
    }

    trial::calls::RevealControls call;
    for (auto row : controls) {
      call.entries.push_back(trial::calls::RevealEntry::from_opening(truth_[row].commit, truth_[row].opening));
    }
    auto at = static_cast<std::ptrdiff_t>(developer_.rng.uniform_below(call.entries.size() + 1));
    call.entries.insert(call.entries.begin() + at, forged);

    auto before = contract().serialize_state();
    auto result = submit(developer_, call);
    attempt.tx_index = ledger_->log().records.size() - 1;
    if (const auto* rej = std::get_if<ledger::Rejected>(&result)) {
      attempt.rejection_code = rej->reason.code;
    }
    attempt.logged_as_rejection = ledger_->log().records.at(attempt.tx_index).rejection.has_value();
    attempt.state_unchanged = contract().serialize_state() == before;
    evidence.attempts.push_back(std::move(attempt));
  }
  return evidence;
}

void TrialWorld::reveal() {
  if (!threshold_reached_) {
    throw std::logic_error("reveal before the infected threshold was reached");
  }
  auto controls = true_controls();
  std::visit(overloaded{
                 [&](const DeveloperOmitControls& b) {
                   auto omit = static_cast<std::size_t>(
                       std::ceil(b.fraction * static_cast<double>(controls.size())));
                   developer_.rng.shuffle(controls);
                   controls.resize(controls.size() - std::min(omit, controls.size()));
                   std::sort(controls.begin(), controls.end());
                 },
                 [&](const DeveloperForgeControls& b) { forge_evidence_ = developer_forge_attempt(b.count); },
                 [](const auto&) {},
             },
             strategies_.developer.behavior);
  submit_reveal(controls);
}

TrialReport TrialWorld::report() const {
  TrialReport r;
  r.seed = seed_;
  r.strategy_name = strategies_.name;
  r.params = params_;
  r.disease = disease_;
  r.config = config_;
  r.epochs_run = epochs_run_;
  r.ground_truth = truth_;
  r.forge_evidence = forge_evidence_;
  r.collusion = collusion_;
  r.model_efficiency = disease_.model_efficiency();
  if (!ledger_) {
    r.diagnostics = "trial was never deployed";
    return r;
  }

  const auto& c = contract();
  for (auto& row : r.ground_truth) {
    const auto* rec = c.find_shot(row.commit);
    row.reported_sick = rec && rec->got_sick;
    if (!row.reported_sick) continue;
    if (row.opening.content == ShotContent::Placebo) {
      ++r.truthful_ar0;
    } else {
      ++r.truthful_ar1;
    }
  }
  r.truthful_efficiency = trial::efficiency(r.truthful_ar0, r.truthful_ar1);

  for (const auto* rec : ledger_->rejections()) ++r.rejection_summary[rec->rejection->code];
  r.transactions = ledger_->log().records.size();
  r.final_state_digest = ledger_->state_digest();

  if (c.phase() == trial::TrialPhase::Finalized) {
    r.status = TrialStatus::Finalized;
    r.ledger_outcome = c.outcome();
    const auto& ve = r.ledger_outcome->efficiency;
    if (ve.defined() && r.truthful_efficiency.defined()) {
      r.divergence_vs_truthful = *ve.percent - *r.truthful_efficiency.percent;
    }
    if (ve.defined() && r.model_efficiency.defined()) {
      r.divergence_vs_model = *ve.percent - *r.model_efficiency.percent;
    }
  } else {
    r.status = TrialStatus::IncompleteTrial;
    std::ostringstream os;
    os << "infected threshold " << params_.infected_threshold << " not reached after "
       << epochs_run_ << " epoch(s): " << c.infected_count() << " accepted sick report(s), phase "
       << trial::to_string(c.phase());
    r.diagnostics = os.str();
  }
  return r;
}

// ---------------------------------------------------------------------------
// Runners

ScenarioRun simulate(const ScenarioParams& params, const DiseaseModel& disease,
                     const StrategySet& strategies, std::uint64_t seed) {
  TrialWorld world(params, disease, strategies, seed);
  world.deploy();
  world.distribute();
  world.enrol_all();
  if (world.run_epochs()) {
    world.reveal();
  }
  return {world.report(), world.ledger()};
}

TrialReport run_scenario(const ScenarioParams& params, const DiseaseModel& disease,
                         const StrategySet& strategies, std::uint64_t seed) {
  TrialWorld world(params, disease, strategies, seed);
  world.deploy();
  world.distribute();
  world.enrol_all();
  if (world.run_epochs()) {
    world.reveal();
  }
  return world.report();
}

std::vector<TrialReport> run_seeds(const ScenarioParams& params, const DiseaseModel& disease,
                                   const StrategySet& strategies,
                                   const std::vector<std::uint64_t>& seeds, unsigned threads) {
  std::vector<TrialReport> out(seeds.size());
  if (threads <= 1 || seeds.size() <= 1) {
    for (std::size_t i = 0; i < seeds.size(); ++i) {
      out[i] = run_scenario(params, disease, strategies, seeds[i]);
    }
    return out;
  }
  // Each slot is written by exactly one worker; order is fixed by index.
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(seeds.size());
  std::vector<std::thread> workers;
  for (unsigned t = 0; t < threads; ++t) {
    workers.emplace_back([&] {
      for (std::size_t i = next++; i < seeds.size(); i = next++) {
        try {
          out[i] = run_scenario(params, disease, strategies, seeds[i]);
        } catch (...) {
          errors[i] = std::current_exception();
        }
      }
    });
  }
  for (auto& w : workers) w.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

std::vector<std::uint64_t> adversarial_selection_histogram(SelectionAdversary adversary,
                                                           std::uint64_t available,
                                                           std::uint64_t draws,
                                                           std::uint64_t seed) {
  if (available == 0) {
    throw coinflip::Error(coinflip::Errc::NoShotsAvailable);
  }
  Rng root(seed);
  Rng honest = root.fork("honest");
  Rng cheat = root.fork("adversary");
  const std::uint64_t constant = cheat.next_u64();

  std::vector<std::uint64_t> histogram(available, 0);
  for (std::uint64_t d = 0; d < draws; ++d) {
    coinflip::Session session;
    coinflip::RandomContribution fair{honest.next_u64(), commitment::generate_nonce(honest)};
    session.commit(coinflip::Party::B, fair.commit());

    coinflip::RandomContribution rigged;
    rigged.value = constant;
    if (adversary == SelectionAdversary::AdaptiveCommit) {
      // The adversary has seen the honest commitment (not the value).
      const auto& digest = session.commit_of(coinflip::Party::B)->digest;
      std::uint64_t seen = 0;
      for (int i = 0; i < 8; ++i) seen = (seen << 8) | digest[static_cast<std::size_t>(i)];
      rigged.value ^= seen;
    }
    rigged.nonce = commitment::generate_nonce(cheat);
    session.commit(coinflip::Party::A, rigged.commit());
    session.reveal(coinflip::Party::A, rigged);
    session.reveal(coinflip::Party::B, fair);
    ++histogram[coinflip::select_index(*session.result(), available)];
  }
  return histogram;
}

}  // namespace vaccsc::actors
