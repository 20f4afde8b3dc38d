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

#include "vaccsc/trial.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace vaccsc::trial {

namespace {

using nlohmann::json;

template <class T, class Fn>
void put_optional(ByteWriter& w, const std::optional<T>& v, Fn&& fn) {
  w.boolean(v.has_value());
  if (v) fn(*v);
}

json optional_hex(const std::optional<Address>& a) { return a ? json(a->hex()) : json(); }

json efficiency_json(const Efficiency& e) { return e.percent ? json(*e.percent) : json(); }

Address require_address_param(const json& params, const char* key) {
  if (!params.is_object() || !params.contains(key) || !params[key].is_string()) {
    throw std::invalid_argument(std::string("missing string parameter '") + key + "'");
  }
  auto a = Address::from_hex(params[key].get<std::string>());
  if (!a) throw std::invalid_argument(std::string("parameter '") + key + "' is not an address");
  return *a;
}

}  // namespace

// ---------------------------------------------------------------------------
// Names

std::string_view to_string(TrialPhase p) {
  switch (p) {
    case TrialPhase::Deployed:
      return "Deployed";
    case TrialPhase::Distributing:
      return "Distributing";
    case TrialPhase::Active:
      return "Active";
    case TrialPhase::RevealPending:
      return "RevealPending";
    case TrialPhase::Finalized:
      return "Finalized";
  }
  return "?";
}

std::string_view to_string(VaccineType t) {
  switch (t) {
    case VaccineType::Unknown:
      return "Unknown";
    case VaccineType::Placebo:
      return "Placebo";
    case VaccineType::VaccineByElimination:
      return "VaccineByElimination";
  }
  return "?";
}

std::string_view to_string(VaccineStatus s) {
  switch (s) {
    case VaccineStatus::Pending:
      return "Pending";
    case VaccineStatus::Approved:
      return "Approved";
    case VaccineStatus::Rejected:
      return "Rejected";
  }
  return "?";
}

std::string_view to_string(TrialError e) {
  switch (e) {
    case TrialError::InvalidDeployment: return "InvalidDeployment";
    case TrialError::DuplicateCommitment: return "DuplicateCommitment";
    case TrialError::ParticipantCountMismatch: return "ParticipantCountMismatch";
    case TrialError::NotDeveloper: return "NotDeveloper";
    case TrialError::WrongPhase: return "WrongPhase";
    case TrialError::UnknownShot: return "UnknownShot";
    case TrialError::AlreadyAssigned: return "AlreadyAssigned";
    case TrialError::UnknownClinic: return "UnknownClinic";
    case TrialError::NotClinic: return "NotClinic";
    case TrialError::InvalidPatient: return "InvalidPatient";
    case TrialError::NoShotsAvailable: return "NoShotsAvailable";
    case TrialError::PatientAlreadyBound: return "PatientAlreadyBound";
    case TrialError::BindingInProgress: return "BindingInProgress";
    case TrialError::UnknownSession: return "UnknownSession";
    case TrialError::NotSessionParty: return "NotSessionParty";
    case TrialError::NotProvisionalPatient: return "NotProvisionalPatient";
    case TrialError::AlreadyConfirmed: return "AlreadyConfirmed";
    case TrialError::NotBoundPatient: return "NotBoundPatient";
    case TrialError::AlreadySick: return "AlreadySick";
    case TrialError::TrialNotActive: return "TrialNotActive";
    case TrialError::NotRevealPhase: return "NotRevealPhase";
    case TrialError::NotSickShot: return "NotSickShot";
    case TrialError::DuplicateReveal: return "DuplicateReveal";
    case TrialError::BadOpening: return "BadOpening";
    case TrialError::NotPlacebo: return "NotPlacebo";
    case TrialError::MalformedPayload: return "MalformedPayload";
  }
  return "?";
}

void reject(TrialError error, std::string detail) {
  throw ledger::ContractRejection(std::string(to_string(error)), std::move(detail));
}

// ---------------------------------------------------------------------------
// Config and deployment descriptor

void TrialConfig::validate() const {
  if (num_participants == 0) {
    throw std::invalid_argument("num_participants must be positive");
  }
  if (infected_threshold == 0) {
    throw std::invalid_argument("infected_threshold must be positive");
  }
  if (infected_threshold > num_participants) {
    throw std::invalid_argument("infected_threshold exceeds num_participants");
  }
  if (!(target_efficiency >= 0.0 && target_efficiency <= 100.0)) {
    throw std::invalid_argument("target_efficiency must lie in [0, 100]");
  }
  if (clinics.empty()) {
    throw std::invalid_argument("at least one clinic is required");
  }
  std::set<Address> unique(clinics.begin(), clinics.end());
  if (unique.size() != clinics.size()) {
    throw std::invalid_argument("clinic addresses must be distinct");
  }
  if (unique.contains(developer)) {
    throw std::invalid_argument("the developer cannot also be a clinic");
  }
  if (binding_deadline_ticks == 0) {
    throw std::invalid_argument("binding_deadline_ticks must be positive");
  }
}

bool TrialConfig::is_clinic(const Address& a) const {
  return std::find(clinics.begin(), clinics.end(), a) != clinics.end();
}

void TrialConfig::encode(ByteWriter& w) const {
  w.u64(num_participants);
  w.u64(infected_threshold);
  w.f64(target_efficiency);
  w.u32(static_cast<std::uint32_t>(clinics.size()));
  for (const auto& c : clinics) w.raw(c.bytes);
  w.raw(developer.bytes);
  w.u64(binding_deadline_ticks);
}

json deployment_descriptor(const TrialConfig& config, const std::vector<Commitment>& commits) {
  auto clinics = json::array();
  for (const auto& c : config.clinics) clinics.push_back(c.hex());
  auto hexes = json::array();
  for (const auto& c : commits) hexes.push_back(c.hex());
  return {{"num_participants", config.num_participants},
          {"infected_threshold", config.infected_threshold},
          {"target_efficiency", config.target_efficiency},
          {"clinics", std::move(clinics)},
          {"developer", config.developer.hex()},
          {"binding_deadline_ticks", config.binding_deadline_ticks},
          {"commitments", std::move(hexes)}};
}

std::pair<TrialConfig, std::vector<Commitment>> parse_deployment_descriptor(const json& j) {
  try {
    TrialConfig config;
    config.num_participants = j.at("num_participants").get<std::uint64_t>();
    config.infected_threshold = j.at("infected_threshold").get<std::uint64_t>();
    config.target_efficiency = j.at("target_efficiency").get<double>();
    for (const auto& c : j.at("clinics")) {
      auto a = Address::from_hex(c.get<std::string>());
      if (!a) throw std::invalid_argument("bad clinic address " + c.dump());
      config.clinics.push_back(*a);
    }
    auto dev = Address::from_hex(j.at("developer").get<std::string>());
    if (!dev) throw std::invalid_argument("bad developer address");
    config.developer = *dev;
    config.binding_deadline_ticks =
        j.value("binding_deadline_ticks", kDefaultBindingDeadlineTicks);
    std::vector<Commitment> commits;
    for (const auto& c : j.at("commitments")) {
      auto commit = Commitment::from_hex(c.get<std::string>());
      if (!commit) throw std::invalid_argument("bad commitment " + c.dump());
      commits.push_back(*commit);
    }
    return {std::move(config), std::move(commits)};
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("deployment descriptor: ") + e.what());
  }
}

// ---------------------------------------------------------------------------
// Deployment

VaccineTrial VaccineTrial::deploy(TrialConfig config, std::vector<Commitment> commits,
                                  const Address& deployer) {
  try {
    config.validate();
  } catch (const std::invalid_argument& e) {
    reject(TrialError::InvalidDeployment, e.what());
  }
  if (deployer != config.developer) {
    reject(TrialError::NotDeveloper, "deployer must be the configured developer");
  }
  if (commits.size() != config.num_participants) {
    reject(TrialError::ParticipantCountMismatch,
           std::to_string(commits.size()) + " commitments for " +
               std::to_string(config.num_participants) + " participants");
  }
  std::sort(commits.begin(), commits.end());
  if (std::adjacent_find(commits.begin(), commits.end()) != commits.end()) {
    reject(TrialError::DuplicateCommitment);
  }

  VaccineTrial trial;
  trial.config_ = std::move(config);
  trial.shots_.reserve(commits.size());
  for (const auto& c : commits) {
    ShotRecord rec;
    rec.commit = c;
    trial.shots_.push_back(std::move(rec));
  }
  return trial;
}

ledger::ContractFactory VaccineTrial::factory() {
  return [](const ledger::Genesis& genesis) -> std::unique_ptr<ledger::Contract> {
    if (genesis.contract_id != kContractId) {
      throw ledger::GenesisError("unknown contract '" + genesis.contract_id + "'");
    }
    std::pair<TrialConfig, std::vector<Commitment>> parsed;
    try {
      parsed = parse_deployment_descriptor(genesis.params);
    } catch (const std::invalid_argument& e) {
      throw ledger::GenesisError(e.what());
    }
    return std::make_unique<VaccineTrial>(
        deploy(std::move(parsed.first), std::move(parsed.second), genesis.deployer));
  };
}

// ---------------------------------------------------------------------------
// Lookup helpers

std::optional<std::size_t> VaccineTrial::index_of(const Commitment& c) const {
  auto it = std::lower_bound(shots_.begin(), shots_.end(), c,
                             [](const ShotRecord& r, const Commitment& v) { return r.commit < v; });
  if (it == shots_.end() || it->commit != c) {
    return std::nullopt;
  }
  return static_cast<std::size_t>(it - shots_.begin());
}

std::size_t VaccineTrial::require_shot(const Commitment& c) const {
  auto idx = index_of(c);
  if (!idx) reject(TrialError::UnknownShot, c.hex());
  return *idx;
}

Binding& VaccineTrial::require_binding(std::uint64_t id) {
  auto it = bindings_.find(id);
  if (it == bindings_.end()) reject(TrialError::UnknownSession, std::to_string(id));
  return it->second;
}

const ShotRecord* VaccineTrial::find_shot(const Commitment& c) const {
  auto idx = index_of(c);
  return idx ? &shots_[*idx] : nullptr;
}

std::vector<Commitment> VaccineTrial::free_shots(const Address& clinic) const {
  std::vector<Commitment> out;
  for (const auto& rec : shots_) {
    if (rec.clinic == clinic && !rec.patient) out.push_back(rec.commit);
  }
  return out;
}

std::vector<Commitment> VaccineTrial::sick_shots() const {
  std::vector<Commitment> out;
  for (const auto& rec : shots_) {
    if (rec.got_sick) out.push_back(rec.commit);
  }
  return out;
}

const Binding* VaccineTrial::find_binding(std::uint64_t id) const {
  auto it = bindings_.find(id);
  return it == bindings_.end() ? nullptr : &it->second;
}

std::optional<Commitment> VaccineTrial::shot_of_patient(const Address& patient) const {
  auto it = patient_shot_.find(patient);
  if (it == patient_shot_.end()) return std::nullopt;
  return shots_[it->second].commit;
}

VaccineStatus VaccineTrial::vaccine_status() const {
  if (phase_ != TrialPhase::Finalized || !outcome_) {
    return VaccineStatus::Pending;
  }
  return outcome_->approved ? VaccineStatus::Approved : VaccineStatus::Rejected;
}

// ---------------------------------------------------------------------------
// Step 1: developer assigns shots to clinics

std::vector<EmittedEvent> VaccineTrial::assign_shot_to_clinic(const CallContext& ctx,
                                                              const calls::AssignShotToClinic& call) {
  if (ctx.sender != config_.developer) reject(TrialError::NotDeveloper);
  if (phase_ != TrialPhase::Deployed && phase_ != TrialPhase::Distributing) {
    reject(TrialError::WrongPhase, std::string(to_string(phase_)));
  }
  auto idx = require_shot(call.shot);
  if (!config_.is_clinic(call.clinic)) reject(TrialError::UnknownClinic, call.clinic.hex());
  auto& rec = shots_[idx];
  if (rec.clinic) reject(TrialError::AlreadyAssigned, call.shot.hex());

  rec.clinic = call.clinic;
  ++assigned_;
  ++free_by_clinic_[call.clinic];
  phase_ = assigned_ == shots_.size() ? TrialPhase::Active : TrialPhase::Distributing;
  return {events::emit(events::ShotAssigned{call.shot, call.clinic})};
}

// ---------------------------------------------------------------------------
// Step 2: coin-flip binding of patient to shot, then patient confirmation

std::vector<EmittedEvent> VaccineTrial::begin_binding(const CallContext& ctx,
                                                      const calls::BeginBinding& call) {
  if (!config_.is_clinic(ctx.sender)) reject(TrialError::NotClinic);
  if (phase_ != TrialPhase::Active) reject(TrialError::TrialNotActive);
  if (call.patient == config_.developer || config_.is_clinic(call.patient)) {
    reject(TrialError::InvalidPatient, "developer and clinics cannot enrol as patients");
  }
  if (patient_shot_.contains(call.patient)) reject(TrialError::PatientAlreadyBound);
  if (pending_patient_.contains(call.patient)) reject(TrialError::BindingInProgress);
  auto free_it = free_by_clinic_.find(ctx.sender);
  auto free = free_it == free_by_clinic_.end() ? 0 : free_it->second;
  auto pending_it = pending_by_clinic_.find(ctx.sender);
  auto pending = pending_it == pending_by_clinic_.end() ? 0 : pending_it->second;
  // Open sessions reserve a shot each so every session can complete.
  if (free <= pending) reject(TrialError::NoShotsAvailable);

  Binding b;
  b.id = next_session_id_++;
  b.clinic = ctx.sender;
  b.patient = call.patient;
  b.session = coinflip::Session(ctx.tick + config_.binding_deadline_ticks);
  b.session.commit(coinflip::Party::A, call.clinic_commit);

  pending_patient_[b.patient] = b.id;
  ++pending_by_clinic_[b.clinic];
  events::BindingStarted ev{b.id, b.clinic, b.patient, *b.session.deadline()};
  bindings_.emplace(b.id, std::move(b));
  return {events::emit(ev)};
}

std::vector<EmittedEvent> VaccineTrial::patient_commit(const CallContext& ctx,
                                                       const calls::PatientCommit& call) {
  auto& b = require_binding(call.session);
  if (ctx.sender != b.patient) reject(TrialError::NotSessionParty);
  if (phase_ != TrialPhase::Active) reject(TrialError::TrialNotActive);
  try {
    b.session.commit(coinflip::Party::B, call.commit);
  } catch (const coinflip::Error& e) {
    throw ledger::ContractRejection(std::string(coinflip::to_string(e.code())));
  }
  return {};
}

std::vector<EmittedEvent> VaccineTrial::clinic_reveal(const CallContext& ctx,
                                                      const calls::ClinicReveal& call) {
  return reveal(ctx, call.session, coinflip::Party::A, call.contribution);
}

std::vector<EmittedEvent> VaccineTrial::patient_reveal(const CallContext& ctx,
                                                       const calls::PatientReveal& call) {
  return reveal(ctx, call.session, coinflip::Party::B, call.contribution);
}

std::vector<EmittedEvent> VaccineTrial::reveal(const CallContext& ctx, std::uint64_t session_id,
                                               coinflip::Party party,
                                               const coinflip::RandomContribution& contribution) {
  auto& b = require_binding(session_id);
  const auto& expected = party == coinflip::Party::A ? b.clinic : b.patient;
  if (ctx.sender != expected) reject(TrialError::NotSessionParty);
  if (phase_ != TrialPhase::Active) reject(TrialError::TrialNotActive);
  try {
    b.session.reveal(party, contribution);
  } catch (const coinflip::Error& e) {
    throw ledger::ContractRejection(std::string(coinflip::to_string(e.code())));
  }
  if (b.session.phase() != coinflip::Phase::Complete) {
    return {};
  }

  // Reservation in begin_binding guarantees at least one free shot here.
  std::vector<std::size_t> free;
  for (std::size_t i = 0; i < shots_.size(); ++i) {
    if (shots_[i].clinic == b.clinic && !shots_[i].patient) free.push_back(i);
  }
  auto pick = coinflip::select_index(*b.session.result(), free.size());
  auto idx = free[pick];
  auto& rec = shots_[idx];
  rec.patient = b.patient;
  rec.session_id = b.id;
  rec.session = b.session;
  b.shot = idx;
  patient_shot_[b.patient] = idx;
  --free_by_clinic_[b.clinic];
  close_pending(b);
  return {events::emit(events::BindingSelected{b.id, rec.commit, b.patient, pick, free.size()})};
}

void VaccineTrial::close_pending(const Binding& b) {
  pending_patient_.erase(b.patient);
  if (--pending_by_clinic_[b.clinic] == 0) {
    pending_by_clinic_.erase(b.clinic);
  }
}

std::vector<EmittedEvent> VaccineTrial::abort_binding(const CallContext& ctx,
                                                      const calls::AbortBinding& call) {
  auto& b = require_binding(call.session);
  if (ctx.sender != b.clinic && ctx.sender != b.patient) reject(TrialError::NotSessionParty);
  if (phase_ != TrialPhase::Active) reject(TrialError::TrialNotActive);
  try {
    b.session.abort(ctx.tick);
  } catch (const coinflip::Error& e) {
    throw ledger::ContractRejection(std::string(coinflip::to_string(e.code())));
  }
  close_pending(b);
  return {events::emit(events::BindingAborted{b.id})};
}

std::vector<EmittedEvent> VaccineTrial::confirm_binding(const CallContext& ctx,
                                                        const calls::ConfirmBinding& call) {
  if (phase_ != TrialPhase::Active) reject(TrialError::TrialNotActive);
  auto idx = require_shot(call.shot);
  auto& rec = shots_[idx];
  if (rec.patient != ctx.sender) reject(TrialError::NotProvisionalPatient);
  if (rec.patient_confirmed) reject(TrialError::AlreadyConfirmed);
  rec.patient_confirmed = true;
  return {events::emit(events::BindingConfirmed{rec.commit, ctx.sender})};
}

// ---------------------------------------------------------------------------
// Steps 3-4: sickness reports and the threshold trigger

std::vector<EmittedEvent> VaccineTrial::report_sick(const CallContext& ctx, const calls::ReportSick&) {
  if (phase_ != TrialPhase::Active) reject(TrialError::TrialNotActive);
  auto it = patient_shot_.find(ctx.sender);
  if (it == patient_shot_.end() || !shots_[it->second].patient_confirmed) {
    reject(TrialError::NotBoundPatient);
  }
  auto& rec = shots_[it->second];
  if (rec.got_sick) reject(TrialError::AlreadySick);

  rec.got_sick = true;
  ++infected_;
  std::vector<EmittedEvent> out{events::emit(events::PatientSick{rec.commit, ctx.sender, infected_})};
  if (infected_ == config_.infected_threshold) {
    phase_ = TrialPhase::RevealPending;
    out.push_back(events::emit(events::TrialFinished{infected_}));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Steps 5-6: control reveal, elimination, outcome

std::vector<EmittedEvent> VaccineTrial::reveal_controls(const CallContext& ctx,
                                                        const calls::RevealControls& call) {
  if (ctx.sender != config_.developer) reject(TrialError::NotDeveloper);
  if (phase_ != TrialPhase::RevealPending) reject(TrialError::NotRevealPhase);

  std::set<std::size_t> placebo;
  for (std::size_t i = 0; i < call.entries.size(); ++i) {
    const auto& entry = call.entries[i];
    auto where = "entry " + std::to_string(i) + " (" + entry.commitment.hex() + ")";
    auto idx = index_of(entry.commitment);
    if (!idx) reject(TrialError::UnknownShot, where);
    const auto& rec = shots_[*idx];
    if (!rec.got_sick || rec.vaccine_type != VaccineType::Unknown) {
      reject(TrialError::NotSickShot, where);
    }
    if (placebo.contains(*idx)) reject(TrialError::DuplicateReveal, where);
    auto opening = commitment::Opening::deserialize(entry.opening);
    if (!opening || !commitment::verify_opening(entry.commitment, *opening)) {
      reject(TrialError::BadOpening, where);
    }
    if (opening->content != commitment::ShotContent::Placebo) {
      reject(TrialError::NotPlacebo, where);
    }
    placebo.insert(*idx);
  }

  TrialOutcome result;
  for (std::size_t i = 0; i < shots_.size(); ++i) {
    auto& rec = shots_[i];
    if (!rec.got_sick) continue;
    if (placebo.contains(i)) {
      rec.vaccine_type = VaccineType::Placebo;
      ++result.ar0;
    } else {
      rec.vaccine_type = VaccineType::VaccineByElimination;
      ++result.ar1;
    }
  }
  result.efficiency = efficiency(result.ar0, result.ar1);
  result.approved = approves(result.efficiency, config_.target_efficiency);
  outcome_ = result;
  phase_ = TrialPhase::Finalized;
  return {events::emit(
      events::TrialFinalized{result.ar0, result.ar1, result.efficiency, result.approved})};
}

// ---------------------------------------------------------------------------
// ledger::Contract

std::unique_ptr<ledger::Contract> VaccineTrial::clone() const {
  return std::unique_ptr<ledger::Contract>(new VaccineTrial(*this));
}

bool VaccineTrial::has_method(std::string_view method) const {
  return method == calls::AssignShotToClinic::kMethod || method == calls::BeginBinding::kMethod ||
         method == calls::PatientCommit::kMethod || method == calls::ClinicReveal::kMethod ||
         method == calls::PatientReveal::kMethod || method == calls::AbortBinding::kMethod ||
         method == calls::ConfirmBinding::kMethod || method == calls::ReportSick::kMethod ||
         method == calls::RevealControls::kMethod;
}

std::vector<EmittedEvent> VaccineTrial::apply(const CallContext& ctx, std::string_view method,
                                              ByteView payload) {
  auto dispatch = [&]<class Call>(std::vector<EmittedEvent> (VaccineTrial::*fn)(const CallContext&,
                                                                            const Call&)) {
    Call call;
    try {
      call = Call::decode(payload);
    } catch (const DecodeError& e) {
      reject(TrialError::MalformedPayload, e.what());
    }
    return (this->*fn)(ctx, call);
  };
  if (method == calls::AssignShotToClinic::kMethod) return dispatch(&VaccineTrial::assign_shot_to_clinic);
  if (method == calls::BeginBinding::kMethod) return dispatch(&VaccineTrial::begin_binding);
  if (method == calls::PatientCommit::kMethod) return dispatch(&VaccineTrial::patient_commit);
  if (method == calls::ClinicReveal::kMethod) return dispatch(&VaccineTrial::clinic_reveal);
  if (method == calls::PatientReveal::kMethod) return dispatch(&VaccineTrial::patient_reveal);
  if (method == calls::AbortBinding::kMethod) return dispatch(&VaccineTrial::abort_binding);
  if (method == calls::ConfirmBinding::kMethod) return dispatch(&VaccineTrial::confirm_binding);
  if (method == calls::ReportSick::kMethod) return dispatch(&VaccineTrial::report_sick);
  if (method == calls::RevealControls::kMethod) return dispatch(&VaccineTrial::reveal_controls);
  throw ledger::ContractRejection("UnknownMethod", std::string(method));
}

Bytes VaccineTrial::serialize_state() const {
  ByteWriter w;
  w.raw(as_bytes(kContractId));
  w.u8(static_cast<std::uint8_t>(phase_));
  config_.encode(w);
  w.u32(static_cast<std::uint32_t>(shots_.size()));
  for (const auto& rec : shots_) {
    w.raw(rec.commit.digest);
    put_optional(w, rec.clinic, [&](const Address& a) { w.raw(a.bytes); });
    put_optional(w, rec.patient, [&](const Address& a) { w.raw(a.bytes); });
    w.boolean(rec.got_sick);
    w.u8(static_cast<std::uint8_t>(rec.vaccine_type));
    w.boolean(rec.patient_confirmed);
    put_optional(w, rec.session_id, [&](std::uint64_t id) { w.u64(id); });
    put_optional(w, rec.session, [&](const coinflip::Session& s) { s.encode(w); });
  }
  w.u64(assigned_);
  w.u64(infected_);
  w.u64(next_session_id_);
  w.u32(static_cast<std::uint32_t>(bindings_.size()));
  for (const auto& [id, b] : bindings_) {
    w.u64(id);
    w.raw(b.clinic.bytes);
    w.raw(b.patient.bytes);
    b.session.encode(w);
    put_optional(w, b.shot, [&](std::size_t s) { w.u64(s); });
  }
  put_optional(w, outcome_, [&](const TrialOutcome& o) {
    w.u64(o.ar0);
    w.u64(o.ar1);
    w.boolean(o.efficiency.defined());
    w.f64(o.efficiency.percent.value_or(0.0));
    w.boolean(o.approved);
  });
  return w.take();
}

namespace {

json shot_json(const ShotRecord& rec) {
  json j = {{"commitment", rec.commit.hex()},
            {"clinic", optional_hex(rec.clinic)},
            {"patient", optional_hex(rec.patient)},
            {"patient_confirmed", rec.patient_confirmed},
            {"got_sick", rec.got_sick},
            {"vaccine_type", std::string(to_string(rec.vaccine_type))}};
  j["session"] = rec.session_id ? json(*rec.session_id) : json();
  return j;
}

json outcome_json(const std::optional<TrialOutcome>& o) {
  if (!o) return json();
  return {{"ar0", o->ar0},
          {"ar1", o->ar1},
          {"efficiency", efficiency_json(o->efficiency)},
          {"approved", o->approved}};
}

json commit_list(const std::vector<Commitment>& commits) {
  auto out = json::array();
  for (const auto& c : commits) out.push_back(c.hex());
  return out;
}

}  // namespace

json VaccineTrial::query(std::string_view view, const json& params) const {
  if (view == "phase") return std::string(to_string(phase_));
  if (view == "vaccine_status") return std::string(to_string(vaccine_status()));
  if (view == "infected_count") return infected_;
  if (view == "infected_threshold") return config_.infected_threshold;
  if (view == "efficiency") {
    return outcome_ ? efficiency_json(outcome_->efficiency) : json();
  }
  if (view == "efficiency_literal") {
    return outcome_ ? efficiency_json(literal_composition_efficiency(outcome_->ar0, outcome_->ar1))
                    : json();
  }
  if (view == "outcome") return outcome_json(outcome_);
  if (view == "config") {
    auto j = deployment_descriptor(config_, {});
    j.erase("commitments");
    return j;
  }
  if (view == "shot_count") return shots_.size();
  if (view == "shot") {
    if (!params.is_object() || !params.contains("commitment")) {
      throw std::invalid_argument("missing parameter 'commitment'");
    }
    auto c = Commitment::from_hex(params["commitment"].get<std::string>());
    const ShotRecord* rec = c ? find_shot(*c) : nullptr;
    return rec ? shot_json(*rec) : json();
  }
  if (view == "shots") {
    auto out = json::array();
    for (const auto& rec : shots_) out.push_back(shot_json(rec));
    return out;
  }
  if (view == "free_shots") return commit_list(free_shots(require_address_param(params, "clinic")));
  if (view == "sick_shots") return commit_list(sick_shots());
  if (view == "patient_shot") {
    auto shot = shot_of_patient(require_address_param(params, "patient"));
    return shot ? json(shot->hex()) : json();
  }
  if (view == "session") {
    if (!params.is_object() || !params.contains("id")) {
      throw std::invalid_argument("missing parameter 'id'");
    }
    const Binding* b = find_binding(params["id"].get<std::uint64_t>());
    if (!b) return json();
    json j = {{"id", b->id},
              {"clinic", b->clinic.hex()},
              {"patient", b->patient.hex()},
              {"phase", std::string(coinflip::to_string(b->session.phase()))}};
    j["result"] = b->session.result() ? json(*b->session.result()) : json();
    j["deadline"] = b->session.deadline() ? json(*b->session.deadline()) : json();
    j["shot"] = b->shot ? json(shots_[*b->shot].commit.hex()) : json();
    return j;
  }
  throw ledger::UnknownView(std::string(view));
}

json VaccineTrial::describe_event(const ledger::Event& e) const { return events::describe(e); }

}  // namespace vaccsc::trial
