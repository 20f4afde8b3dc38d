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

#include "vaccsc/scenario.hpp"

#include <fstream>
#include <stdexcept>

namespace vaccsc::actors {

using nlohmann::json;

namespace {

[[noreturn]] void bad(const std::string& where, const std::string& why) {
  throw std::invalid_argument(where + ": " + why);
}

const json& require(const json& j, const char* key, const std::string& where) {
  if (!j.is_object()) bad(where, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) bad(where, std::string("missing key '") + key + "'");
  return *it;
}

template <class T>
T as(const json& v, const std::string& where) {
  try {
    if constexpr (std::is_same_v<T, std::uint64_t>) {
      if (!v.is_number_unsigned()) bad(where, "expected a non-negative integer");
    } else if constexpr (std::is_floating_point_v<T>) {
      if (!v.is_number()) bad(where, "expected a number");
    } else if constexpr (std::is_same_v<T, std::string>) {
      if (!v.is_string()) bad(where, "expected a string");
    }
    return v.get<T>();
  } catch (const json::exception& e) {
    bad(where, e.what());
  }
}

template <class T>
T field(const json& j, const char* key, const std::string& where) {
  return as<T>(require(j, key, where), where + "." + key);
}

template <class T>
T field_or(const json& j, const char* key, T fallback, const std::string& where) {
  if (!j.is_object()) bad(where, "expected an object");
  auto it = j.find(key);
  return it == j.end() ? fallback : as<T>(*it, where + "." + key);
}

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::string hex_of(const crypto::Digest& d) { return to_hex(d); }

}  // namespace

Behavior behavior_from_json(Role role, const json& j) {
  const std::string where(to_string(role));
  std::string name;
  if (j.is_string()) {
    name = j.get<std::string>();
  } else {
    name = field<std::string>(j, "behavior", where);
  }
  const json params = j.is_object() ? j : json::object();

  Behavior b;
  if (name == "honest") {
    b = Honest{};
  } else if (name == "omit_controls") {
    b = DeveloperOmitControls{field<double>(params, "fraction", where)};
  } else if (name == "forge_controls") {
    b = DeveloperForgeControls{field_or<std::uint64_t>(params, "count", 1, where)};
  } else if (name == "biased_distribution") {
    b = DeveloperBiasedDistribution{};
  } else if (name == "collude_with_patient") {
    b = ClinicColludeWithPatient{field_or<std::uint64_t>(params, "target_index", 0, where)};
  } else if (name == "false_sick") {
    b = PatientFalseSick{field<double>(params, "probability", where)};
  } else if (name == "never_report") {
    b = PatientNeverReport{field<double>(params, "probability", where)};
  } else {
    bad(where, "unknown behavior '" + name + "'");
  }
  Strategy{role, b}.validate();
  return b;
}

json behavior_to_json(const Behavior& b) {
  return std::visit(
      overloaded{
          [](const Honest&) { return json{{"behavior", "honest"}}; },
          [](const DeveloperOmitControls& x) {
            return json{{"behavior", "omit_controls"}, {"fraction", x.fraction}};
          },
          [](const DeveloperForgeControls& x) {
            return json{{"behavior", "forge_controls"}, {"count", x.count}};
          },
          [](const DeveloperBiasedDistribution&) { return json{{"behavior", "biased_distribution"}}; },
          [](const ClinicColludeWithPatient& x) {
            return json{{"behavior", "collude_with_patient"}, {"target_index", x.target_index}};
          },
          [](const PatientFalseSick& x) {
            return json{{"behavior", "false_sick"}, {"probability", x.probability}};
          },
          [](const PatientNeverReport& x) {
            return json{{"behavior", "never_report"}, {"probability", x.probability}};
          },
      },
      b);
}

StrategySet strategy_set_from_json(const json& j) {
  StrategySet s;
  s.name = field_or<std::string>(j, "name", "honest", "strategy");
  if (j.contains("developer")) s.developer.behavior = behavior_from_json(Role::Developer, j["developer"]);
  if (j.contains("clinic")) s.clinic.behavior = behavior_from_json(Role::Clinic, j["clinic"]);
  if (j.contains("patient")) s.patient.behavior = behavior_from_json(Role::Patient, j["patient"]);
  s.validate();
  return s;
}

json strategy_set_to_json(const StrategySet& s) {
  return {{"name", s.name},
          {"developer", behavior_to_json(s.developer.behavior)},
          {"clinic", behavior_to_json(s.clinic.behavior)},
          {"patient", behavior_to_json(s.patient.behavior)}};
}

Scenario scenario_from_json(const json& j) {
  Scenario s;
  s.name = field_or<std::string>(j, "name", "scenario", "scenario");

  const auto& t = require(j, "trial", "scenario");
  s.params.num_participants = field<std::uint64_t>(t, "num_participants", "trial");
  s.params.infected_threshold = field<std::uint64_t>(t, "infected_threshold", "trial");
  s.params.target_efficiency = field_or<double>(t, "target_efficiency", 50.0, "trial");
  s.params.num_clinics = field_or<std::uint64_t>(t, "num_clinics", 2, "trial");
  s.params.vaccine_fraction = field_or<double>(t, "vaccine_fraction", 0.5, "trial");
  s.params.binding_deadline_ticks =
      field_or<std::uint64_t>(t, "binding_deadline_ticks", trial::kDefaultBindingDeadlineTicks, "trial");

  const auto& d = require(j, "disease", "scenario");
  s.disease.p_control = field<double>(d, "p_control", "disease");
  s.disease.p_vaccine = field<double>(d, "p_vaccine", "disease");
  s.disease.epochs = field_or<std::uint64_t>(d, "epochs", 1000, "disease");
  if (d.contains("clinic_risk")) {
    const auto& risk = d["clinic_risk"];
    if (!risk.is_array()) bad("disease.clinic_risk", "expected an array");
    for (const auto& r : risk) s.disease.clinic_risk.push_back(as<double>(r, "disease.clinic_risk"));
  }

  if (j.contains("strategies")) {
    if (!j["strategies"].is_array()) bad("scenario.strategies", "expected an array");
    for (const auto& st : j["strategies"]) s.strategies.push_back(strategy_set_from_json(st));
  }
  if (s.strategies.empty()) s.strategies.emplace_back();

  if (j.contains("seeds")) {
    if (!j["seeds"].is_array()) bad("scenario.seeds", "expected an array");
    for (const auto& v : j["seeds"]) s.seeds.push_back(as<std::uint64_t>(v, "scenario.seeds"));
  }
  if (s.seeds.empty()) s.seeds.push_back(1);

  s.params.validate();
  s.disease.validate();
  return s;
}

json scenario_to_json(const Scenario& s) {
  json strategies = json::array();
  for (const auto& st : s.strategies) strategies.push_back(strategy_set_to_json(st));
  json disease{{"p_control", s.disease.p_control},
               {"p_vaccine", s.disease.p_vaccine},
               {"epochs", s.disease.epochs}};
  if (!s.disease.clinic_risk.empty()) disease["clinic_risk"] = s.disease.clinic_risk;
  return {{"name", s.name},
          {"trial",
           {{"num_participants", s.params.num_participants},
            {"infected_threshold", s.params.infected_threshold},
            {"target_efficiency", s.params.target_efficiency},
            {"num_clinics", s.params.num_clinics},
            {"vaccine_fraction", s.params.vaccine_fraction},
            {"binding_deadline_ticks", s.params.binding_deadline_ticks}}},
          {"disease", disease},
          {"strategies", strategies},
          {"seeds", s.seeds}};
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open scenario file " + path.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(path.string() + ": " + e.what());
  }
  return scenario_from_json(j);
}

json efficiency_to_json(const trial::Efficiency& e) {
  return e.defined() ? json(*e.percent) : json();
}

json report_to_json(const TrialReport& r, bool include_ground_truth) {
  json j;
  j["seed"] = r.seed;
  j["strategy"] = r.strategy_name;
  j["status"] = std::string(to_string(r.status));
  if (!r.diagnostics.empty()) j["diagnostics"] = r.diagnostics;
  j["epochs_run"] = r.epochs_run;
  j["transactions"] = r.transactions;
  j["final_state_digest"] = hex_of(r.final_state_digest);

  if (r.ledger_outcome) {
    const auto& o = *r.ledger_outcome;
    j["ledger_outcome"] = {{"ar0", o.ar0},
                           {"ar1", o.ar1},
                           {"efficiency", efficiency_to_json(o.efficiency)},
                           {"efficiency_text", trial::format_efficiency(o.efficiency)},
                           {"approved", o.approved}};
  } else {
    j["ledger_outcome"] = nullptr;
  }
  j["truthful"] = {{"ar0", r.truthful_ar0},
                   {"ar1", r.truthful_ar1},
                   {"efficiency", efficiency_to_json(r.truthful_efficiency)}};
  j["model_efficiency"] = efficiency_to_json(r.model_efficiency);
  j["divergence_vs_truthful"] = r.divergence_vs_truthful ? json(*r.divergence_vs_truthful) : json();
  j["divergence_vs_model"] = r.divergence_vs_model ? json(*r.divergence_vs_model) : json();
  j["rejections"] = r.rejection_summary;

  if (r.forge_evidence) {
    json attempts = json::array();
    for (const auto& a : r.forge_evidence->attempts) {
      attempts.push_back({{"kind", a.kind},
                          {"tx_index", a.tx_index},
                          {"rejection_code", a.rejection_code ? json(*a.rejection_code) : json()},
                          {"logged_as_rejection", a.logged_as_rejection},
                          {"state_unchanged", a.state_unchanged}});
    }
    j["forge_evidence"] = {{"attempts", attempts},
                           {"all_rejected", r.forge_evidence->all_rejected()},
                           {"all_logged", r.forge_evidence->all_logged()},
                           {"state_unchanged", r.forge_evidence->state_unchanged()}};
  }
  if (r.collusion) {
    j["collusion"] = {{"attempts", r.collusion->attempts},
                      {"hits", r.collusion->hits},
                      {"vaccine", r.collusion->vaccine}};
  }

  if (include_ground_truth) {
    json rows = json::array();
    for (const auto& row : r.ground_truth) {
      rows.push_back({{"commitment", row.commit.hex()},
                      {"content", std::string(commitment::to_string(row.opening.content))},
                      {"nonce", to_hex(row.opening.nonce.bytes)},
                      {"clinic", row.clinic},
                      {"patient", row.patient ? json(*row.patient) : json()},
                      {"infected", row.infected},
                      {"infected_epoch", row.infected_epoch ? json(*row.infected_epoch) : json()},
                      {"reported_sick", row.reported_sick},
                      {"false_report", row.false_report}});
    }
    j["ground_truth"] = rows;
  }
  return j;
}

}  // namespace vaccsc::actors
