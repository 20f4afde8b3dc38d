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

#include <fstream>
#include <string>

#include <nlohmann/json.hpp>

#include "vaccsc/actors.hpp"

namespace vaccsc::testing {

inline nlohmann::json load_data(const std::string& name) {
  std::ifstream f(std::string(VACCSC_TEST_DATA_DIR) + "/" + name);
  if (!f) throw std::runtime_error("missing test data " + name);
  return nlohmann::json::parse(f);
}

inline std::string scenario_path(const std::string& name) {
  return std::string(VACCSC_SCENARIO_DIR) + "/" + name;
}

inline actors::ScenarioParams small_params(std::uint64_t n = 12, std::uint64_t threshold = 4) {
  actors::ScenarioParams p;
  p.num_participants = n;
  p.infected_threshold = threshold;
  p.target_efficiency = 50.0;
  p.num_clinics = 2;
  return p;
}

inline actors::DiseaseModel disease(double pc, double pv, std::uint64_t epochs = 1000) {
  actors::DiseaseModel d;
  d.p_control = pc;
  d.p_vaccine = pv;
  d.epochs = epochs;
  return d;
}

/// A deployed, fully distributed world; patients not yet enrolled.
inline actors::TrialWorld distributed_world(const actors::ScenarioParams& p, std::uint64_t seed,
                                            actors::StrategySet s = {}) {
  actors::TrialWorld w(p, disease(0.5, 0.15), std::move(s), seed);
  w.deploy();
  w.distribute();
  return w;
}

/// Finalized trial whose sick set is 120 controls and 44 vaccine recipients,
/// with all 120 controls revealed.
inline ledger::Ledger worked_example_ledger(std::uint64_t seed = 1) {
  auto p = small_params(200, 164);
  p.vaccine_fraction = 0.3;
  auto w = distributed_world(p, seed);
  w.enrol_all();
  std::uint64_t want_placebo = 120;
  std::uint64_t want_vaccine = 44;
  trial::calls::RevealControls reveal;
  for (const auto& row : w.ground_truth()) {
    auto& left = row.opening.content == commitment::ShotContent::Placebo ? want_placebo : want_vaccine;
    if (left == 0) continue;
    --left;
    w.submit(w.patient(*row.patient), trial::calls::ReportSick{});
    if (row.opening.content == commitment::ShotContent::Placebo) {
      reveal.entries.push_back(trial::calls::RevealEntry::from_opening(row.commit, row.opening));
    }
  }
  w.submit(w.developer(), reveal);
  return w.ledger();
}

inline std::string rejection_code(const ledger::SubmitResult& r) {
  if (const auto* rej = std::get_if<ledger::Rejected>(&r)) return rej->reason.code;
  return "accepted";
}

}  // namespace vaccsc::testing
