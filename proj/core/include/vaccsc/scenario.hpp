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

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "vaccsc/actors.hpp"

namespace vaccsc::actors {

/// A simulation input: one trial shape, one disease model, one or more
/// strategy sets, and the seeds to run each of them under.
struct Scenario {
  std::string name;
  ScenarioParams params;
  DiseaseModel disease;
  std::vector<StrategySet> strategies;
  std::vector<std::uint64_t> seeds;
};

/// All parse functions throw std::invalid_argument naming the offending key.
Behavior behavior_from_json(Role role, const nlohmann::json& j);
nlohmann::json behavior_to_json(const Behavior& b);
StrategySet strategy_set_from_json(const nlohmann::json& j);
nlohmann::json strategy_set_to_json(const StrategySet& s);

Scenario scenario_from_json(const nlohmann::json& j);
nlohmann::json scenario_to_json(const Scenario& s);
Scenario load_scenario(const std::filesystem::path& path);

nlohmann::json efficiency_to_json(const trial::Efficiency& e);
nlohmann::json report_to_json(const TrialReport& r, bool include_ground_truth = true);

}  // namespace vaccsc::actors
