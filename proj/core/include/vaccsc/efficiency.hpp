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
#include <optional>
#include <string>

namespace vaccsc::trial {

/// Vaccine efficiency in percent; absent when no control subject got sick.
struct Efficiency {
  std::optional<double> percent;

  bool defined() const { return percent.has_value(); }
  bool operator==(const Efficiency&) const = default;
};

/// VE = 100 * (ar0 - ar1) / ar0, where ar0 counts infected control subjects
/// and ar1 infected vaccinated subjects. Negative when the vaccine arm fares
/// worse.
Efficiency efficiency(std::uint64_t ar0, std::uint64_t ar1);

/// (1 - RR) * 100 with RR = (ar0 - ar1) / ar0 taken at face value, i.e.
/// 100 * ar1 / ar0. Exposed read-only for comparison only; approval never
/// uses it.
Efficiency literal_composition_efficiency(std::uint64_t ar0, std::uint64_t ar1);

bool approves(const Efficiency& ve, double target_percent);

/// "63.33%" or "undefined".
std::string format_efficiency(const Efficiency& ve);

}  // namespace vaccsc::trial
