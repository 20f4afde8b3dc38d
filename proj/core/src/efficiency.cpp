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

#include "vaccsc/efficiency.hpp"

#include <cstdio>

namespace vaccsc::trial {

Efficiency efficiency(std::uint64_t ar0, std::uint64_t ar1) {
  if (ar0 == 0) {
    return {};
  }
  const auto a0 = static_cast<double>(ar0);
  const auto a1 = static_cast<double>(ar1);
  return {100.0 * (a0 - a1) / a0};
}

Efficiency literal_composition_efficiency(std::uint64_t ar0, std::uint64_t ar1) {
  if (ar0 == 0) {
    return {};
  }
  const auto a0 = static_cast<double>(ar0);
  const auto rr = (a0 - static_cast<double>(ar1)) / a0;
  return {(1.0 - rr) * 100.0};
}

bool approves(const Efficiency& ve, double target_percent) {
  return ve.defined() && *ve.percent >= target_percent;
}

std::string format_efficiency(const Efficiency& ve) {
  if (!ve.defined()) {
    return "undefined";
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f%%", *ve.percent);
  return buf;
}

}  // namespace vaccsc::trial
