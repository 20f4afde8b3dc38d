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

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

namespace vaccsc::cli {

// Exit codes are part of the tool's interface; scripts depend on them.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInputError = 1;
inline constexpr int kExitIncomplete = 2;
inline constexpr int kExitAuditFailure = 3;
inline constexpr int kExitRevealMismatch = 4;

struct SimulateOptions {
  std::filesystem::path scenario;
  std::optional<std::uint64_t> seed;  // overrides the scenario's seed list
  std::filesystem::path out_dir = ".";
  bool export_json = false;
  bool verbose = false;
};

int cmd_simulate(const SimulateOptions& opts, std::ostream& out, std::ostream& err);
int cmd_audit(const std::filesystem::path& log, bool verbose, std::ostream& out, std::ostream& err);
int cmd_verify_reveal(const std::string& commitment_hex, const std::string& nonce_hex,
                      const std::string& content, std::ostream& out, std::ostream& err);
int cmd_status(const std::filesystem::path& log, std::ostream& out, std::ostream& err);

/// Parses argv and dispatches to exactly one subcommand.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// "<scenario>-<strategy>-s<seed>", the stem shared by a run's output files.
std::string run_stem(const std::string& scenario, const std::string& strategy, std::uint64_t seed);

}  // namespace vaccsc::cli
