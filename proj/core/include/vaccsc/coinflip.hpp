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
#include <stdexcept>
#include <string_view>

#include "vaccsc/bytes.hpp"
#include "vaccsc/commitment.hpp"

namespace vaccsc::coinflip {

using commitment::Commitment;
using commitment::Nonce;

enum class Party : std::uint8_t { A = 0, B = 1 };

enum class Phase : std::uint8_t {
  AwaitingCommits = 0,
  AwaitingReveals = 1,
  Complete = 2,
  Aborted = 3,
};

std::string_view to_string(Phase p);

inline constexpr std::size_t kContributionSize = 8 + commitment::kNonceSize;

/// A party's private 64-bit random value together with its commitment nonce.
/// Committed preimage: 8-byte big-endian value, then the 32-byte nonce.
struct RandomContribution {
  std::uint64_t value = 0;
  Nonce nonce;

  ByteArray<kContributionSize> serialize() const;
  Commitment commit() const;

  bool operator==(const RandomContribution&) const = default;
};

enum class Errc {
  DuplicateCommit,
  CommitPhaseOver,
  RevealBeforeCommits,
  RevealMismatch,
  DuplicateReveal,
  SessionClosed,
  NoDeadline,
  AbortBeforeDeadline,
  NoShotsAvailable,
};

std::string_view to_string(Errc e);

class Error : public std::runtime_error {
 public:
  explicit Error(Errc code);
  Errc code() const { return code_; }

 private:
  Errc code_;
};

/// Two-party commit-then-reveal XOR session. Every mutator validates before
/// touching state, so a thrown Error leaves the session unchanged.
class Session {
 public:
  Session() = default;
  explicit Session(std::optional<std::uint64_t> deadline) : deadline_(deadline) {}

  Phase phase() const { return phase_; }
  const std::optional<Commitment>& commit_of(Party p) const { return commits_[index(p)]; }
  const std::optional<RandomContribution>& reveal_of(Party p) const { return reveals_[index(p)]; }
  std::optional<std::uint64_t> result() const { return result_; }
  std::optional<std::uint64_t> deadline() const { return deadline_; }

  void commit(Party party, const Commitment& c);
  void reveal(Party party, const RandomContribution& r);
  void abort(std::uint64_t now);

  void encode(ByteWriter& w) const;
  static Session decode(ByteReader& r);

  bool operator==(const Session&) const = default;

 private:
  static std::size_t index(Party p) { return static_cast<std::size_t>(p); }

  Phase phase_ = Phase::AwaitingCommits;
  std::optional<Commitment> commits_[2];
  std::optional<RandomContribution> reveals_[2];
  std::optional<std::uint64_t> result_;
  std::optional<std::uint64_t> deadline_;
};

Session session_commit(Session s, Party party, const Commitment& c);
Session session_reveal(Session s, Party party, const RandomContribution& r);
Session session_abort(Session s, std::uint64_t now);

/// result mod available_count. Throws Error(NoShotsAvailable) on zero.
std::uint64_t select_index(std::uint64_t result, std::uint64_t available_count);

}  // namespace vaccsc::coinflip
