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

#include "vaccsc/coinflip.hpp"

#include <string>

namespace vaccsc::coinflip {

std::string_view to_string(Phase p) {
  switch (p) {
    case Phase::AwaitingCommits:
      return "AwaitingCommits";
    case Phase::AwaitingReveals:
      return "AwaitingReveals";
    case Phase::Complete:
      return "Complete";
    case Phase::Aborted:
      return "Aborted";
  }
  return "?";
}

std::string_view to_string(Errc e) {
  switch (e) {
    case Errc::DuplicateCommit:
      return "DuplicateCommit";
    case Errc::CommitPhaseOver:
      return "CommitPhaseOver";
    case Errc::RevealBeforeCommits:
      return "RevealBeforeCommits";
    case Errc::RevealMismatch:
      return "RevealMismatch";
    case Errc::DuplicateReveal:
      return "DuplicateReveal";
    case Errc::SessionClosed:
      return "SessionClosed";
    case Errc::NoDeadline:
      return "NoDeadline";
    case Errc::AbortBeforeDeadline:
      return "AbortBeforeDeadline";
    case Errc::NoShotsAvailable:
      return "NoShotsAvailable";
  }
  return "?";
}

Error::Error(Errc code) : std::runtime_error(std::string(to_string(code))), code_(code) {}

ByteArray<kContributionSize> RandomContribution::serialize() const {
  ByteArray<kContributionSize> out{};
  for (std::size_t i = 0; i < 8; ++i) {
    out[i] = static_cast<std::uint8_t>(value >> (56 - 8 * i));
  }
  std::copy(nonce.bytes.begin(), nonce.bytes.end(), out.begin() + 8);
  return out;
}

Commitment RandomContribution::commit() const { return commitment::commit_bytes(serialize()); }

void Session::commit(Party party, const Commitment& c) {
  if (phase_ == Phase::Complete || phase_ == Phase::Aborted) {
    throw Error(Errc::SessionClosed);
  }
  if (phase_ != Phase::AwaitingCommits) {
    throw Error(Errc::CommitPhaseOver);
  }
  auto& slot = commits_[index(party)];
  if (slot) {
    throw Error(Errc::DuplicateCommit);
  }
  slot = c;
  if (commits_[0] && commits_[1]) {
    phase_ = Phase::AwaitingReveals;
  }
}

void Session::reveal(Party party, const RandomContribution& r) {
  if (phase_ == Phase::Complete || phase_ == Phase::Aborted) {
    throw Error(Errc::SessionClosed);
  }
  if (phase_ != Phase::AwaitingReveals) {
    throw Error(Errc::RevealBeforeCommits);
  }
  auto& slot = reveals_[index(party)];
  if (slot) {
    throw Error(Errc::DuplicateReveal);
  }
  if (r.commit() != *commits_[index(party)]) {
    throw Error(Errc::RevealMismatch);
  }
  slot = r;
  if (reveals_[0] && reveals_[1]) {
    result_ = reveals_[0]->value ^ reveals_[1]->value;
    phase_ = Phase::Complete;
  }
}

void Session::abort(std::uint64_t now) {
  if (phase_ == Phase::Complete || phase_ == Phase::Aborted) {
    throw Error(Errc::SessionClosed);
  }
  if (!deadline_) {
    throw Error(Errc::NoDeadline);
  }
  if (now <= *deadline_) {
    throw Error(Errc::AbortBeforeDeadline);
  }
  phase_ = Phase::Aborted;
}

namespace {

template <class T, class Fn>
void encode_optional(ByteWriter& w, const std::optional<T>& v, Fn&& fn) {
  w.boolean(v.has_value());
  if (v) fn(*v);
}

}  // namespace

void Session::encode(ByteWriter& w) const {
  w.u8(static_cast<std::uint8_t>(phase_));
  for (const auto& c : commits_) {
    encode_optional(w, c, [&](const Commitment& v) { w.raw(v.digest); });
  }
  for (const auto& r : reveals_) {
    encode_optional(w, r, [&](const RandomContribution& v) { w.raw(v.serialize()); });
  }
  encode_optional(w, result_, [&](std::uint64_t v) { w.u64(v); });
  encode_optional(w, deadline_, [&](std::uint64_t v) { w.u64(v); });
}

Session Session::decode(ByteReader& r) {
  Session s;
  auto phase = r.u8();
  if (phase > static_cast<std::uint8_t>(Phase::Aborted)) {
    throw DecodeError("coinflip session: bad phase");
  }
  s.phase_ = static_cast<Phase>(phase);
  for (auto& c : s.commits_) {
    if (r.boolean()) c = Commitment{r.array<32>()};
  }
  for (auto& rv : s.reveals_) {
    if (r.boolean()) {
      RandomContribution contribution;
      contribution.value = r.u64();
      contribution.nonce.bytes = r.array<commitment::kNonceSize>();
      rv = contribution;
    }
  }
  if (r.boolean()) s.result_ = r.u64();
  if (r.boolean()) s.deadline_ = r.u64();
  return s;
}

Session session_commit(Session s, Party party, const Commitment& c) {
  s.commit(party, c);
  return s;
}

Session session_reveal(Session s, Party party, const RandomContribution& r) {
  s.reveal(party, r);
  return s;
}

Session session_abort(Session s, std::uint64_t now) {
  s.abort(now);
  return s;
}

std::uint64_t select_index(std::uint64_t result, std::uint64_t available_count) {
  if (available_count == 0) {
    throw Error(Errc::NoShotsAvailable);
  }
  return result % available_count;
}

}  // namespace vaccsc::coinflip
