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

#include "vaccsc/trial_calls.hpp"

#include <stdexcept>

namespace vaccsc::trial {

namespace {

void put(ByteWriter& w, const commitment::Commitment& c) { w.raw(c.digest); }
void put(ByteWriter& w, const ledger::Address& a) { w.raw(a.bytes); }
void put(ByteWriter& w, const coinflip::RandomContribution& r) { w.raw(r.serialize()); }

commitment::Commitment get_commitment(ByteReader& r) { return {r.array<32>()}; }
ledger::Address get_address(ByteReader& r) { return {r.array<ledger::kAddressSize>()}; }
coinflip::RandomContribution get_contribution(ByteReader& r) {
  coinflip::RandomContribution c;
  c.value = r.u64();
  c.nonce.bytes = r.array<commitment::kNonceSize>();
  return c;
}

template <class Fn>
auto decode_all(ByteView payload, Fn&& fn) {
  ByteReader r(payload);
  auto out = fn(r);
  r.expect_done();
  return out;
}

}  // namespace

namespace calls {

Bytes AssignShotToClinic::encode() const {
  ByteWriter w;
  put(w, shot);
  put(w, clinic);
  return w.take();
}

AssignShotToClinic AssignShotToClinic::decode(ByteView payload) {
  return decode_all(payload, [](ByteReader& r) {
    AssignShotToClinic c;
    c.shot = get_commitment(r);
    c.clinic = get_address(r);
    return c;
  });
}

Bytes BeginBinding::encode() const {
  ByteWriter w;
  put(w, patient);
  put(w, clinic_commit);
  return w.take();
}

BeginBinding BeginBinding::decode(ByteView payload) {
  return decode_all(payload, [](ByteReader& r) {
    BeginBinding c;
    c.patient = get_address(r);
    c.clinic_commit = get_commitment(r);
    return c;
  });
}

Bytes PatientCommit::encode() const {
  ByteWriter w;
  w.u64(session);
  put(w, commit);
  return w.take();
}

PatientCommit PatientCommit::decode(ByteView payload) {
  return decode_all(payload, [](ByteReader& r) {
    PatientCommit c;
    c.session = r.u64();
    c.commit = get_commitment(r);
    return c;
  });
}

Bytes ClinicReveal::encode() const {
  ByteWriter w;
  w.u64(session);
  put(w, contribution);
  return w.take();
}

ClinicReveal ClinicReveal::decode(ByteView payload) {
  return decode_all(payload, [](ByteReader& r) {
    ClinicReveal c;
    c.session = r.u64();
    c.contribution = get_contribution(r);
    return c;
  });
}

Bytes PatientReveal::encode() const {
  ByteWriter w;
  w.u64(session);
  put(w, contribution);
  return w.take();
}

PatientReveal PatientReveal::decode(ByteView payload) {
  return decode_all(payload, [](ByteReader& r) {
    PatientReveal c;
    c.session = r.u64();
    c.contribution = get_contribution(r);
    return c;
  });
}

Bytes AbortBinding::encode() const {
  ByteWriter w;
  w.u64(session);
  return w.take();
}

AbortBinding AbortBinding::decode(ByteView payload) {
  return decode_all(payload, [](ByteReader& r) { return AbortBinding{r.u64()}; });
}

Bytes ConfirmBinding::encode() const {
  ByteWriter w;
  put(w, shot);
  return w.take();
}

ConfirmBinding ConfirmBinding::decode(ByteView payload) {
  return decode_all(payload, [](ByteReader& r) { return ConfirmBinding{get_commitment(r)}; });
}

ReportSick ReportSick::decode(ByteView payload) {
  if (!payload.empty()) {
    throw DecodeError("report_sick takes no arguments");
  }
  return {};
}

RevealEntry RevealEntry::from_opening(const Commitment& c, const commitment::Opening& o) {
  auto bytes = o.serialize();
  return {c, Bytes(bytes.begin(), bytes.end())};
}

Bytes RevealControls::encode() const {
  ByteWriter w;
  w.u32(static_cast<std::uint32_t>(entries.size()));
  for (const auto& e : entries) {
    put(w, e.commitment);
    w.var_bytes(e.opening);
  }
  return w.take();
}

RevealControls RevealControls::decode(ByteView payload) {
  return decode_all(payload, [](ByteReader& r) {
    RevealControls c;
    auto n = r.u32();
    if (n > r.remaining() / 36) {
      throw DecodeError("reveal_controls: entry count exceeds payload");
    }
    c.entries.reserve(n);
    for (std::uint32_t i = 0; i < n; ++i) {
      RevealEntry e;
      e.commitment = get_commitment(r);
      e.opening = r.var_bytes();
      c.entries.push_back(std::move(e));
    }
    return c;
  });
}

RevealControls reveal_from_json(const nlohmann::json& j) {
  if (!j.is_array()) {
    throw std::invalid_argument("reveal payload: expected a JSON array");
  }
  RevealControls out;
  for (const auto& entry : j) {
    auto c = Commitment::from_hex(entry.at("commitment_hex").get<std::string>());
    auto nonce = array_from_hex<commitment::kNonceSize>(entry.at("nonce_hex").get<std::string>());
    auto content = commitment::parse_content(entry.at("content").get<std::string>());
    if (!c || !nonce || !content) {
      throw std::invalid_argument("reveal payload: malformed entry " + entry.dump());
    }
    out.entries.push_back(RevealEntry::from_opening(*c, {*content, {*nonce}}));
  }
  return out;
}

nlohmann::json reveal_to_json(const RevealControls& reveal) {
  auto out = nlohmann::json::array();
  for (const auto& e : reveal.entries) {
    auto opening = commitment::Opening::deserialize(e.opening);
    if (!opening) {
      throw std::invalid_argument("reveal payload: entry for " + e.commitment.hex() +
                                  " is not a well-formed opening");
    }
    out.push_back({{"commitment_hex", e.commitment.hex()},
                   {"nonce_hex", to_hex(opening->nonce.bytes)},
                   {"content", std::string(commitment::to_string(opening->content))}});
  }
  return out;
}

}  // namespace calls

namespace events {

Bytes ShotAssigned::encode() const {
  ByteWriter w;
  put(w, shot);
  put(w, clinic);
  return w.take();
}

ShotAssigned ShotAssigned::decode(ByteView payload) {
  return decode_all(payload, [](ByteReader& r) {
    ShotAssigned e;
    e.shot = get_commitment(r);
    e.clinic = get_address(r);
    return e;
  });
}

Bytes BindingStarted::encode() const {
  ByteWriter w;
  w.u64(session);
  put(w, clinic);
  put(w, patient);
  w.u64(deadline);
  return w.take();
}

BindingStarted BindingStarted::decode(ByteView payload) {
  return decode_all(payload, [](ByteReader& r) {
    BindingStarted e;
    e.session = r.u64();
    e.clinic = get_address(r);
    e.patient = get_address(r);
    e.deadline = r.u64();
    return e;
  });
}

Bytes BindingSelected::encode() const {
  ByteWriter w;
  w.u64(session);
  put(w, shot);
  put(w, patient);
  w.u64(selected_index);
  w.u64(available);
  return w.take();
}

BindingSelected BindingSelected::decode(ByteView payload) {
  return decode_all(payload, [](ByteReader& r) {
    BindingSelected e;
    e.session = r.u64();
    e.shot = get_commitment(r);
    e.patient = get_address(r);
    e.selected_index = r.u64();
    e.available = r.u64();
    return e;
  });
}

Bytes BindingAborted::encode() const {
  ByteWriter w;
  w.u64(session);
  return w.take();
}

BindingAborted BindingAborted::decode(ByteView payload) {
  return decode_all(payload, [](ByteReader& r) { return BindingAborted{r.u64()}; });
}

Bytes BindingConfirmed::encode() const {
  ByteWriter w;
  put(w, shot);
  put(w, patient);
  return w.take();
}

BindingConfirmed BindingConfirmed::decode(ByteView payload) {
  return decode_all(payload, [](ByteReader& r) {
    BindingConfirmed e;
    e.shot = get_commitment(r);
    e.patient = get_address(r);
    return e;
  });
}

Bytes PatientSick::encode() const {
  ByteWriter w;
  put(w, shot);
  put(w, patient);
  w.u64(infected_count);
  return w.take();
}

PatientSick PatientSick::decode(ByteView payload) {
  return decode_all(payload, [](ByteReader& r) {
    PatientSick e;
    e.shot = get_commitment(r);
    e.patient = get_address(r);
    e.infected_count = r.u64();
    return e;
  });
}

Bytes TrialFinished::encode() const {
  ByteWriter w;
  w.u64(infected_count);
  return w.take();
}

TrialFinished TrialFinished::decode(ByteView payload) {
  return decode_all(payload, [](ByteReader& r) { return TrialFinished{r.u64()}; });
}

Bytes TrialFinalized::encode() const {
  ByteWriter w;
  w.u64(ar0);
  w.u64(ar1);
  w.boolean(efficiency.defined());
  w.f64(efficiency.percent.value_or(0.0));
  w.boolean(approved);
  return w.take();
}

TrialFinalized TrialFinalized::decode(ByteView payload) {
  return decode_all(payload, [](ByteReader& r) {
    TrialFinalized e;
    e.ar0 = r.u64();
    e.ar1 = r.u64();
    bool defined = r.boolean();
    double pct = r.f64();
    if (defined) e.efficiency.percent = pct;
    e.approved = r.boolean();
    return e;
  });
}

nlohmann::json describe(const ledger::Event& e) {
  try {
    if (e.name == ShotAssigned::kName) {
      auto d = ShotAssigned::decode(e.payload);
      return {{"shot", d.shot.hex()}, {"clinic", d.clinic.hex()}};
    }
    if (e.name == BindingStarted::kName) {
      auto d = BindingStarted::decode(e.payload);
      return {{"session", d.session},
              {"clinic", d.clinic.hex()},
              {"patient", d.patient.hex()},
              {"deadline", d.deadline}};
    }
    if (e.name == BindingSelected::kName) {
      auto d = BindingSelected::decode(e.payload);
      return {{"session", d.session},
              {"shot", d.shot.hex()},
              {"patient", d.patient.hex()},
              {"selected_index", d.selected_index},
              {"available", d.available}};
    }
    if (e.name == BindingAborted::kName) {
      return {{"session", BindingAborted::decode(e.payload).session}};
    }
    if (e.name == BindingConfirmed::kName) {
      auto d = BindingConfirmed::decode(e.payload);
      return {{"shot", d.shot.hex()}, {"patient", d.patient.hex()}};
    }
    if (e.name == PatientSick::kName) {
      auto d = PatientSick::decode(e.payload);
      return {{"shot", d.shot.hex()}, {"patient", d.patient.hex()}, {"infected_count", d.infected_count}};
    }
    if (e.name == TrialFinished::kName) {
      return {{"infected_count", TrialFinished::decode(e.payload).infected_count}};
    }
    if (e.name == TrialFinalized::kName) {
      auto d = TrialFinalized::decode(e.payload);
      nlohmann::json eff = d.efficiency.percent ? nlohmann::json(*d.efficiency.percent) : nlohmann::json();
      return {{"ar0", d.ar0}, {"ar1", d.ar1}, {"efficiency", eff}, {"approved", d.approved}};
    }
  } catch (const DecodeError&) {
  }
  return {{"payload_hex", to_hex(e.payload)}};
}

}  // namespace events

}  // namespace vaccsc::trial
