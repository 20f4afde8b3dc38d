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

// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>

#include "cli.hpp"
#include "support.hpp"
#include "vaccsc/log_file.hpp"
#include "vaccsc/scenario.hpp"

using namespace vaccsc;
using actors::TrialWorld;
using commitment::ShotContent;
using trial::TrialPhase;
namespace fs = std::filesystem;

namespace {

struct Verdict {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
};

using Clock = std::chrono::steady_clock;

bool report(int id, const std::string& title, double budget_s, const std::function<void(Verdict&)>& body) {
  Verdict v;
  auto start = Clock::now();
  try {
    body(v);
  } catch (const std::exception& e) {
    v.pass = false;
    v.detail << " [exception: " << e.what() << "]";
  }
  double elapsed = std::chrono::duration<double>(Clock::now() - start).count();
  if (elapsed > budget_s) {
    v.pass = false;
    v.detail << " [over runtime budget " << budget_s << " s]";
  }
  std::printf("%s %d %s:%s (%.1f s)\n", v.pass ? "PASS" : "FAIL", id, title.c_str(), v.detail.str().c_str(),
              elapsed);
  std::fflush(stdout);
  return v.pass;
}

coinflip::RandomContribution draw(Rng& rng) { return {rng.next_u64(), commitment::generate_nonce(rng)}; }

double chi_square(const std::vector<std::uint64_t>& h) {
  double total = 0;
  for (auto x : h) total += static_cast<double>(x);
  const double expected = total / static_cast<double>(h.size());
  double chi = 0;
  for (auto x : h) chi += (static_cast<double>(x) - expected) * (static_cast<double>(x) - expected) / expected;
  return chi;
}

// -------------------------------------------------------------------------
// 1

void worked_example(Verdict& v) {
  auto l = testing::worked_example_ledger();
  auto outcome = l.query("outcome");
  double ve = l.query("efficiency").get<double>();
  v.require(outcome["ar0"] == 120 && outcome["ar1"] == 44, "sick split is 120/44");
  v.require(std::abs(ve - 63.33) <= 0.01, "efficiency within 63.33 +/- 0.01");
  v.detail << " ar0=" << outcome["ar0"] << " ar1=" << outcome["ar1"] << " efficiency view " << ve;
}

// -------------------------------------------------------------------------
// 2

void commitment_conformance(Verdict& v) {
  auto vectors = commitment::golden_vectors_from_json(testing::load_data("commitment_vectors.json"));
  std::size_t golden_ok = 0;
  for (const auto& g : vectors) golden_ok += commitment::verify_opening(g.expected, {g.content, g.nonce});
  v.require(golden_ok == vectors.size(), "all golden vectors verify");

  Rng rng(2002);
  std::size_t false_accept = 0, flipped_content = 0, flipped_nonce = 0;
  const int trials = 10000;
  for (int i = 0; i < trials; ++i) {
    commitment::Opening o{rng.bernoulli(0.5) ? ShotContent::Vaccine : ShotContent::Placebo,
                          commitment::generate_nonce(rng)};
    auto c = commitment::commit(o);
    // Binding: a second, different opening must not verify.
    commitment::Opening other{rng.bernoulli(0.5) ? ShotContent::Vaccine : ShotContent::Placebo,
                              commitment::generate_nonce(rng)};
    if (other != o && commitment::verify_opening(c, other)) ++false_accept;

    auto fc = o;
    fc.content = o.content == ShotContent::Vaccine ? ShotContent::Placebo : ShotContent::Vaccine;
    flipped_content += commitment::verify_opening(c, fc);
    auto fn = o;
    fn.nonce.bytes[rng.uniform_below(32)] ^= static_cast<std::uint8_t>(1u << rng.uniform_below(8));
    flipped_nonce += commitment::verify_opening(c, fn);
  }
  v.require(false_accept == 0, "zero false acceptances");
  v.require(flipped_content == 0 && flipped_nonce == 0, "flipped reveals rejected");
  v.detail << " golden " << golden_ok << "/" << vectors.size() << ", " << trials
           << " binding trials: false accepts " << false_accept << ", flipped-content accepted "
           << flipped_content << ", flipped-nonce accepted " << flipped_nonce;
}

// -------------------------------------------------------------------------
// 3

void coinflip_fairness(Verdict& v) {
  constexpr double kCritical = 16.812;  // chi-square, 6 dof, 0.99 quantile
  for (auto adversary : {actors::SelectionAdversary::Constant, actors::SelectionAdversary::AdaptiveCommit}) {
    auto h = actors::adversarial_selection_histogram(adversary, 7, 70000, 3003);
    double chi = chi_square(h);
    const char* name = adversary == actors::SelectionAdversary::Constant ? "constant" : "adaptive";
    v.require(chi < kCritical, std::string(name) + " adversary chi-square below 16.812");
    v.detail << " " << name << " chi2=" << std::fixed;
    v.detail.precision(3);
    v.detail << chi;
  }
  v.detail << " (critical 16.812, count 7, 70000 draws each)";
}

// -------------------------------------------------------------------------
// 4

void honest_recovery(Verdict& v) {
  auto scenario = actors::load_scenario(testing::scenario_path("honest_pfizer_like.json"));
  v.require(scenario.params.num_participants == 2000 && scenario.params.infected_threshold == 164 &&
                scenario.disease.p_control == 0.10 && scenario.disease.p_vaccine == 0.03,
            "scenario parameters");
  std::size_t exact = 0, finalized = 0;
  double sum = 0;
  const std::uint64_t seeds = 200;
  for (std::uint64_t seed = 1; seed <= seeds; ++seed) {
    auto r = actors::run_scenario(scenario.params, scenario.disease, {}, seed);
    if (r.status != actors::TrialStatus::Finalized) continue;
    ++finalized;
    const auto& o = *r.ledger_outcome;
    exact += o.ar0 == r.truthful_ar0 && o.ar1 == r.truthful_ar1 && o.efficiency == r.truthful_efficiency;
    sum += o.efficiency.percent.value_or(0.0);
  }
  const double mean = finalized ? sum / static_cast<double>(finalized) : 0.0;
  const double model = *scenario.disease.model_efficiency().percent;
  v.require(finalized == seeds, "every run finalized");
  v.require(exact == seeds, "ledger equals ground-truth efficiency in every run");
  v.require(std::abs(mean - model) <= 8.0, "mean within 8 pp of model value");
  v.detail << " " << seeds << " seeds, exact " << exact << "/" << seeds << ", mean ledger efficiency " << mean
           << "% vs model " << model << "%";
}

// -------------------------------------------------------------------------
// 5

actors::StrategySet developer(actors::Behavior b) {
  actors::StrategySet s;
  s.name = "adversary";
  s.developer.behavior = b;
  return s;
}

void adversary_suite(Verdict& v) {
  auto params = testing::small_params(400, 40);
  auto disease = testing::disease(0.5, 0.15);
  const std::uint64_t seeds = 20;

  // (a) forged controls
  std::size_t attempts = 0, rejected = 0, logged = 0, untouched = 0, finalized_truthfully = 0;
  for (std::uint64_t seed = 1; seed <= seeds; ++seed) {
    auto r = actors::run_scenario(params, disease, developer(actors::DeveloperForgeControls{3}), seed);
    for (const auto& a : r.forge_evidence->attempts) {
      ++attempts;
      rejected += a.rejection_code == "BadOpening" || a.rejection_code == "NotPlacebo";
      logged += a.logged_as_rejection;
      untouched += a.state_unchanged;
    }
    finalized_truthfully += r.ledger_outcome && r.ledger_outcome->efficiency == r.truthful_efficiency;
  }
  v.require(attempts == 3 * seeds, "forge attempts made");
  v.require(rejected == attempts && logged == attempts && untouched == attempts,
            "every forge rejected atomically and logged");
  v.detail << " (a) " << rejected << "/" << attempts << " forged reveals rejected, " << logged << " logged, "
           << untouched << " left state unchanged;";

  // (b) omitted controls
  v.detail << " (b)";
  for (double fraction : {0.1, 0.25, 0.5}) {
    std::size_t lower = 0;
    for (std::uint64_t seed = 1; seed <= seeds; ++seed) {
      auto r = actors::run_scenario(params, disease, developer(actors::DeveloperOmitControls{fraction}), seed);
      const auto& ledger_ve = r.ledger_outcome->efficiency;
      // An undefined efficiency (every control omitted) never approves, so
      // it counts as lower.
      bool is_lower = r.truthful_efficiency.defined() &&
                      (!ledger_ve.defined() || *ledger_ve.percent < *r.truthful_efficiency.percent);
      lower += is_lower;
    }
    v.require(lower == seeds, "omit " + std::to_string(fraction) + " lowers efficiency in every seed");
    v.detail << " omit " << fraction << ": " << lower << "/" << seeds << " lower;";
  }

  // (c) collusion
  const std::uint64_t runs = 1000;
  std::uint64_t hits = 0, vaccine = 0, visible = 0;
  double stock_ratio = 0;
  for (std::uint64_t seed = 1; seed <= runs; ++seed) {
    TrialWorld w(testing::small_params(20, 4), disease, {}, 50000 + seed);
    w.deploy();
    w.distribute();
    std::size_t stock = 0, stock_vaccine = 0;
    for (const auto& row : w.ground_truth()) {
      if (row.clinic != 0) continue;
      ++stock;
      stock_vaccine += row.opening.content == ShotContent::Vaccine;
    }
    stock_ratio += static_cast<double>(stock_vaccine) / static_cast<double>(stock);
    Rng pick(seed);
    auto out = w.collusion_attempt(0, 0, pick.uniform_below(stock));
    hits += out.hit();
    vaccine += out.content == ShotContent::Vaccine;
    visible += out.content_visible_on_ledger;
  }
  stock_ratio /= static_cast<double>(runs);
  const double got = static_cast<double>(vaccine) / static_cast<double>(runs);
  v.require(hits == runs, "colluders hit their index every time");
  v.require(std::abs(got - stock_ratio) <= 0.05, "vaccine share within 5 pp of stock ratio");
  v.require(visible == 0, "shot content never visible on the ledger");
  v.detail << " (c) hits " << hits << "/" << runs << ", vaccine share " << 100 * got << "% vs stock "
           << 100 * stock_ratio << "%";
}

// -------------------------------------------------------------------------
// 6

void audit_determinism(Verdict& v) {
  auto dir = fs::temp_directory_path() / "vaccsc_acceptance_audit";
  fs::remove_all(dir);
  std::ostringstream sink;
  std::size_t audited = 0, clean = 0, exact = 0;

  auto grid = actors::load_scenario(testing::scenario_path("adversary_grid.json"));
  for (const auto& s : grid.strategies) {
    auto run = actors::simulate(grid.params, grid.disease, s, 1);
    auto path = dir / (s.name + ".vlog");
    fs::create_directories(dir);
    ledger::write_file(path, ledger::encode_log(run.ledger));
    ++audited;
    clean += cli::cmd_audit(path, false, sink, sink) == cli::kExitOk;
    auto result = ledger::audit_log(ledger::read_file(path), trial::VaccineTrial::factory());
    exact += result.ok && result.replayed->state_bytes() == run.ledger.state_bytes();
  }
  v.require(clean == audited, "audit exits 0 on every emitted log");
  v.require(exact == audited, "replay reproduces the final state byte-exactly");

  // Exhaustive tampering on a smaller log.
  auto small = actors::simulate(testing::small_params(24, 6), testing::disease(0.5, 0.15), {}, 6);
  const auto bytes = ledger::encode_log(small.ledger);
  const auto factory = trial::VaccineTrial::factory();
  std::size_t flips = 0, flips_caught = 0;
  Rng rng(6006);
  for (std::size_t i = 0; i < bytes.size(); ++i) {
    auto copy = bytes;
    copy[i] ^= static_cast<std::uint8_t>(1 + rng.uniform_below(255));
    ++flips;
    flips_caught += !ledger::audit_log(copy, factory).ok;
  }

  // Record deletions, through the command on real files.
  std::size_t deletions = 0, deletions_caught = 0;
  std::size_t pos = 8;
  while (pos < bytes.size()) {
    std::uint32_t len = (std::uint32_t{bytes[pos]} << 24) | (std::uint32_t{bytes[pos + 1]} << 16) |
                        (std::uint32_t{bytes[pos + 2]} << 8) | bytes[pos + 3];
    std::size_t size = 4 + len + 32;
    Bytes cut(bytes.begin(), bytes.begin() + static_cast<std::ptrdiff_t>(pos));
    cut.insert(cut.end(), bytes.begin() + static_cast<std::ptrdiff_t>(pos + size), bytes.end());
    auto path = dir / "deleted.vlog";
    ledger::write_file(path, cut);
    ++deletions;
    deletions_caught += cli::cmd_audit(path, false, sink, sink) == cli::kExitAuditFailure;
    pos += size;
  }
  // A sample of the byte flips through the command as well.
  std::size_t cmd_flips = 0, cmd_caught = 0;
  for (std::size_t i = 0; i < bytes.size(); i += 97) {
    auto copy = bytes;
    copy[i] ^= 0x01;
    auto path = dir / "flipped.vlog";
    ledger::write_file(path, copy);
    ++cmd_flips;
    cmd_caught += cli::cmd_audit(path, false, sink, sink) == cli::kExitAuditFailure;
  }
  fs::remove_all(dir);
  v.require(flips_caught == flips && cmd_caught == cmd_flips, "every single-byte tamper detected");
  v.require(deletions_caught == deletions, "every record deletion exits 3");
  v.detail << " " << clean << "/" << audited << " logs audit clean, " << exact << " byte-exact; " << flips_caught
           << "/" << flips << " byte flips detected (" << cmd_caught << "/" << cmd_flips
           << " via command), " << deletions_caught << "/" << deletions << " deletions exit 3";
}

// -------------------------------------------------------------------------
// 7

enum class Role { Developer, Clinic, Patient, Outsider };

struct Snapshot {
  TrialPhase phase;
  TrialWorld world;
  std::map<std::uint64_t, std::pair<coinflip::RandomContribution, coinflip::RandomContribution>> flips;
};

// Builds one snapshot per phase, with open bindings at several stages in
// the Active one.
std::vector<Snapshot> phase_snapshots() {
  auto params = testing::small_params(12, 4);
  auto disease = testing::disease(0.5, 0.15);
  std::vector<Snapshot> out;
  Rng rng(7007);

  TrialWorld deployed(params, disease, {}, 7);
  deployed.deploy();
  out.push_back({TrialPhase::Deployed, deployed, {}});

  TrialWorld distributing = deployed;
  for (std::size_t i = 0; i < 5; ++i) {
    distributing.submit(distributing.developer(),
                        trial::calls::AssignShotToClinic{distributing.ground_truth()[i].commit,
                                                         distributing.clinic(i % 2).account.address});
  }
  out.push_back({TrialPhase::Distributing, distributing, {}});

  TrialWorld active = deployed;
  active.distribute();
  for (std::size_t i = 0; i < 3; ++i) active.enrol(i);
  Snapshot snap{TrialPhase::Active, active, {}};
  auto& w = snap.world;
  // Sessions for patients 3..6 at stages: begun, both committed, clinic revealed, complete-unconfirmed.
  for (std::size_t i = 3; i < 7; ++i) {
    auto& clinic = w.clinic(w.clinic_of_patient(i));
    auto& patient = w.patient(i);
    auto a = draw(rng);
    auto b = draw(rng);
    auto r = w.submit(clinic, trial::calls::BeginBinding{patient.account.address, a.commit()});
    auto id = trial::events::find<trial::events::BindingStarted>(std::get<ledger::Accepted>(r).events)->session;
    snap.flips[id] = {a, b};
    if (i >= 4) w.submit(patient, trial::calls::PatientCommit{id, b.commit()});
    if (i >= 5) w.submit(clinic, trial::calls::ClinicReveal{id, a});
    if (i >= 6) w.submit(patient, trial::calls::PatientReveal{id, b});
  }
  out.push_back(std::move(snap));

  TrialWorld pending = deployed;
  pending.distribute();
  pending.enrol_all();
  for (std::size_t i = 0; i < 4; ++i) pending.submit(pending.patient(i), trial::calls::ReportSick{});
  out.push_back({TrialPhase::RevealPending, pending, {}});

  TrialWorld finalized = pending;
  trial::calls::RevealControls reveal;
  for (const auto& row : finalized.ground_truth()) {
    if (finalized.contract().find_shot(row.commit)->got_sick && row.opening.content == ShotContent::Placebo) {
      reveal.entries.push_back(trial::calls::RevealEntry::from_opening(row.commit, row.opening));
    }
  }
  finalized.submit(finalized.developer(), reveal);
  out.push_back({TrialPhase::Finalized, finalized, {}});
  return out;
}

// The permission matrix, written independently of the contract: which role
// may call which method in which phase.
bool permitted(Role role, std::string_view method, TrialPhase phase) {
  using P = TrialPhase;
  if (method == "assign_shot_to_clinic") return role == Role::Developer && (phase == P::Deployed || phase == P::Distributing);
  if (method == "begin_binding") return role == Role::Clinic && phase == P::Active;
  if (method == "patient_commit" || method == "patient_reveal" || method == "confirm_binding" ||
      method == "report_sick") {
    return role == Role::Patient && phase == P::Active;
  }
  if (method == "clinic_reveal") return role == Role::Clinic && phase == P::Active;
  if (method == "abort_binding") return (role == Role::Clinic || role == Role::Patient) && phase == P::Active;
  if (method == "reveal_controls") return role == Role::Developer && phase == P::RevealPending;
  return false;
}

void access_fuzz(Verdict& v) {
  auto snapshots = phase_snapshots();
  for (const auto& s : snapshots) {
    if (s.world.contract().phase() != s.phase) throw std::logic_error("snapshot phase mismatch");
  }
  Rng rng(7777);
  Rng outsider_rng(7778);
  auto outsider = ledger::create_account(outsider_rng);
  const std::vector<std::string> methods{"assign_shot_to_clinic", "begin_binding", "patient_commit",
                                         "clinic_reveal", "patient_reveal", "abort_binding",
                                         "confirm_binding", "report_sick", "reveal_controls"};

  std::size_t probes = 0, accepted = 0, violations = 0, party_violations = 0;
  std::map<TrialPhase, std::size_t> accepted_by_phase;
  for (int i = 0; i < 10000; ++i) {
    auto& snap = snapshots[rng.uniform_below(snapshots.size())];
    auto& w = snap.world;
    const auto& c = w.contract();
    auto role = static_cast<Role>(rng.uniform_below(4));
    const auto& method = methods[rng.uniform_below(methods.size())];

    const ledger::KeyPair* keys = &outsider.keys;
    ledger::Address sender = outsider.address;
    if (role == Role::Developer) keys = &w.developer().account.keys;
    if (role == Role::Clinic) keys = &w.clinic(rng.uniform_below(2)).account.keys;
    if (role == Role::Patient) keys = &w.patient(rng.uniform_below(w.num_patients())).account.keys;
    sender = keys->address();

    const auto& rows = w.ground_truth();
    const auto& row = rows[rng.uniform_below(rows.size())];
    std::uint64_t session = snap.flips.empty() ? rng.uniform_below(4)
                                               : std::next(snap.flips.begin(), static_cast<std::ptrdiff_t>(
                                                     rng.uniform_below(snap.flips.size())))->first;
    auto flip = snap.flips.count(session) ? snap.flips[session] : std::pair{draw(rng), draw(rng)};

    Bytes payload;
    if (method == "assign_shot_to_clinic") {
      payload = trial::calls::AssignShotToClinic{row.commit, w.clinic(rng.uniform_below(2)).account.address}.encode();
    } else if (method == "begin_binding") {
      payload = trial::calls::BeginBinding{w.patient(7 + rng.uniform_below(5)).account.address,
                                           draw(rng).commit()}.encode();
    } else if (method == "patient_commit") {
      payload = trial::calls::PatientCommit{session, flip.second.commit()}.encode();
    } else if (method == "clinic_reveal") {
      payload = trial::calls::ClinicReveal{session, flip.first}.encode();
    } else if (method == "patient_reveal") {
      payload = trial::calls::PatientReveal{session, flip.second}.encode();
    } else if (method == "abort_binding") {
      payload = trial::calls::AbortBinding{session}.encode();
    } else if (method == "confirm_binding") {
      auto owned = c.shot_of_patient(sender);
      payload = trial::calls::ConfirmBinding{owned && rng.bernoulli(0.8) ? *owned : row.commit}.encode();
    } else if (method == "reveal_controls") {
      trial::calls::RevealControls reveal;
      for (const auto& r : rows) {
        if (c.find_shot(r.commit)->got_sick && r.opening.content == ShotContent::Placebo) {
          reveal.entries.push_back(trial::calls::RevealEntry::from_opening(r.commit, r.opening));
        }
      }
      payload = reveal.encode();
    }

    ledger::Ledger probe = w.ledger();
    auto result = probe.submit(ledger::sign_transaction(*keys, method, payload, probe.next_sequence(sender)));
    ++probes;
    if (!ledger::is_accepted(result)) continue;
    ++accepted;
    ++accepted_by_phase[snap.phase];
    if (!permitted(role, method, snap.phase)) ++violations;

    // Party-level checks for the session and shot methods.
    if (const auto* b = c.find_binding(session);
        method == "patient_commit" || method == "patient_reveal" || method == "clinic_reveal" ||
        method == "abort_binding") {
      bool ok = b != nullptr;
      if (ok && method == "clinic_reveal") ok = sender == b->clinic;
      if (ok && (method == "patient_commit" || method == "patient_reveal")) ok = sender == b->patient;
      if (ok && method == "abort_binding") ok = sender == b->clinic || sender == b->patient;
      party_violations += !ok;
    }
    if (method == "confirm_binding" || method == "report_sick") {
      party_violations += !c.shot_of_patient(sender);
    }
  }
  v.require(violations == 0, "no acceptance outside the permission matrix");
  v.require(party_violations == 0, "no acceptance by a non-party");
  v.require(accepted > 0, "fuzz reaches accepting paths");
  v.detail << " " << probes << " probes, " << accepted << " accepted (";
  for (const auto& [phase, n] : accepted_by_phase) v.detail << trial::to_string(phase) << " " << n << " ";
  v.detail << "), matrix violations " << violations << ", party violations " << party_violations;
}

// -------------------------------------------------------------------------
// 8

struct InvariantChecker {
  std::vector<trial::ShotRecord> prev;
  TrialPhase prev_phase = TrialPhase::Deployed;
  std::optional<trial::TrialOutcome> prev_outcome;
  std::size_t violations = 0;
  std::string first;

  void fail(const std::string& what) {
    if (violations++ == 0) first = what;
  }

  void check(const trial::VaccineTrial& c, std::uint64_t n, const std::vector<ledger::Address>& clinics) {
    const auto& shots = c.shots();
    if (shots.size() != n) fail("shot count changed");

    // Conservation.
    std::uint64_t sick = 0, assigned = 0, bound = 0, free_total = 0;
    std::set<ledger::Address> patients;
    for (const auto& s : shots) {
      sick += s.got_sick;
      assigned += s.clinic.has_value();
      if (s.patient) {
        ++bound;
        if (!patients.insert(*s.patient).second) fail("patient holds two shots");
        if (!s.clinic) fail("bound shot without clinic");
      }
      if (s.got_sick && !s.patient_confirmed) fail("sick without confirmed patient");
    }
    for (const auto& clinic : clinics) free_total += c.free_shots(clinic).size();
    if (free_total + bound != assigned) fail("free + bound != assigned");
    if (sick != c.infected_count()) fail("infected counter != sick shots");
    if (c.infected_count() > c.config().infected_threshold) fail("infections beyond threshold");
    if (c.phase() >= TrialPhase::RevealPending && c.infected_count() != c.config().infected_threshold) {
      fail("reveal phase before threshold");
    }
    if (c.outcome()) {
      if (c.outcome()->ar0 + c.outcome()->ar1 != c.infected_count()) fail("ar0 + ar1 != infected");
      std::uint64_t placebo = 0;
      for (const auto& s : shots) placebo += s.vaccine_type == trial::VaccineType::Placebo;
      if (placebo != c.outcome()->ar0) fail("ar0 != revealed placebo count");
    }

    // Write-once.
    if (!prev.empty()) {
      for (std::size_t i = 0; i < shots.size(); ++i) {
        const auto& a = prev[i];
        const auto& b = shots[i];
        if (a.commit != b.commit) fail("commitment rewritten");
        if (a.clinic && a.clinic != b.clinic) fail("clinic rewritten");
        if (a.patient && a.patient != b.patient) fail("patient rewritten");
        if (a.patient_confirmed && !b.patient_confirmed) fail("confirmation reverted");
        if (a.got_sick && !b.got_sick) fail("sickness reverted");
        if (a.vaccine_type != trial::VaccineType::Unknown && a.vaccine_type != b.vaccine_type) {
          fail("revealed type rewritten");
        }
        if (a.session && a.session != b.session) fail("binding transcript rewritten");
      }
    }
    if (c.phase() < prev_phase) fail("phase went backwards");
    if (prev_outcome && c.outcome() != prev_outcome) fail("outcome rewritten");
    prev = shots;
    prev_phase = c.phase();
    prev_outcome = c.outcome();
  }
};

void interleavings(Verdict& v) {
  const std::uint64_t runs = 1000;
  std::size_t violations = 0, rejected_valid = 0, transactions = 0, finalized = 0;
  std::string first;
  for (std::uint64_t seed = 1; seed <= runs; ++seed) {
    Rng rng(80000 + seed);
    auto params = testing::small_params(12, 4);
    params.num_clinics = 1 + rng.uniform_below(3);
    TrialWorld w(params, testing::disease(0.5, 0.15), {}, seed);
    w.deploy();
    std::vector<ledger::Address> clinics;
    for (std::size_t k = 0; k < params.num_clinics; ++k) clinics.push_back(w.clinic(k).account.address);
    InvariantChecker inv;
    auto step = [&](auto& actor, const auto& call) {
      auto r = w.submit(actor, call);
      ++transactions;
      if (!ledger::is_accepted(r)) {
        ++rejected_valid;
        if (first.empty()) first = "valid call rejected: " + std::get<ledger::Rejected>(r).reason.code;
      }
      inv.check(w.contract(), params.num_participants, clinics);
      return r;
    };

    // Random assignment order and clinic choice.
    std::vector<std::size_t> order(params.num_participants);
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    rng.shuffle(order);
    std::vector<std::size_t> stock(params.num_clinics, 0);
    for (auto row : order) {
      auto k = rng.uniform_below(params.num_clinics);
      ++stock[k];
      step(w.developer(), trial::calls::AssignShotToClinic{w.ground_truth()[row].commit, clinics[k]});
    }

    // Each patient walks begin -> commits -> reveals (random order) -> confirm,
    // interleaved with everyone else and with sickness reports.
    struct Walk {
      std::size_t clinic;
      int stage = 0;  // 0 idle, 1 begun, 2 committed, 3 one reveal, 4 bound, 5 confirmed, 6 sick
      bool clinic_first = true;
      std::uint64_t session = 0;
      coinflip::RandomContribution a, b;
    };
    std::vector<Walk> walks;
    std::vector<std::size_t> pending(params.num_clinics, 0);
    for (std::size_t k = 0, p = 0; k < params.num_clinics; ++k) {
      for (std::size_t j = 0; j < stock[k]; ++j, ++p) walks.push_back({k});
    }
    while (w.contract().phase() == TrialPhase::Active) {
      std::vector<std::size_t> movable;
      for (std::size_t i = 0; i < walks.size(); ++i) {
        if (walks[i].stage < 6) movable.push_back(i);
      }
      if (movable.empty()) break;
      auto i = movable[rng.uniform_below(movable.size())];
      auto& wk = walks[i];
      auto& clinic = w.clinic(wk.clinic);
      auto& patient = w.patient(i);
      switch (wk.stage) {
        case 0: {
          wk.a = draw(rng);
          wk.b = draw(rng);
          wk.clinic_first = rng.bernoulli(0.5);
          auto r = step(clinic, trial::calls::BeginBinding{patient.account.address, wk.a.commit()});
          if (ledger::is_accepted(r)) {
            wk.session = trial::events::find<trial::events::BindingStarted>(std::get<ledger::Accepted>(r).events)->session;
          }
          break;
        }
        case 1:
          step(patient, trial::calls::PatientCommit{wk.session, wk.b.commit()});
          break;
        case 2:
        case 3:
          if ((wk.stage == 2) == wk.clinic_first) {
            step(clinic, trial::calls::ClinicReveal{wk.session, wk.a});
          } else {
            step(patient, trial::calls::PatientReveal{wk.session, wk.b});
          }
          break;
        case 4:
          step(patient, trial::calls::ConfirmBinding{*w.contract().shot_of_patient(patient.account.address)});
          break;
        case 5:
          if (!rng.bernoulli(0.3)) continue;  // most patients stay healthy for a while
          step(patient, trial::calls::ReportSick{});
          break;
      }
      ++wk.stage;
    }

    if (w.contract().phase() == TrialPhase::RevealPending) {
      trial::calls::RevealControls reveal;
      for (const auto& row : w.ground_truth()) {
        if (w.contract().find_shot(row.commit)->got_sick && row.opening.content == ShotContent::Placebo &&
            rng.bernoulli(0.8)) {
          reveal.entries.push_back(trial::calls::RevealEntry::from_opening(row.commit, row.opening));
        }
      }
      step(w.developer(), reveal);
      finalized += w.contract().phase() == TrialPhase::Finalized;
    }
    violations += inv.violations;
    if (first.empty() && !inv.first.empty()) first = inv.first;
  }
  v.require(violations == 0, "conservation and write-once hold");
  v.require(rejected_valid == 0, "valid interleavings accepted");
  v.require(finalized == runs, "every interleaving finalized");
  v.detail << " " << runs << " interleavings, " << transactions << " transactions, " << finalized
           << " finalized, invariant violations " << violations << ", rejected valid calls " << rejected_valid;
  if (!first.empty()) v.detail << " (first: " << first << ")";
}

}  // namespace

int main() {
  bool ok = true;
  ok &= report(1, "worked example 120/44 -> 63.33%", 5, worked_example);
  ok &= report(2, "commitment conformance", 10, commitment_conformance);
  ok &= report(3, "coin-flip fairness vs adversarial counterpart", 30, coinflip_fairness);
  ok &= report(4, "end-to-end honest recovery (N=2000, 200 seeds)", 300, honest_recovery);
  ok &= report(5, "adversary suite", 300, adversary_suite);
  ok &= report(6, "audit determinism and tamper detection", 60, audit_determinism);
  ok &= report(7, "access-control fuzz", 60, access_fuzz);
  ok &= report(8, "conservation and write-once over random interleavings", 120, interleavings);
  std::printf("%s\n", ok ? "ALL CRITERIA PASS" : "SOME CRITERIA FAIL");
  return ok ? 0 : 1;
}
