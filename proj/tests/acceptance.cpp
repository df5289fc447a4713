// Copyright 2026 The SWLE Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


// swle_acceptance: one PASS/FAIL line per acceptance criterion.
//
//   swle_acceptance [--seeds K] [--presets DIR]
//
// Exit status is the number of failed criteria (0 when all pass).

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstring>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "support.hpp"
#include "swle/authenticator.hpp"
#include "swle/certificate.hpp"
#include "swle/reputation.hpp"
#include "swle/engine/election.hpp"
#include "swle/metrics/metrics.hpp"
#include "swle/sim/config.hpp"
#include "swle/sim/sweep.hpp"

namespace {

using namespace swle;
using Clock = std::chrono::steady_clock;

// Pinned tolerances.
constexpr double kBijectionSeconds = 5.0;
constexpr int kGapTrials = 100'000;
constexpr int kCertTrials = 10'000;
constexpr std::size_t kMinSeeds = 20;
constexpr double kSimMinutes = 10.0;
constexpr double kCase1SwleMaxPct = 3.0;
constexpr double kCase1RrLoPct = 5.0, kCase1RrHiPct = 8.0;
constexpr double kCase2SwleMaxPct = 10.0;
constexpr double kCase2RrLoPct = 16.0, kCase2RrHiPct = 21.0;
constexpr double kCase1MinRatio = 3.0;
constexpr double kFaultFreeLo = 0.95, kFaultFreeHi = 1.05;
constexpr double kSupSixteen = 15.4667;
constexpr double kSupTolerance = 1e-4;

int failures = 0;

void report(int id, bool ok, const std::string& detail) {
  std::printf("criterion %2d: %s  %s\n", id, ok ? "PASS" : "FAIL", detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* f, ...) __attribute__((format(printf, 1, 2)));
std::string fmt(const char* f, ...) {
  char buf[512];
  va_list ap;
  va_start(ap, f);
  std::vsnprintf(buf, sizeof buf, f, ap);
  va_end(ap);
  return buf;
}

void bijection() {
  const auto t0 = Clock::now();
  std::uint64_t bad = 0;
  for (std::uint32_t n : {4u, 7u, 10u, 16u, 100u}) {
    bad += testing::bijection_violations(n, Params::make(n).t_z, 3 * n);
  }
  const double s = seconds_since(t0);
  report(1, bad == 0 && s < kBijectionSeconds,
         fmt("violations=%llu time=%.3fs (limit %.0fs)", static_cast<unsigned long long>(bad), s,
             kBijectionSeconds));
}

void gap_bound() {
  std::mt19937_64 rng(2026);
  int bad = 0;
  for (int i = 0; i < kGapTrials; ++i) {
    const auto n = static_cast<std::uint32_t>(3 * (1 + rng() % 33) + 1);
    const std::uint64_t t_f = 1 + rng() % (5 * n);
    const auto p = Params::make(n, t_f);
    const View v = 1 + rng() % 1'000'000;
    if (target_view(v, p) - (v + 1) < p.t_z) ++bad;
  }
  report(2, bad == 0, fmt("triples=%d violations=%d", kGapTrials, bad));
}

// Event sequences with scores worked out by hand, in units of 1/n point.
void scoring() {
  int checks = 0;
  int bad = 0;
  auto expect = [&](const ReputationMatrix& m, std::vector<ScoreUnits> want) {
    ++checks;
    if (!std::equal(want.begin(), want.end(), m.scores().begin(), m.scores().end())) ++bad;
  };
  {
    ReputationMatrix m(Params::make(4), 0);
    expect(m, {4, 4, 4, 4});
    m.apply(LeaderEnteredView{1});
    expect(m, {4, 0, 4, 4});
    m.apply(ConsensusPromoters{{0, 1, 2}});
    expect(m, {5, 1, 5, 4});
    m.apply(ProposalFinalized{1});
    expect(m, {5, 5, 5, 4});
    m.apply(LeaderTimedOut{3});  // clamps at zero
    expect(m, {5, 5, 5, 0});
    m.apply(PeriodicNormalization{});
    expect(m, {9, 9, 9, 4});
    m.apply(LeaderEnteredView{0});
    expect(m, {5, 9, 9, 4});
  }
  {
    ReputationMatrix m(Params::make(4), 0);
    m.set_score(2, 2);  // half a point
    m.apply(LeaderTimedOut{2});
    expect(m, {4, 4, 0, 4});
    m.apply(ConsensusPromoters{{3}});
    expect(m, {4, 4, 0, 5});
  }
  {
    ReputationMatrix m(Params::make(7), 0);
    m.apply(LeaderTimedOut{2});
    m.apply(LeaderEnteredView{2});
    m.apply(PeriodicNormalization{});
    m.apply(ConsensusPromoters{{0, 1, 2, 3, 4}});
    expect(m, {15, 15, 8, 15, 15, 14, 14});
    m.apply(LeaderEnteredView{5});
    m.apply(LeaderTimedOut{5});
    m.apply(ProposalFinalized{5});
    expect(m, {15, 15, 8, 15, 15, 7, 14});
  }
  {
    // normalization fires on entering views that are multiples of theta
    const PermissiveAuthenticator auth;
    engine::SwleElection e(Params::make(4), 0, auth);
    e.on_enter(1, 2);
    e.advance_to(299);
    expect(*e.reputation(), {4, 4, 0, 4});
    e.advance_to(300);
    expect(*e.reputation(), {8, 8, 4, 8});
    e.advance_to(600);
    expect(*e.reputation(), {12, 12, 8, 12});
    engine::SwleElection short_period(Params::make(4, std::nullopt, 8), 0, auth);
    short_period.advance_to(24);
    expect(*short_period.reputation(), {16, 16, 16, 16});
  }
  report(3, bad == 0, fmt("sequences checked=%d mismatches=%d", checks, bad));
}

// Every single-field mutation of a certificate must be rejected.
std::vector<std::function<void(LeaderCertificate&)>> mutations(const Params& p) {
  auto vote = [](LeaderCertificate& c) -> VoteExtension& { return c.votes[c.votes.size() / 2]; };
  return {
      [=](LeaderCertificate& c) { vote(c).kind = vote(c).kind == ExtensionKind::Commit
                                                      ? ExtensionKind::ViewChange
                                                      : ExtensionKind::Commit; },
      [=](LeaderCertificate& c) { vote(c).view += 1; },
      [=](LeaderCertificate& c) { vote(c).determined_leader = (vote(c).determined_leader + 1) % p.n; },
      [=](LeaderCertificate& c) { vote(c).target_view += 1; },
      [=](LeaderCertificate& c) {
        auto& cand = vote(c).candidates;
        if (cand.size() > 1) {
          cand.pop_back();
        } else {
          cand.push_back((cand[0] + 1) % p.n);
        }
      },
      [=](LeaderCertificate& c) {
        auto& cand = vote(c).candidates;
        std::rotate(cand.begin(), cand.begin() + 1, cand.end());
      },
      [=](LeaderCertificate& c) { vote(c).voter = (vote(c).voter + 1) % p.n; },
      [=](LeaderCertificate& c) { vote(c).signature.bytes[7] ^= 0x20; },
      [=](LeaderCertificate& c) { c.target_view += 1; },
      [=](LeaderCertificate& c) {
        c.elected = c.elected ? std::optional<ReplicaId>((*c.elected + 1) % p.n) : std::optional<ReplicaId>(0);
      },
      [=](LeaderCertificate& c) { c.elected.reset(); },
      [=](LeaderCertificate& c) { c.votes.pop_back(); },
      [=](LeaderCertificate& c) { c.votes.back() = c.votes.front(); },
  };
}

void certificates() {
  const auto p = Params::make(16);
  const SimAuthenticator auth(99, p.n);
  const SimAuthenticator other(99, p.n);  // second verifier, separate instance
  const auto muts = mutations(p);
  std::mt19937_64 rng(17);
  int accept_fail = 0;
  int mutation_missed = 0;
  int disagreements = 0;
  int mutations_applied = 0;
  for (int i = 0; i < kCertTrials; ++i) {
    const View view = 1 + rng() % 100'000;
    const auto leader = static_cast<ReplicaId>(rng() % p.n);
    const auto kind = rng() % 2 ? ExtensionKind::Commit : ExtensionKind::ViewChange;
    auto votes = testing::random_vote_set(rng, p, view, leader, auth, kind);
    const View target = target_view(view, p);
    const auto cert = package_certificate(votes, target, p, auth);
    if (verify_certificate(cert, leader, view + 1, p, auth) != CertVerdict::Accept) ++accept_fail;
    if (verify_certificate(cert, leader, view + 1, p, other) != CertVerdict::Accept) ++accept_fail;
    const auto again = select_leader(cert.votes, target, p);
    if (again != cert.elected || testing::reference_select(votes, target, p.n, p.f) != cert.elected) {
      ++disagreements;
    }
    for (std::size_t m = 0; m < muts.size(); ++m) {
      auto bad = cert;
      muts[m](bad);
      if (bad == cert) continue;
      ++mutations_applied;
      if (verify_certificate(bad, leader, view + 1, p, auth) == CertVerdict::Accept) ++mutation_missed;
    }
    if (verify_certificate(cert, (leader + 1) % p.n, view + 1, p, auth) == CertVerdict::Accept) {
      ++mutation_missed;
    }
    if (verify_certificate(cert, leader, view + 2, p, auth) == CertVerdict::Accept) ++mutation_missed;
  }
  report(4, accept_fail == 0 && mutation_missed == 0 && disagreements == 0,
         fmt("sets=%d accept_failures=%d mutations=%d accepted_mutations=%d disagreements=%d",
             kCertTrials, accept_fail, mutations_applied, mutation_missed, disagreements));
}

struct Scenario {
  std::string name;
  sim::ScenarioConfig config;
  std::vector<sim::SweepResult> swle;
  std::vector<sim::SweepResult> rr;
};

double mean_of(const std::vector<sim::SweepResult>& rs, double metrics::Summary::*field) {
  double s = 0;
  for (const auto& r : rs) s += r.summary.*field;
  return rs.empty() ? 0 : s / static_cast<double>(rs.size());
}

double max_of(const std::vector<sim::SweepResult>& rs, double metrics::Summary::*field) {
  double m = 0;
  for (const auto& r : rs) m = std::max(m, r.summary.*field);
  return m;
}

double min_of(const std::vector<sim::SweepResult>& rs, double metrics::Summary::*field) {
  double m = 1e300;
  for (const auto& r : rs) m = std::min(m, r.summary.*field);
  return m;
}

}  // namespace

int main(int argc, char** argv) {
  std::size_t seeds = kMinSeeds;
  std::string preset_dir = SWLE_PRESET_DIR;
  for (int i = 1; i + 1 < argc; i += 2) {
    if (std::strcmp(argv[i], "--seeds") == 0) seeds = std::stoul(argv[i + 1]);
    if (std::strcmp(argv[i], "--presets") == 0) preset_dir = argv[i + 1];
  }

  bijection();
  gap_bound();
  scoring();
  certificates();

  // Simulation criteria share one sweep.
  std::vector<Scenario> scenarios;
  for (const char* name : {"case1", "case2", "case3", "fault_free", "adversarial_pregst"}) {
    Scenario s;
    s.name = name;
    s.config = sim::load_config(preset_dir + "/" + name + ".json");
    scenarios.push_back(std::move(s));
  }
  std::vector<sim::ScenarioConfig> jobs;
  std::vector<std::pair<std::size_t, bool>> owner;  // scenario index, is round-robin
  for (std::size_t i = 0; i < scenarios.size(); ++i) {
    auto cfg = scenarios[i].config;
    cfg.mechanism = engine::Mechanism::Swle;
    for (auto& j : sim::seed_range(cfg, 1, seeds)) {
      jobs.push_back(j);
      owner.emplace_back(i, false);
    }
    if (scenarios[i].name == "case1" || scenarios[i].name == "case2" ||
        scenarios[i].name == "fault_free") {
      cfg.mechanism = engine::Mechanism::RoundRobin;
      for (auto& j : sim::seed_range(cfg, 1, seeds)) {
        jobs.push_back(j);
        owner.emplace_back(i, true);
      }
    }
  }
  const auto t0 = Clock::now();
  const auto results = sim::run_sweep_parallel(jobs);
  const double sweep_s = seconds_since(t0);
  for (std::size_t k = 0; k < results.size(); ++k) {
    auto& s = scenarios[owner[k].first];
    (owner[k].second ? s.rr : s.swle).push_back(results[k]);
  }
  auto by_name = [&](const std::string& n) -> Scenario& {
    return *std::find_if(scenarios.begin(), scenarios.end(),
                         [&](const Scenario& s) { return s.name == n; });
  };

  // 5: safety and uniqueness
  {
    std::size_t violations = 0;
    std::size_t errors = 0;
    std::size_t short_runs = 0;
    std::size_t swle_runs = 0;
    std::string first_error;
    for (const auto& r : results) {
      if (r.invariant_violation) ++violations;
      if (!r.ok && !r.invariant_violation) ++errors;
      if (!r.ok && first_error.empty()) first_error = r.error;
      if (r.ok && !r.horizon_reached) ++short_runs;
      if (r.mechanism == engine::Mechanism::Swle) ++swle_runs;
    }
    const bool n16 = std::all_of(scenarios.begin(), scenarios.end(), [](const Scenario& s) {
      return s.config.n == 16 && s.config.views == 2000;
    });
    const double minutes = sweep_s / 60.0;
    report(5,
           seeds >= kMinSeeds && n16 && violations == 0 && errors == 0 && short_runs == 0 &&
               minutes < kSimMinutes,
           fmt("swle runs=%zu (%zu seeds x 5 scenarios, n=16, 2000 views) total runs=%zu "
               "invariant violations=%zu errors=%zu incomplete=%zu time=%.1fs%s%s",
               swle_runs, seeds, results.size(), violations, errors, short_runs, sweep_s,
               first_error.empty() ? "" : " first error: ", first_error.c_str()));
  }

  // 6: timely finalization
  {
    std::size_t missing = 0;
    std::size_t runs = 0;
    View worst_gap = 0;
    for (const auto& s : scenarios) {
      for (const auto& r : s.swle) {
        if (!r.ok) continue;
        ++runs;
        if (!r.summary.v_c || !r.summary.gst_view) {
          ++missing;
          continue;
        }
        if (s.name == "adversarial_pregst") {
          worst_gap = std::max(worst_gap, *r.summary.v_c - *r.summary.gst_view);
        }
      }
    }
    const auto p = by_name("adversarial_pregst").config.params();
    const View bound = p.theta + 2 * p.n;
    report(6, runs > 0 && missing == 0 && worst_gap <= bound,
           fmt("runs=%zu without finite v_c=%zu; adversarial pre-GST max(v_c - gst_view)=%llu "
               "(bound %llu)",
               runs, missing, static_cast<unsigned long long>(worst_gap),
               static_cast<unsigned long long>(bound)));
  }

  // 7: faulty-leader frequency, checked per seed
  {
    const auto& c1 = by_name("case1");
    const auto& c2 = by_name("case2");
    const auto pct = &metrics::Summary::faulty_leader_pct;
    const bool ok = max_of(c1.swle, pct) < kCase1SwleMaxPct && min_of(c1.rr, pct) >= kCase1RrLoPct &&
                    max_of(c1.rr, pct) <= kCase1RrHiPct && max_of(c2.swle, pct) < kCase2SwleMaxPct &&
                    min_of(c2.rr, pct) >= kCase2RrLoPct && max_of(c2.rr, pct) <= kCase2RrHiPct;
    report(7, ok,
           fmt("case1 swle mean=%.2f%% max=%.2f%% (<%.0f%%), rr mean=%.2f%% range [%.2f, %.2f] "
               "(in [%.0f, %.0f]); case2 swle mean=%.2f%% max=%.2f%% (<%.0f%%), rr mean=%.2f%% "
               "range [%.2f, %.2f] (in [%.0f, %.0f])",
               mean_of(c1.swle, pct), max_of(c1.swle, pct), kCase1SwleMaxPct, mean_of(c1.rr, pct),
               min_of(c1.rr, pct), max_of(c1.rr, pct), kCase1RrLoPct, kCase1RrHiPct,
               mean_of(c2.swle, pct), max_of(c2.swle, pct), kCase2SwleMaxPct, mean_of(c2.rr, pct),
               min_of(c2.rr, pct), max_of(c2.rr, pct), kCase2RrLoPct, kCase2RrHiPct));
  }

  // 8: throughput ratios of seed-averaged throughput
  {
    const auto tput = &metrics::Summary::throughput_avg;
    const auto& c1 = by_name("case1");
    const auto& ff = by_name("fault_free");
    const double r1 = mean_of(c1.swle, tput) / mean_of(c1.rr, tput);
    const double rf = mean_of(ff.swle, tput) / mean_of(ff.rr, tput);
    report(8, r1 >= kCase1MinRatio && rf >= kFaultFreeLo && rf <= kFaultFreeHi,
           fmt("case1 swle/rr=%.3f (>= %.1f) [%.0f vs %.0f op/s]; fault-free swle/rr=%.4f "
               "(in [%.2f, %.2f])",
               r1, kCase1MinRatio, mean_of(c1.swle, tput), mean_of(c1.rr, tput), rf,
               kFaultFreeLo, kFaultFreeHi));
  }

  // 9: gamma bracket on cases 1 and 2
  {
    std::size_t runs = 0;
    std::size_t outside = 0;
    std::size_t windows = 0;
    std::size_t windows_below = 0;
    double lo = 1e300;
    double hi = 0;
    double gamma_t = 0;
    double sup = 0;
    double n = 0;
    for (const char* name : {"case1", "case2"}) {
      for (const auto& r : by_name(name).swle) {
        if (!r.ok || !r.summary.gamma) {
          ++outside;
          continue;
        }
        const auto& g = *r.summary.gamma;
        ++runs;
        gamma_t = g.gamma_t;
        sup = g.sup;
        n = static_cast<double>(g.window);
        lo = std::min(lo, g.mean_c);
        hi = std::max(hi, g.mean_c);
        if (g.mean_c < g.gamma_t || g.mean_c > n) ++outside;
        windows += g.counts.size();
        for (auto c : g.counts) windows_below += c < g.gamma_t;
      }
    }
    const bool sup_ok = std::fabs(sup - kSupSixteen) < kSupTolerance;
    report(9, runs > 0 && outside == 0 && sup_ok,
           fmt("runs=%zu mean C in [%.3f, %.3f], bracket [gammaT=%.0f, n=%.0f], runs outside=%zu; "
               "sup=%.4f; individual windows below gammaT: %zu of %zu",
               runs, lo, hi, gamma_t, n, outside, sup, windows_below, windows));
  }

  // 10: determinism, rerun the first seed of every scenario and mechanism
  {
    std::size_t compared = 0;
    std::size_t mismatched = 0;
    std::vector<sim::ScenarioConfig> again;
    std::vector<const sim::SweepResult*> ref;
    for (std::size_t k = 0; k < results.size(); ++k) {
      if (jobs[k].seed != 1) continue;
      again.push_back(jobs[k]);
      ref.push_back(&results[k]);
    }
    const auto rerun = sim::run_sweep_serial(again);
    for (std::size_t k = 0; k < rerun.size(); ++k) {
      ++compared;
      if (!(rerun[k] == *ref[k])) ++mismatched;
    }
    report(10, compared > 0 && mismatched == 0,
           fmt("reruns=%zu mismatched outputs=%zu", compared, mismatched));
  }

  std::printf("%d of 10 criteria failed\n", failures);
  return failures;
}
