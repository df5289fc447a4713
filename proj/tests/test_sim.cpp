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


#include <gtest/gtest.h>

#include <memory>
#include <numeric>

#include "swle/engine/messages.hpp"
#include "swle/target_view.hpp"
#include "swle/metrics/report_io.hpp"
#include "swle/sim/config.hpp"
#include "swle/sim/network.hpp"
#include "swle/sim/simulator.hpp"
#include "swle/sim/strategy.hpp"

namespace swle::sim {
namespace {

ScenarioConfig small(std::uint64_t views = 200, std::uint64_t seed = 7) {
  auto c = parse_config_text(R"({"n": 4, "f": 1, "views": 200, "jitter_ms": 0.3})");
  c.views = views;
  c.seed = seed;
  return c;
}

std::string outputs(const SimulationReport& r) {
  return metrics::views_csv(r.records) + report_json(r).dump();
}

TEST(Simulate, ByteIdenticalReruns) {
  const auto a = simulate(small());
  const auto b = simulate(small());
  EXPECT_EQ(outputs(a), outputs(b));
  EXPECT_EQ(a.events, b.events);
  EXPECT_TRUE(a.horizon_reached);
  EXPECT_EQ(a.records.size(), 200u);
}

TEST(Simulate, SeedChangesTiming) {
  EXPECT_NE(outputs(simulate(small(200, 7))), outputs(simulate(small(200, 8))));
}

TEST(Simulate, FaultFreeFinalizesEveryView) {
  const auto r = simulate(small());
  for (const auto& rec : r.records) {
    EXPECT_TRUE(rec.finalized) << rec.view;
    EXPECT_TRUE(rec.unified);
    EXPECT_TRUE(rec.leader_correct);
    EXPECT_EQ(rec.ops, 400u);
  }
  EXPECT_EQ(r.summary.faulty_leader_pct, 0.0);
}

TEST(Simulate, ReputationBuilderLeaderViewsTimeOut) {
  auto c = small(64);
  c.mechanism = engine::Mechanism::RoundRobin;
  c.faults.push_back({3, FaultKind::Byzantine, Strategy::ReputationBuilder, 1});
  validate(c);
  const auto r = simulate(c);
  for (const auto& rec : r.records) {
    EXPECT_EQ(rec.timed_out, rec.view % 4 == 3) << rec.view;
  }
  EXPECT_DOUBLE_EQ(r.summary.faulty_leader_pct, 25.0);
}

TEST(Simulate, MuteEarnsNoPromoterCredit) {
  auto mute = small(200);
  mute.faults.push_back({3, FaultKind::Byzantine, Strategy::Mute, 1});
  auto builder = small(200);
  builder.faults.push_back({3, FaultKind::Byzantine, Strategy::ReputationBuilder, 1});
  const auto m = simulate(mute);
  const auto b = simulate(builder);
  ScoreUnits credit_mute = 0;
  ScoreUnits credit_builder = 0;
  for (ReplicaId r = 0; r < 3; ++r) {
    credit_mute += m.final_scores[r][3];
    credit_builder += b.final_scores[r][3];
  }
  EXPECT_EQ(credit_mute, 0);
  EXPECT_GT(credit_builder, 0);
  EXPECT_TRUE(m.final_scores[3].empty());
}

TEST(Simulate, CrashedReplicaStopsAtFromView) {
  auto c = small(100);
  c.mechanism = engine::Mechanism::RoundRobin;
  c.faults.push_back({2, FaultKind::Crash, Strategy::Mute, 50});
  const auto r = simulate(c);
  for (const auto& rec : r.records) {
    if (rec.view < 50) {
      EXPECT_TRUE(rec.finalized) << rec.view;
    } else if (rec.view % 4 == 2) {
      EXPECT_TRUE(rec.timed_out) << rec.view;
    }
  }
}

TEST(Simulate, InjectedDoubleFinalization) {
  auto fake = std::make_shared<engine::Proposal>();
  fake->view = 1;
  fake->proposer = 1;
  fake->batch = 1;
  fake->justify = engine::QuorumCertificate::genesis();
  fake->digest = fake->compute_digest();
  engine::QuorumCertificate qc{1, engine::Phase::Commit, fake->digest, {{0, {}}, {1, {}}, {2, {}}}};
  SimOptions opt;
  opt.permissive_auth = true;
  opt.injections.push_back(
      {0, 0, std::make_shared<const engine::Message>(engine::Decide{qc, fake, 1})});
  try {
    simulate(small(20), opt);
    FAIL() << "expected an invariant violation";
  } catch (const InvariantViolation& e) {
    EXPECT_FALSE(e.trace().empty());
  }
}

// Two view-2 proposals from different replicas, each with a certificate of
// view-change votes naming its own proposer. Only possible with signature
// checks disabled.
TEST(Simulate, InjectedConflictingClaims) {
  auto cfg = small(20);
  cfg.faults.push_back({1, FaultKind::Byzantine, Strategy::Mute, 1});
  const auto params = cfg.params();
  const PermissiveAuthenticator auth;
  auto forged = [&](ReplicaId proposer) {
    std::vector<VoteExtension> votes;
    for (ReplicaId v : {0u, 2u, 3u}) {
      votes.push_back(make_extension(ExtensionKind::ViewChange, 1, proposer,
                                     target_view(1, params), {0, 2, 3}, v, auth));
    }
    engine::Proposal p;
    p.view = 2;
    p.proposer = proposer;
    p.batch = 1;
    p.justify = engine::QuorumCertificate::genesis();
    p.leader_cert = package_certificate(votes, target_view(1, params), params, auth);
    p.digest = p.compute_digest();
    return std::make_shared<const engine::Message>(std::move(p));
  };
  SimOptions opt;
  opt.permissive_auth = true;
  opt.injections.push_back({0, 2, forged(0)});
  opt.injections.push_back({0, 0, forged(3)});
  try {
    simulate(cfg, opt);
    FAIL() << "expected an invariant violation";
  } catch (const InvariantViolation& e) {
    EXPECT_NE(std::string(e.what()).find("claims"), std::string::npos) << e.what();
  }
}

TEST(Simulate, ForgeriesRejectedWithRealSignatures) {
  auto fake = std::make_shared<engine::Proposal>();
  fake->view = 1;
  fake->proposer = 1;
  fake->justify = engine::QuorumCertificate::genesis();
  fake->digest = fake->compute_digest();
  engine::QuorumCertificate qc{1, engine::Phase::Commit, fake->digest, {{0, {}}, {1, {}}, {2, {}}}};
  SimOptions opt;
  opt.injections.push_back(
      {0, 0, std::make_shared<const engine::Message>(engine::Decide{qc, fake, 1})});
  EXPECT_NO_THROW(simulate(small(20), opt));
}

TEST(Network, PostGstDeliveryWithinDelta) {
  auto c = small();
  c.gst_us = 1'000'000;
  c.delta_us = 5'000;
  c.jitter_us = 20'000;
  c.pre_gst.kind = PreGstPolicy::Kind::Random;
  c.pre_gst.max_us = 10'000'000;
  NetworkModel net(c, 1);
  for (SimTime t = 0; t < 3'000'000; t += 997) {
    const auto from = static_cast<ReplicaId>(t % 4);
    const auto to = static_cast<ReplicaId>((t / 4) % 4);
    const auto at = net.delivery_time(from, to, 5000, t, 100);
    ASSERT_GE(at, t);
    ASSERT_LE(at, std::max(t, c.gst_us) + c.delta_us) << t;
  }
}

TEST(Network, TargetingDelaysOnlyVictims) {
  auto c = small();
  c.gst_us = 10'000'000;
  c.pre_gst.kind = PreGstPolicy::Kind::Targeting;
  c.pre_gst.victims = {1};
  c.pre_gst.delay_us = 2'000'000;
  c.jitter_us = 0;
  NetworkModel net(c, 1);
  EXPECT_EQ(net.delivery_time(0, 2, 0, 0, 0), 1000);
  EXPECT_EQ(net.delivery_time(1, 2, 0, 0, 0), 2'001'000);
  EXPECT_EQ(net.delivery_time(1, 2, 0, 9'000'000, 0), c.gst_us + c.delta_us);
  EXPECT_EQ(net.delivery_time(1, 2, 0, 11'000'000, 0), 11'001'000);
  EXPECT_EQ(net.delivery_time(1, 1, 0, 5, 0), 5);
}

TEST(Strategy, FilterRules) {
  const FaultSpec rb{0, FaultKind::Byzantine, Strategy::ReputationBuilder, 1};
  const FaultSpec crash{0, FaultKind::Crash, Strategy::Mute, 10};
  EXPECT_EQ(processing_delay(&rb, 100), 0);
  EXPECT_EQ(processing_delay(nullptr, 100), 100);
  EXPECT_TRUE(processes_input(&crash, 9));
  EXPECT_FALSE(processes_input(&crash, 10));
  EXPECT_TRUE(processes_input(nullptr, 10));

  engine::Proposal p;
  engine::Vote v;
  std::vector<Outbound> out{{std::nullopt, std::make_shared<const engine::Message>(p)},
                            {1, std::make_shared<const engine::Message>(v)}};
  const auto kept = byzantine_step(rb, 5, out);
  ASSERT_EQ(kept.size(), 1u);
  EXPECT_TRUE(std::holds_alternative<engine::Vote>(*kept[0].msg));
  const FaultSpec mute{0, FaultKind::Byzantine, Strategy::Mute, 1};
  EXPECT_TRUE(byzantine_step(mute, 5, out).empty());
}

TEST(Config, Errors) {
  EXPECT_THROW(parse_config_text("{"), ConfigError);
  EXPECT_THROW(parse_config_text(R"({"n": 4, "colour": 1})"), ConfigError);
  EXPECT_THROW(parse_config_text(R"({"n": 5})"), ConfigError);
  EXPECT_THROW(parse_config_text(R"({"n": 4, "f": 2})"), ConfigError);
  EXPECT_THROW(parse_config_text(R"({"n": 4, "mechanism": "raft"})"), ConfigError);
  EXPECT_THROW(parse_config_text(R"({"n": 4, "views": 0})"), ConfigError);
  EXPECT_THROW(parse_config_text(R"({"n": 4, "faults": [
      {"replica": 0, "kind": "crash"}, {"replica": 1, "kind": "crash"}]})"),
               ConfigError);
  EXPECT_THROW(parse_config_text(R"({"n": 4, "faults": [{"replica": 9, "kind": "crash"}]})"),
               ConfigError);
  EXPECT_THROW(parse_config_text(R"({"n": 4, "faults": [{"replica": 0, "kind": "sleepy"}]})"),
               ConfigError);
  EXPECT_THROW(parse_config_text(R"({"n": 4, "latency_matrix": [[1, 2], [2, 1]]})"), ConfigError);
  EXPECT_THROW(load_config("/nonexistent/swle.json"), ConfigError);
}

TEST(Config, Parses) {
  const auto c = parse_config_text(R"({
    "name": "x", "n": 7, "f": 2, "views": 50, "seed": 3, "gst_ms": 1000,
    "delta_ms": 20, "timeout_ms": 800, "batch_size": 10, "payload_bytes": 16,
    "mechanism": "roundrobin", "theta_override": 70, "t_f": 13,
    "faults": [{"replica": 2, "kind": "byzantine", "strategy": "silent_leader"}],
    "latency_groups": {"matrix_ms": [[1, 5], [5, 1]]},
    "pre_gst": {"policy": "targeting", "victims": [0], "delay_ms": 500}})");
  EXPECT_EQ(c.n, 7u);
  EXPECT_EQ(c.gst_us, 1'000'000);
  EXPECT_EQ(c.timeout_us, 800'000);
  EXPECT_EQ(c.mechanism, engine::Mechanism::RoundRobin);
  EXPECT_EQ(c.params().theta, 70u);
  EXPECT_EQ(c.params().t_z, 14u);
  ASSERT_EQ(c.faults.size(), 1u);
  EXPECT_EQ(c.faults[0].strategy, Strategy::SilentLeader);
  EXPECT_EQ(c.pre_gst.kind, PreGstPolicy::Kind::Targeting);
  // the faulty replica sits in the faster-on-average group
  EXPECT_EQ(c.latency_us[2][2], 1000);
  EXPECT_EQ(c.latency_us.size(), 7u);
}

}  // namespace
}  // namespace swle::sim
