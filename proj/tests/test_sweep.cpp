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

#include "swle/sim/sweep.hpp"

namespace swle::sim {
namespace {

TEST(Sweep, ParallelMatchesSerial) {
  auto base = parse_config_text(R"({"n": 4, "views": 120, "jitter_ms": 0.5,
      "faults": [{"replica": 1, "kind": "byzantine", "strategy": "reputation_builder"}]})");
  std::vector<ScenarioConfig> jobs = seed_range(base, 1, 6);
  base.mechanism = engine::Mechanism::RoundRobin;
  for (auto& j : seed_range(base, 1, 6)) jobs.push_back(j);
  const auto serial = run_sweep_serial(jobs);
  const auto parallel = run_sweep_parallel(jobs, 4);
  ASSERT_EQ(serial.size(), jobs.size());
  EXPECT_EQ(serial, parallel);
  for (const auto& r : serial) EXPECT_TRUE(r.ok) << r.error;
}

TEST(Sweep, FailuresAreReportedNotThrown) {
  auto bad = parse_config_text(R"({"n": 4})");
  bad.n = 5;  // invalid after parsing
  const auto r = run_job(bad);
  EXPECT_FALSE(r.ok);
  EXPECT_FALSE(r.invariant_violation);
  EXPECT_FALSE(r.error.empty());
}

TEST(Sweep, SeedRange) {
  const auto jobs = seed_range(ScenarioConfig{}, 10, 3);
  ASSERT_EQ(jobs.size(), 3u);
  EXPECT_EQ(jobs[2].seed, 12u);
}

}  // namespace
}  // namespace swle::sim
