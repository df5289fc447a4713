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

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "swle/metrics/metrics.hpp"
#include "swle/sim/config.hpp"

namespace swle::sim {

/// Outcome of one run inside a sweep.
struct SweepResult {
  std::string name;
  engine::Mechanism mechanism = engine::Mechanism::Swle;
  std::uint64_t seed = 0;
  bool ok = false;                   // finished without error
  bool invariant_violation = false;  // failed on a global invariant
  bool horizon_reached = false;
  std::string error;
  metrics::Summary summary;
  std::uint64_t events = 0;
  std::uint64_t output_hash = 0;  // hash of the CSV and JSON outputs

  friend bool operator==(const SweepResult& a, const SweepResult& b) {
    return a.name == b.name && a.mechanism == b.mechanism && a.seed == b.seed && a.ok == b.ok &&
           a.invariant_violation == b.invariant_violation && a.error == b.error &&
           a.events == b.events && a.output_hash == b.output_hash;
  }
};

/// Runs one job and never throws.
SweepResult run_job(const ScenarioConfig& config);

/// Reference implementation: jobs one after another.
std::vector<SweepResult> run_sweep_serial(std::span<const ScenarioConfig> jobs);

/// Jobs spread over OpenMP threads (0 = runtime default). Each simulation
/// stays single-threaded; results come back in job order, identical to the
/// serial version.
std::vector<SweepResult> run_sweep_parallel(std::span<const ScenarioConfig> jobs, int threads = 0);

/// Copies of `base` with seeds base_seed, base_seed+1, ...
std::vector<ScenarioConfig> seed_range(const ScenarioConfig& base, std::uint64_t first_seed,
                                       std::size_t count);

}  // namespace swle::sim
