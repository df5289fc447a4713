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

#include "swle/sim/sweep.hpp"

#include <omp.h>

#include <span>

#include "swle/codec.hpp"
#include "swle/metrics/report_io.hpp"
#include "swle/sim/simulator.hpp"

namespace swle::sim {

SweepResult run_job(const ScenarioConfig& config) {
  SweepResult r;
  r.name = config.name;
  r.mechanism = config.mechanism;
  r.seed = config.seed;
  try {
    const auto report = simulate(config);
    r.ok = true;
    r.horizon_reached = report.horizon_reached;
    r.summary = report.summary;
    r.events = report.events;
    const auto text = metrics::views_csv(report.records) + report_json(report).dump();
    r.output_hash = hash64(std::span(reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
  } catch (const InvariantViolation& e) {
    r.invariant_violation = true;
    r.error = e.what();
  } catch (const std::exception& e) {
    r.error = e.what();
  }
  return r;
}

std::vector<SweepResult> run_sweep_serial(std::span<const ScenarioConfig> jobs) {
  std::vector<SweepResult> out;
  out.reserve(jobs.size());
  for (const auto& job : jobs) out.push_back(run_job(job));
  return out;
}

std::vector<SweepResult> run_sweep_parallel(std::span<const ScenarioConfig> jobs, int threads) {
  std::vector<SweepResult> out(jobs.size());
  const auto count = static_cast<std::int64_t>(jobs.size());
  const int team = threads > 0 ? threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 1) num_threads(team)
  for (std::int64_t i = 0; i < count; ++i) {
    out[static_cast<std::size_t>(i)] = run_job(jobs[static_cast<std::size_t>(i)]);
  }
  return out;
}

std::vector<ScenarioConfig> seed_range(const ScenarioConfig& base, std::uint64_t first_seed,
                                       std::size_t count) {
  std::vector<ScenarioConfig> out(count, base);
  for (std::size_t i = 0; i < count; ++i) out[i].seed = first_seed + i;
  return out;
}

}  // namespace swle::sim
