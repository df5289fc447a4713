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
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "swle/engine/messages.hpp"
#include "swle/leader_list.hpp"
#include "swle/metrics/metrics.hpp"
#include "swle/sim/config.hpp"

namespace swle::sim {

/// A global invariant failed. Carries the most recent simulation events.
class InvariantViolation : public std::runtime_error {
 public:
  InvariantViolation(const std::string& what, std::vector<std::string> trace)
      : std::runtime_error(what), trace_(std::move(trace)) {}
  const std::vector<std::string>& trace() const { return trace_; }

 private:
  std::vector<std::string> trace_;
};

class CheckFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Cross-replica assertions, fed by correct replicas only. Every method
/// throws CheckFailure on a breach.
class GlobalChecker {
 public:
  /// Two correct replicas accepted proposals from different proposers for
  /// the same view.
  void on_claim(ReplicaId replica, View view, ReplicaId proposer);
  /// Two correct replicas committed different nodes for the same view.
  void on_commit(ReplicaId replica, View node_view, Digest digest);
  /// Elected slots of a window must form a prefix.
  void check_leader_list(ReplicaId replica, const LeaderList& list) const;

 private:
  struct Seen {
    ReplicaId value;
    ReplicaId first_reporter;
  };
  std::unordered_map<View, Seen> claims_;
  std::unordered_map<View, std::pair<Digest, ReplicaId>> commits_;
};

/// A message placed directly into a replica's inbox, bypassing the network.
struct Injection {
  SimTime at = 0;
  ReplicaId to = 0;
  engine::MessagePtr msg;
};

struct SimOptions {
  /// Accept every signature. Only for negative tests with forged messages.
  bool permissive_auth = false;
  std::size_t trace_capacity = 64;
  std::vector<Injection> injections;
};

struct SimulationReport {
  ScenarioConfig config;
  Params params;
  std::vector<metrics::ViewRecord> records;  // views 1..config.views
  metrics::Summary summary;
  std::uint64_t events = 0;
  SimTime end_us = 0;
  bool horizon_reached = false;  // every correct replica moved past the last view
  // Reputation matrix of each correct replica at the end (empty without SWLE).
  std::vector<std::vector<ScoreUnits>> final_scores;
};

/// Runs one scenario to its view horizon (or time cap). Deterministic in
/// the config, seed included. Throws InvariantViolation on a safety or
/// uniqueness breach.
SimulationReport simulate(const ScenarioConfig& config, const SimOptions& options = {});

/// Summary plus scenario identification, as written to summary.json.
nlohmann::ordered_json report_json(const SimulationReport& report);

}  // namespace swle::sim
