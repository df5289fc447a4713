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
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "swle/engine/election.hpp"
#include "swle/params.hpp"
#include "swle/types.hpp"

namespace swle::sim {

enum class FaultKind { Correct, Crash, Byzantine };
enum class Strategy { SilentLeader, ReputationBuilder, Mute };

std::string_view to_string(FaultKind kind);
std::string_view to_string(Strategy strategy);

struct FaultSpec {
  ReplicaId replica = 0;
  FaultKind kind = FaultKind::Correct;
  Strategy strategy = Strategy::SilentLeader;  // Byzantine only
  View from_view = 1;                          // Crash only
};

struct PreGstPolicy {
  enum class Kind { Random, Targeting };
  Kind kind = Kind::Random;
  SimTime max_us = 0;               // Random: extra delay drawn from [0, max]
  std::vector<ReplicaId> victims;   // Targeting: senders whose messages are held back
  SimTime delay_us = 0;             // Targeting: extra delay on victims' messages
};

/// One simulation scenario. Times are integer microseconds; the JSON form
/// uses milliseconds (rounded to the nearest microsecond) unless the key
/// says otherwise.
struct ScenarioConfig {
  std::string name = "scenario";
  std::uint32_t n = 4;
  std::uint32_t f = 1;
  View views = 200;
  std::uint64_t seed = 1;
  SimTime gst_us = 0;
  SimTime delta_us = 50'000;
  SimTime timeout_us = 1'500'000;
  std::uint32_t batch_size = 400;
  std::uint32_t payload_bytes = 128;
  engine::Mechanism mechanism = engine::Mechanism::Swle;
  std::vector<FaultSpec> faults;
  std::vector<std::vector<SimTime>> latency_us;  // n x n, resolved
  std::vector<std::uint32_t> latency_group;      // group per replica, empty for a raw matrix
  std::optional<std::uint64_t> theta_override;
  std::optional<std::uint64_t> t_f;
  SimTime jitter_us = 0;
  PreGstPolicy pre_gst;
  SimTime processing_us = 100;
  double bandwidth_mbps = 0;  // 0 disables the transmission term
  std::optional<SimTime> time_cap_us;

  Params params() const;
  const FaultSpec* fault_of(ReplicaId replica) const;
  bool is_faulty(ReplicaId replica) const { return fault_of(replica) != nullptr; }
  std::vector<bool> faulty_mask() const;
  /// Simulated-time limit: the explicit cap, or a bound large enough for
  /// every view to time out.
  SimTime effective_time_cap() const;
};

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Largest accepted view horizon.
inline constexpr View kMaxViews = 10'000;

ScenarioConfig parse_config_text(std::string_view json_text);
ScenarioConfig load_config(const std::string& path);

/// Checks cross-field constraints; parse_config_text calls it.
void validate(const ScenarioConfig& config);

}  // namespace swle::sim
