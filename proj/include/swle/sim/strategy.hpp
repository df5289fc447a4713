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

#include <optional>
#include <vector>

#include "swle/engine/messages.hpp"
#include "swle/sim/config.hpp"

namespace swle::sim {

/// A message a replica asked to send. `to` is empty for a broadcast.
struct Outbound {
  std::optional<ReplicaId> to;
  engine::MessagePtr msg;
};

// Faulty replicas run the ordinary engine; their behaviour is shaped by
// filtering what the engine emits.

/// Filters one handler's output for a replica sitting in `view`.
/// SILENT_LEADER and REPUTATION_BUILDER drop their own proposals, MUTE drops
/// everything, a crashed replica drops everything from its crash view on.
std::vector<Outbound> byzantine_step(const FaultSpec& spec, View view,
                                     std::vector<Outbound> outbox);

/// Whether the replica still handles input at `view`.
bool processes_input(const FaultSpec* spec, View view);

/// Sender-side handling delay. Reputation builders answer immediately.
SimTime processing_delay(const FaultSpec* spec, SimTime default_us);

}  // namespace swle::sim
