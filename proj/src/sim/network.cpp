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

#include "swle/sim/network.hpp"

#include <algorithm>
#include <cmath>

namespace swle::sim {

NetworkModel::NetworkModel(const ScenarioConfig& config, std::uint64_t seed)
    : latency_(config.latency_us),
      gst_(config.gst_us),
      delta_(config.delta_us),
      jitter_(config.jitter_us),
      bandwidth_mbps_(config.bandwidth_mbps),
      pre_gst_(config.pre_gst),
      victim_(config.n, false),
      rng_(seed) {
  for (auto v : pre_gst_.victims) victim_.at(v) = true;
}

SimTime NetworkModel::delivery_time(ReplicaId from, ReplicaId to, std::size_t bytes,
                                    SimTime send, SimTime processing_us) {
  if (from == to) return send;
  SimTime d = latency_[from][to] + processing_us + rng_.upto(jitter_);
  if (bandwidth_mbps_ > 0) {
    d += static_cast<SimTime>(std::llround(static_cast<double>(bytes) * 8.0 / bandwidth_mbps_));
  }
  if (send >= gst_) return send + std::min(d, delta_);
  if (pre_gst_.kind == PreGstPolicy::Kind::Random) {
    d += rng_.upto(pre_gst_.max_us);
  } else if (victim_[from]) {
    d += pre_gst_.delay_us;
  }
  return std::min(send + d, gst_ + delta_);
}

}  // namespace swle::sim
