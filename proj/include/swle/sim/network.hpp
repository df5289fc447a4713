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
#include <random>
#include <vector>

#include "swle/sim/config.hpp"

namespace swle::sim {

/// Bounded uniform draws from a 64-bit engine. Spelled out rather than using
/// std::uniform_int_distribution so the sequence is identical on every
/// standard library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  /// Uniform in [0, bound]; bound <= 0 yields 0.
  std::int64_t upto(std::int64_t bound) {
    if (bound <= 0) return 0;
    return static_cast<std::int64_t>(engine_() % (static_cast<std::uint64_t>(bound) + 1));
  }

 private:
  std::mt19937_64 engine_;
};

/// Message timing under partial synchrony.
///
/// Before GST the policy may add arbitrary (bounded) extra delay, but every
/// message is delivered by GST + delta. From GST on, delivery takes at most
/// delta. Self-delivery is immediate.
class NetworkModel {
 public:
  NetworkModel(const ScenarioConfig& config, std::uint64_t seed);

  /// `processing_us` is the sender-side handling delay for this message.
  SimTime delivery_time(ReplicaId from, ReplicaId to, std::size_t bytes, SimTime send,
                        SimTime processing_us);

  SimTime gst() const { return gst_; }
  SimTime delta() const { return delta_; }

 private:
  std::vector<std::vector<SimTime>> latency_;
  SimTime gst_;
  SimTime delta_;
  SimTime jitter_;
  double bandwidth_mbps_;
  PreGstPolicy pre_gst_;
  std::vector<bool> victim_;
  Rng rng_;
};

}  // namespace swle::sim
