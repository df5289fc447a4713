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

#include "swle/types.hpp"

namespace swle {

/// Score deltas for the five scoring triggers, in score units.
struct ScoringConstants {
  ScoreUnits leader_entered;      // leader of a freshly entered view
  ScoreUnits leader_timed_out;    // determined leader of a view that timed out
  ScoreUnits proposal_finalized;  // leader of a finalized proposal
  ScoreUnits promoter;            // each of the first 2f+1 voters of a led view
  ScoreUnits normalization;       // everybody, every theta views

  /// Defaults for n replicas: -1, -n, +1, +1/n and +1 points.
  static ScoringConstants defaults(std::uint32_t n);

  friend bool operator==(const ScoringConstants&, const ScoringConstants&) = default;
};

class ParamsError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Static configuration shared by every replica running the election.
///
/// Invariants (checked by make()): n = 3f + 1 with f >= 1; t_z is a positive
/// multiple of n; theta >= n; the normalization delta is positive so the
/// candidate fallback always terminates.
struct Params {
  std::uint32_t n = 0;
  std::uint32_t f = 0;
  std::uint64_t t_f = 0;    // assumed decision-latency bound, in views
  std::uint64_t t_z = 0;    // window core size, ceil(t_f / n) * n
  std::uint64_t theta = 0;  // normalization period, in views
  ScoringConstants alpha{};

  static Params make(std::uint32_t n, std::optional<std::uint64_t> t_f = std::nullopt,
                     std::optional<std::uint64_t> theta = std::nullopt,
                     std::optional<ScoringConstants> alpha = std::nullopt);

  /// Score units in one reputation point.
  ScoreUnits point() const { return static_cast<ScoreUnits>(n); }
  std::uint32_t quorum() const { return 2 * f + 1; }
  /// Total number of LeaderList slots.
  std::uint64_t window_size() const { return t_z + 2 * static_cast<std::uint64_t>(n); }
  /// Minimum score that keeps a replica eligible as a candidate.
  ScoreUnits eligibility_threshold() const;

  friend bool operator==(const Params&, const Params&) = default;
};

/// Default normalization period for n replicas: max(300, 10n).
std::uint64_t default_theta(std::uint32_t n);

}  // namespace swle
