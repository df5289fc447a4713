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

#include <span>
#include <variant>
#include <vector>

#include "swle/params.hpp"
#include "swle/types.hpp"

namespace swle {

// Scoring triggers. Each one names the replicas whose score moves.

/// A view was entered; its determined leader pays the entry cost.
struct LeaderEnteredView {
  ReplicaId leader;
};

/// A view timed out; its determined leader at that moment is penalized.
struct LeaderTimedOut {
  ReplicaId leader;
};

/// A proposal was finalized; its proposer is rewarded.
struct ProposalFinalized {
  ReplicaId leader;
};

/// The local replica led a view to a decision; the senders of the first
/// 2f+1 valid votes get the small participation reward.
struct ConsensusPromoters {
  std::vector<ReplicaId> promoters;
};

/// Every theta views, every replica gets the normalization bonus.
struct PeriodicNormalization {};

using ScoreEvent = std::variant<LeaderEnteredView, LeaderTimedOut, ProposalFinalized,
                                ConsensusPromoters, PeriodicNormalization>;

/// One replica's local view of everybody's reputation.
///
/// Scores are non-negative integers in units of 1/n point and start at the
/// normalization delta (one point with default constants). Every update
/// clamps at zero, so replaying the same event sequence always yields the
/// same matrix.
class ReputationMatrix {
 public:
  ReputationMatrix(const Params& params, ReplicaId owner);

  ReplicaId owner() const { return owner_; }
  const Params& params() const { return params_; }
  std::span<const ScoreUnits> scores() const { return scores_; }
  ScoreUnits score(ReplicaId replica) const { return scores_.at(replica); }

  /// Eligible replicas may appear in candidate arrays.
  bool eligible(ReplicaId replica) const {
    return score(replica) >= params_.eligibility_threshold();
  }

  void apply(const ScoreEvent& event);

  /// Adds the normalization delta to every entry.
  void normalize();

  /// Test hook: overwrite an entry (negative inputs are clamped).
  void set_score(ReplicaId replica, ScoreUnits units);

  friend bool operator==(const ReputationMatrix&, const ReputationMatrix&) = default;

 private:
  void add(ReplicaId replica, ScoreUnits delta);

  Params params_;
  ReplicaId owner_;
  std::vector<ScoreUnits> scores_;
};

/// Eligible initial leaders of views target..target+n-1, in view order.
///
/// If nobody is eligible the normalization delta is added to every entry of
/// `scores` (the caller's persistent matrix) and the scan is repeated until
/// the array is non-empty.
std::vector<ReplicaId> generate_candidates(ReputationMatrix& scores, View target);

}  // namespace swle
