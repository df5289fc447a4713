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

#include <deque>
#include <optional>
#include <stdexcept>

#include "swle/params.hpp"
#include "swle/types.hpp"

namespace swle {

struct LeaderCertificate;

struct LeaderSlot {
  View view = 0;
  ReplicaId initial_leader = 0;
  std::optional<ReplicaId> elected_leader;

  friend bool operator==(const LeaderSlot&, const LeaderSlot&) = default;
};

class WindowError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// Sliding window of t_z + 2n leader slots starting at the current view.
///
/// Views with an elected leader always form a prefix of the window; every
/// mutation re-checks this and throws std::logic_error if it breaks.
class LeaderList {
 public:
  explicit LeaderList(const Params& params);

  View base_view() const { return slots_.front().view; }
  View last_view() const { return slots_.back().view; }
  std::size_t size() const { return slots_.size(); }
  bool covers(View v) const { return v >= base_view() && v <= last_view(); }

  const LeaderSlot& slot(View v) const;
  std::optional<ReplicaId> elected(View v) const { return slot(v).elected_leader; }
  ReplicaId initial(View v) const { return slot(v).initial_leader; }

  /// Records an election outcome for `target` (nullopt means no candidate
  /// qualified and the initial leader stands), then fills every unelected
  /// view between the last elected view and `target` with its initial
  /// leader. Throws WindowError if `target` is outside the window.
  void apply_certificate(View target, std::optional<ReplicaId> elected);
  void apply_certificate(const LeaderCertificate& cert);

  /// Drops the slot for `completed` (which must be the base view) and
  /// appends an empty slot at the far end of the window.
  void advance(View completed);

  /// Leader a replica acts on: a proven claim beats the elected leader,
  /// which beats the initial leader.
  ReplicaId determine(View v, std::optional<ReplicaId> proven_claim = std::nullopt) const;

  bool prefix_filled() const;
  const std::deque<LeaderSlot>& slots() const { return slots_; }

 private:
  LeaderSlot& mutable_slot(View v);
  void check_invariant() const;

  Params params_;
  std::deque<LeaderSlot> slots_;
};

}  // namespace swle
