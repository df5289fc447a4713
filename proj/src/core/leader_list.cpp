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

#include "swle/leader_list.hpp"

#include <string>

#include "swle/certificate.hpp"
#include "swle/target_view.hpp"

namespace swle {

LeaderList::LeaderList(const Params& params) : params_(params) {
  const View prefilled = params.t_z + params.n;
  for (View v = 1; v <= params.window_size(); ++v) {
    LeaderSlot s{v, initial_leader(v, params.n), std::nullopt};
    if (v <= prefilled) s.elected_leader = s.initial_leader;
    slots_.push_back(s);
  }
}

const LeaderSlot& LeaderList::slot(View v) const {
  if (!covers(v)) {
    throw WindowError("view " + std::to_string(v) + " outside leader window [" +
                      std::to_string(base_view()) + ", " + std::to_string(last_view()) + "]");
  }
  return slots_[v - base_view()];
}

LeaderSlot& LeaderList::mutable_slot(View v) {
  return const_cast<LeaderSlot&>(static_cast<const LeaderList*>(this)->slot(v));
}

void LeaderList::apply_certificate(View target, std::optional<ReplicaId> elected) {
  auto& dst = mutable_slot(target);
  if (elected && *elected >= params_.n) throw std::invalid_argument("elected leader out of range");
  dst.elected_leader = elected.value_or(dst.initial_leader);

  // Highest view below target with an elected leader; views that already
  // left the window count as settled.
  View fill_from = base_view();
  for (View v = target; v > base_view(); --v) {
    if (slots_[v - 1 - base_view()].elected_leader) {
      fill_from = v;
      break;
    }
  }
  for (View v = fill_from; v < target; ++v) {
    auto& s = slots_[v - base_view()];
    if (!s.elected_leader) s.elected_leader = s.initial_leader;
  }
  check_invariant();
}

void LeaderList::apply_certificate(const LeaderCertificate& cert) {
  apply_certificate(cert.target_view, cert.elected);
}

void LeaderList::advance(View completed) {
  if (completed != base_view()) {
    throw WindowError("out-of-order completion: view " + std::to_string(completed) +
                      " while base is " + std::to_string(base_view()));
  }
  slots_.pop_front();
  const View fresh = completed + params_.window_size();
  slots_.push_back(LeaderSlot{fresh, initial_leader(fresh, params_.n), std::nullopt});
  check_invariant();
}

ReplicaId LeaderList::determine(View v, std::optional<ReplicaId> proven_claim) const {
  if (proven_claim) return *proven_claim;
  const auto& s = slot(v);
  return s.elected_leader.value_or(s.initial_leader);
}

bool LeaderList::prefix_filled() const {
  bool seen_empty = false;
  for (const auto& s : slots_) {
    if (!s.elected_leader) {
      seen_empty = true;
    } else if (seen_empty) {
      return false;
    }
  }
  return true;
}

void LeaderList::check_invariant() const {
  if (slots_.size() != params_.window_size()) throw std::logic_error("leader window size drifted");
  if (!prefix_filled()) throw std::logic_error("leader window lost its elected prefix");
}

}  // namespace swle
