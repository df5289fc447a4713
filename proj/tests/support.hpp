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

// Shared helpers for the unit tests and the acceptance binary. Everything in
// here is written against the public headers only, so the oracles do not
// share code with the implementation they check.

#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "swle/authenticator.hpp"
#include "swle/certificate.hpp"
#include "swle/leader_list.hpp"
#include "swle/params.hpp"
#include "swle/target_view.hpp"

namespace swle::testing {

// Proposition-style window check: every source block {nx+1..n(x+1)} must map
// one-to-one onto {n(x+1)+1+t_z .. n(x+2)+t_z}. Returns the number of
// violations found for blocks x in [0, max_block].
inline std::uint64_t bijection_violations(std::uint32_t n, std::uint64_t t_z,
                                          std::uint64_t max_block) {
  std::uint64_t bad = 0;
  for (std::uint64_t x = 0; x <= max_block; ++x) {
    const std::uint64_t lo = n * (x + 1) + 1 + t_z;
    const std::uint64_t hi = n * (x + 2) + t_z;
    std::vector<bool> hit(n, false);
    for (std::uint64_t v = n * x + 1; v <= n * (x + 1); ++v) {
      const View t = target_view(v, n, t_z);
      if (t < lo || t > hi || hit[t - lo]) {
        ++bad;
        continue;
      }
      hit[t - lo] = true;
    }
    bad += static_cast<std::uint64_t>(std::count(hit.begin(), hit.end(), false));
  }
  return bad;
}

// Brute-force selection: count every candidate, then walk views upward from
// the target until one of the qualifying replicas owns the view.
inline std::optional<ReplicaId> reference_select(const std::vector<VoteExtension>& votes,
                                                 View target, std::uint32_t n, std::uint32_t f) {
  std::set<ReplicaId> winners;
  for (ReplicaId c = 0; c < n; ++c) {
    std::uint32_t count = 0;
    for (const auto& v : votes) {
      if (std::find(v.candidates.begin(), v.candidates.end(), c) != v.candidates.end()) ++count;
    }
    if (count >= f + 1) winners.insert(c);
  }
  if (winners.empty()) return std::nullopt;
  for (View w = target;; ++w) {
    if (winners.count(static_cast<ReplicaId>(w % n)) != 0) return static_cast<ReplicaId>(w % n);
  }
}

// A well-formed random vote set for `view`, all naming `leader`.
inline std::vector<VoteExtension> random_vote_set(std::mt19937_64& rng, const Params& params,
                                                  View view, ReplicaId leader,
                                                  const Authenticator& auth,
                                                  ExtensionKind kind = ExtensionKind::Commit) {
  std::vector<ReplicaId> ids(params.n);
  for (ReplicaId i = 0; i < params.n; ++i) ids[i] = i;
  std::shuffle(ids.begin(), ids.end(), rng);
  ids.resize(params.quorum());
  const View target = target_view(view, params);
  std::vector<VoteExtension> out;
  for (const auto voter : ids) {
    std::vector<ReplicaId> cand(params.n);
    for (ReplicaId i = 0; i < params.n; ++i) cand[i] = i;
    std::shuffle(cand.begin(), cand.end(), rng);
    cand.resize(1 + rng() % params.n);
    out.push_back(make_extension(kind, view, leader, target, std::move(cand), voter, auth));
  }
  return out;
}

// Prefix closure computed independently of LeaderList::prefix_filled.
inline bool prefix_closed(const LeaderList& list) {
  bool gap = false;
  for (const auto& s : list.slots()) {
    if (!s.elected_leader) {
      gap = true;
    } else if (gap) {
      return false;
    }
  }
  return true;
}

}  // namespace swle::testing
