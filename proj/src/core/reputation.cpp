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

#include "swle/reputation.hpp"

#include <algorithm>
#include <stdexcept>

namespace swle {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

}  // namespace

ReputationMatrix::ReputationMatrix(const Params& params, ReplicaId owner)
    : params_(params), owner_(owner), scores_(params.n, params.alpha.normalization) {
  if (owner >= params.n) throw std::out_of_range("matrix owner outside replica set");
}

void ReputationMatrix::add(ReplicaId replica, ScoreUnits delta) {
  auto& s = scores_.at(replica);
  s = std::max<ScoreUnits>(s + delta, 0);
}

void ReputationMatrix::apply(const ScoreEvent& event) {
  const auto& a = params_.alpha;
  std::visit(overloaded{
                 [&](const LeaderEnteredView& e) { add(e.leader, a.leader_entered); },
                 [&](const LeaderTimedOut& e) { add(e.leader, a.leader_timed_out); },
                 [&](const ProposalFinalized& e) { add(e.leader, a.proposal_finalized); },
                 [&](const ConsensusPromoters& e) {
                   for (auto r : e.promoters) add(r, a.promoter);
                 },
                 [&](const PeriodicNormalization&) { normalize(); },
             },
             event);
}

void ReputationMatrix::normalize() {
  for (ReplicaId k = 0; k < params_.n; ++k) add(k, params_.alpha.normalization);
}

void ReputationMatrix::set_score(ReplicaId replica, ScoreUnits units) {
  scores_.at(replica) = std::max<ScoreUnits>(units, 0);
}

std::vector<ReplicaId> generate_candidates(ReputationMatrix& scores, View target) {
  const auto n = scores.params().n;
  std::vector<ReplicaId> out;
  out.reserve(n);
  for (;;) {
    for (std::uint32_t i = 0; i < n; ++i) {
      const auto candidate = static_cast<ReplicaId>((target + i) % n);
      if (scores.eligible(candidate)) out.push_back(candidate);
    }
    if (!out.empty()) return out;
    scores.normalize();
  }
}

}  // namespace swle
