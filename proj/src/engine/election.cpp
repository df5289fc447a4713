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

#include "swle/engine/election.hpp"

#include <stdexcept>
#include <string>

#include "swle/target_view.hpp"

namespace swle::engine {

std::string_view to_string(Mechanism mechanism) {
  return mechanism == Mechanism::Swle ? "swle" : "roundrobin";
}

Mechanism parse_mechanism(std::string_view text) {
  if (text == "swle") return Mechanism::Swle;
  if (text == "roundrobin") return Mechanism::RoundRobin;
  throw std::invalid_argument("unknown mechanism '" + std::string(text) +
                              "' (expected swle or roundrobin)");
}

SwleElection::SwleElection(const Params& params, ReplicaId self, const Authenticator& auth)
    : params_(params), self_(self), auth_(auth), matrix_(params, self), list_(params) {}

void SwleElection::advance_to(View v) {
  while (list_.base_view() < v) {
    const View completed = list_.base_view();
    list_.advance(completed);
    if ((completed + 1) % params_.theta == 0) matrix_.apply(PeriodicNormalization{});
  }
}

void SwleElection::on_enter(View, ReplicaId leader) { matrix_.apply(LeaderEnteredView{leader}); }

void SwleElection::on_timeout(ReplicaId leader) { matrix_.apply(LeaderTimedOut{leader}); }

void SwleElection::on_finalized(ReplicaId proposer) {
  matrix_.apply(ProposalFinalized{proposer});
}

void SwleElection::on_led_decision(std::span<const ReplicaId> promoters) {
  matrix_.apply(ConsensusPromoters{{promoters.begin(), promoters.end()}});
}

std::optional<VoteExtension> SwleElection::extension(ExtensionKind kind, View v,
                                                     ReplicaId next_leader) {
  const View target = target_view(v, params_);
  auto candidates = generate_candidates(matrix_, target);
  return make_extension(kind, v, next_leader, target, std::move(candidates), self_, auth_);
}

std::optional<LeaderCertificate> SwleElection::try_certificate(
    std::span<const VoteExtension> extensions, View v) const {
  const View target = target_view(v, params_);
  for (const auto kind : {ExtensionKind::Commit, ExtensionKind::ViewChange}) {
    std::vector<VoteExtension> picked;
    std::vector<bool> seen(params_.n, false);
    for (const auto& x : extensions) {
      if (x.kind != kind || x.view != v || x.determined_leader != self_ ||
          x.target_view != target || x.voter >= params_.n || seen[x.voter]) {
        continue;
      }
      seen[x.voter] = true;
      picked.push_back(x);
      if (picked.size() == params_.quorum()) break;
    }
    if (picked.size() < params_.quorum()) continue;
    try {
      return package_certificate(std::move(picked), target, params_, auth_);
    } catch (const CertificateError&) {
      continue;
    }
  }
  return std::nullopt;
}

CertVerdict SwleElection::verify(const LeaderCertificate& cert, ReplicaId proposer,
                                 View proposal_view) const {
  return verify_certificate(cert, proposer, proposal_view, params_, auth_);
}

void SwleElection::apply(const LeaderCertificate& cert) {
  if (cert.target_view <= list_.base_view()) return;
  list_.apply_certificate(cert);
}

std::unique_ptr<ElectionProvider> make_election(Mechanism mechanism, const Params& params,
                                                ReplicaId self, const Authenticator& auth) {
  if (mechanism == Mechanism::RoundRobin) return std::make_unique<RoundRobinElection>(params.n);
  return std::make_unique<SwleElection>(params, self, auth);
}

}  // namespace swle::engine
