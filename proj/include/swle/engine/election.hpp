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

#include <memory>
#include <optional>
#include <span>
#include <string_view>

#include "swle/authenticator.hpp"
#include "swle/certificate.hpp"
#include "swle/leader_list.hpp"
#include "swle/params.hpp"
#include "swle/reputation.hpp"

namespace swle::engine {

enum class Mechanism { Swle, RoundRobin };

std::string_view to_string(Mechanism mechanism);
/// Parses "swle" or "roundrobin"; throws std::invalid_argument otherwise.
Mechanism parse_mechanism(std::string_view text);

/// Leader-election seam between the consensus engine and a mechanism.
///
/// The engine drives the provider through view transitions and consensus
/// events; the provider owns whatever per-replica election state it needs.
class ElectionProvider {
 public:
  virtual ~ElectionProvider() = default;

  virtual Mechanism mechanism() const = 0;

  /// Leader of `v` from local state alone (no leadership claims).
  virtual ReplicaId determine(View v) const = 0;
  /// True if `v` has an election outcome locally (always true without elections).
  virtual bool elected_known(View v) const = 0;

  /// Completes every view below `v`; `v` becomes the current view.
  virtual void advance_to(View v) = 0;

  virtual void on_enter(View v, ReplicaId leader) = 0;
  virtual void on_timeout(ReplicaId leader) = 0;
  virtual void on_finalized(ReplicaId proposer) = 0;
  virtual void on_led_decision(std::span<const ReplicaId> promoters) = 0;

  /// Whether proposals for views >= 2 must carry a leader certificate.
  virtual bool uses_certificates() const = 0;

  /// Extension for a COMMIT vote or view-change message cast in `v`.
  virtual std::optional<VoteExtension> extension(ExtensionKind kind, View v,
                                                 ReplicaId next_leader) = 0;

  /// Certificate for proposing in v + 1, from extensions cast in `v`.
  /// Only extensions naming the local replica are used.
  virtual std::optional<LeaderCertificate> try_certificate(
      std::span<const VoteExtension> extensions, View v) const = 0;

  virtual CertVerdict verify(const LeaderCertificate& cert, ReplicaId proposer,
                             View proposal_view) const = 0;

  /// Records a finalized election outcome. Outcomes for views at or below
  /// the current one are stale and ignored.
  virtual void apply(const LeaderCertificate& cert) = 0;

  virtual const LeaderList* leader_list() const { return nullptr; }
  virtual const ReputationMatrix* reputation() const { return nullptr; }
};

/// Plain rotation: leader of v is v mod n.
class RoundRobinElection final : public ElectionProvider {
 public:
  explicit RoundRobinElection(std::uint32_t n) : n_(n) {}

  Mechanism mechanism() const override { return Mechanism::RoundRobin; }
  ReplicaId determine(View v) const override { return static_cast<ReplicaId>(v % n_); }
  bool elected_known(View) const override { return true; }
  void advance_to(View) override {}
  void on_enter(View, ReplicaId) override {}
  void on_timeout(ReplicaId) override {}
  void on_finalized(ReplicaId) override {}
  void on_led_decision(std::span<const ReplicaId>) override {}
  bool uses_certificates() const override { return false; }
  std::optional<VoteExtension> extension(ExtensionKind, View, ReplicaId) override {
    return std::nullopt;
  }
  std::optional<LeaderCertificate> try_certificate(std::span<const VoteExtension>,
                                                   View) const override {
    return std::nullopt;
  }
  CertVerdict verify(const LeaderCertificate&, ReplicaId, View) const override {
    return CertVerdict::MalformedVoteSet;
  }
  void apply(const LeaderCertificate&) override {}

 private:
  std::uint32_t n_;
};

class SwleElection final : public ElectionProvider {
 public:
  SwleElection(const Params& params, ReplicaId self, const Authenticator& auth);

  Mechanism mechanism() const override { return Mechanism::Swle; }
  ReplicaId determine(View v) const override { return list_.determine(v); }
  bool elected_known(View v) const override { return list_.elected(v).has_value(); }
  void advance_to(View v) override;
  void on_enter(View v, ReplicaId leader) override;
  void on_timeout(ReplicaId leader) override;
  void on_finalized(ReplicaId proposer) override;
  void on_led_decision(std::span<const ReplicaId> promoters) override;
  bool uses_certificates() const override { return true; }
  std::optional<VoteExtension> extension(ExtensionKind kind, View v,
                                         ReplicaId next_leader) override;
  std::optional<LeaderCertificate> try_certificate(std::span<const VoteExtension> extensions,
                                                   View v) const override;
  CertVerdict verify(const LeaderCertificate& cert, ReplicaId proposer,
                     View proposal_view) const override;
  void apply(const LeaderCertificate& cert) override;

  const LeaderList* leader_list() const override { return &list_; }
  const ReputationMatrix* reputation() const override { return &matrix_; }

 private:
  Params params_;
  ReplicaId self_;
  const Authenticator& auth_;
  ReputationMatrix matrix_;
  LeaderList list_;
};

std::unique_ptr<ElectionProvider> make_election(Mechanism mechanism, const Params& params,
                                                ReplicaId self, const Authenticator& auth);

}  // namespace swle::engine
