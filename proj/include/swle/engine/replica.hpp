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

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "swle/authenticator.hpp"
#include "swle/engine/election.hpp"
#include "swle/engine/messages.hpp"
#include "swle/params.hpp"

namespace swle::engine {

struct EngineConfig {
  SimTime timeout_us = 1'500'000;
  std::uint32_t batch_size = 400;
  std::uint32_t payload_bytes = 128;
};

/// What a replica may do to the outside world. Implemented by the harness.
class ReplicaEnv {
 public:
  virtual ~ReplicaEnv() = default;
  virtual SimTime now() const = 0;
  virtual void send(ReplicaId from, ReplicaId to, MessagePtr msg) = 0;
  /// Delivers to every replica, the sender included.
  virtual void broadcast(ReplicaId from, MessagePtr msg) = 0;
  virtual void set_timer(ReplicaId owner, View view, SimTime at) = 0;
};

/// Hooks for metrics and global checkers. Every callback has a no-op default.
class ReplicaObserver {
 public:
  virtual ~ReplicaObserver() = default;
  virtual void on_enter(ReplicaId, View, ReplicaId /*leader*/, bool /*elected_known*/) {}
  virtual void on_skip(ReplicaId, View, ReplicaId /*leader*/) {}
  virtual void on_claim(ReplicaId, View, ReplicaId /*proposer*/) {}
  virtual void on_commit(ReplicaId, const Proposal&, View /*decided_in*/) {}
  virtual void on_timeout(ReplicaId, View, ReplicaId /*leader*/) {}
};

/// A replica observed a decision that does not extend its committed chain.
class SafetyViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Non-chained three-phase HotStuff-style replica.
///
/// Single-threaded and deterministic: all input arrives through start(),
/// on_message() and on_timer(); all output leaves through the ReplicaEnv.
class Replica {
 public:
  Replica(ReplicaId id, const Params& params, const EngineConfig& config,
          std::unique_ptr<ElectionProvider> election, const Authenticator& auth,
          ReplicaEnv& env, ReplicaObserver* observer = nullptr);

  Replica(const Replica&) = delete;
  Replica& operator=(const Replica&) = delete;

  /// Enters view 1.
  void start();
  void on_message(const MessagePtr& msg);
  void on_timer(View view);

  ReplicaId id() const { return id_; }
  View current_view() const { return cur_; }
  /// Leader this replica currently acts on for the current view.
  ReplicaId determined_leader() const { return current_leader_; }
  View last_committed_view() const { return last_committed_view_; }
  const QuorumCertificate& locked_qc() const { return locked_qc_; }
  const QuorumCertificate& high_qc() const { return high_qc_; }
  const ElectionProvider& election() const { return *election_; }

 private:
  using BlockPtr = std::shared_ptr<const Proposal>;

  struct ViewPools {
    std::map<Phase, std::map<Digest, std::vector<QcSigner>>> votes;
    std::set<std::pair<Phase, ReplicaId>> voted;
    std::vector<ReplicaId> prepare_order;  // voters for own proposal, arrival order
    std::vector<VoteExtension> commit_extensions;
    std::optional<QuorumCertificate> commit_qc;
    std::map<ReplicaId, std::shared_ptr<const Message>> view_changes;
    std::vector<VoteExtension> vc_extensions;
    std::optional<Digest> own_digest;
    bool prepare_qc_sent = false;
    bool precommit_qc_sent = false;
    bool decide_sent = false;
  };

  void handle_proposal(const MessagePtr& msg);
  void handle_vote(const Vote& vote);
  void handle_phase(const MessagePtr& msg);
  void handle_view_change(const MessagePtr& msg);
  void handle_decide(const Decide& decide);

  bool proposal_authentic(const Proposal& p) const;
  bool leader_legitimate(const Proposal& p) const;
  bool safe_node(const Proposal& p) const;
  void process_proposal(const BlockPtr& p);

  void on_commit_qc_formed(View view);
  void handle_commit_qc(const QuorumCertificate& qc, const BlockPtr& block);
  void commit_chain(const BlockPtr& block, View decided_in);

  void move_to(View v, bool enter);
  void timeout_current();
  void join(View w);
  void send_view_change(View v);
  void try_propose();
  void propose(const QuorumCertificate& justify, BlockPtr parent,
               std::optional<LeaderCertificate> cert);

  Vote make_vote(View view, Phase phase, Digest digest, std::optional<VoteExtension> ext) const;
  void note_qc(const QuorumCertificate& qc, const BlockPtr& block);
  QuorumCertificate form_qc(View view, Phase phase, Digest digest,
                            const std::vector<QcSigner>& signers) const;
  void remember_block(const BlockPtr& block);
  void garbage_collect();

  ReplicaId id_;
  Params params_;
  EngineConfig config_;
  std::unique_ptr<ElectionProvider> election_;
  const Authenticator& auth_;
  ReplicaEnv& env_;
  ReplicaObserver* observer_;

  View cur_ = 0;
  bool entered_ = false;
  ReplicaId entry_leader_ = 0;
  ReplicaId current_leader_ = 0;
  ReplicaId next_leader_ = 0;  // cached determination for cur_ + 1
  BlockPtr accepted_;
  bool proposed_ = false;
  bool voted_precommit_ = false;
  bool voted_commit_ = false;

  QuorumCertificate high_qc_ = QuorumCertificate::genesis();
  BlockPtr high_block_;
  QuorumCertificate locked_qc_ = QuorumCertificate::genesis();
  View last_committed_view_ = 0;
  Digest last_committed_digest_ = 0;

  std::map<View, ViewPools> pools_;
  std::map<View, std::vector<MessagePtr>> buffered_;
  std::set<View> vc_sent_;
  std::unordered_map<Digest, BlockPtr> blocks_;
};

}  // namespace swle::engine
