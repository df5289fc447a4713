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

#include "swle/engine/replica.hpp"

#include <string>

namespace swle::engine {

Replica::Replica(ReplicaId id, const Params& params, const EngineConfig& config,
                 std::unique_ptr<ElectionProvider> election, const Authenticator& auth,
                 ReplicaEnv& env, ReplicaObserver* observer)
    : id_(id),
      params_(params),
      config_(config),
      election_(std::move(election)),
      auth_(auth),
      env_(env),
      observer_(observer) {
  if (id >= params.n) throw std::out_of_range("replica id outside replica set");
  if (!election_) throw std::invalid_argument("replica needs an election provider");
}

void Replica::start() { move_to(1, true); }

void Replica::on_message(const MessagePtr& msg) {
  switch (msg->index()) {
    case 0: handle_proposal(msg); break;
    case 1: handle_vote(std::get<Vote>(*msg)); break;
    case 2: handle_phase(msg); break;
    case 3: handle_view_change(msg); break;
    case 4: handle_decide(std::get<Decide>(*msg)); break;
  }
}

void Replica::on_timer(View view) {
  if (view == cur_ && entered_) timeout_current();
}

// ---------------------------------------------------------------------------
// Proposals

bool Replica::proposal_authentic(const Proposal& p) const {
  if (p.view == 0 || p.proposer >= params_.n) return false;
  if (p.justify.view >= p.view || p.parent != p.justify.digest) return false;
  if (p.parent == 0) {
    if (!p.justify.is_genesis() || p.parent_block) return false;
  } else if (!p.parent_block || p.parent_block->digest != p.parent) {
    return false;
  }
  if (p.compute_digest() != p.digest) return false;
  if (!auth_.verify(p.proposer, proposal_signing_bytes(p.digest), p.signature)) return false;
  return verify_qc(p.justify, params_.n, params_.quorum(), auth_);
}

bool Replica::leader_legitimate(const Proposal& p) const {
  if (!election_->uses_certificates() || p.view == 1) {
    return !p.leader_cert && p.proposer == election_->determine(p.view);
  }
  // A certificate whose votes all name the proposer is a leadership claim,
  // which outranks the local election outcome.
  return p.leader_cert &&
         election_->verify(*p.leader_cert, p.proposer, p.view) == CertVerdict::Accept;
}

bool Replica::safe_node(const Proposal& p) const {
  if (locked_qc_.is_genesis() || p.justify.view > locked_qc_.view) return true;
  const Proposal* b = p.parent_block.get();
  while (b && b->view > locked_qc_.view) b = b->parent_block.get();
  return b && b->digest == locked_qc_.digest;
}

void Replica::handle_proposal(const MessagePtr& msg) {
  BlockPtr p(msg, &std::get<Proposal>(*msg));
  if (!proposal_authentic(*p)) return;
  remember_block(p);
  note_qc(p->justify, p->parent_block);
  if (p->justify.phase == Phase::Commit && !p->justify.is_genesis()) {
    handle_commit_qc(p->justify, p->parent_block);
  }
  if (p->view > cur_) {
    buffered_[p->view].push_back(msg);
    return;
  }
  if (p->view == cur_ && entered_) process_proposal(p);
}

void Replica::process_proposal(const BlockPtr& p) {
  if (accepted_ || !leader_legitimate(*p) || !safe_node(*p)) return;
  accepted_ = p;
  current_leader_ = p->proposer;
  if (observer_) observer_->on_claim(id_, cur_, p->proposer);
  auto vote = make_vote(cur_, Phase::Prepare, p->digest, std::nullopt);
  env_.send(id_, p->proposer, std::make_shared<const Message>(std::move(vote)));
}

// ---------------------------------------------------------------------------
// Votes and leader-side phase progression

Vote Replica::make_vote(View view, Phase phase, Digest digest,
                        std::optional<VoteExtension> ext) const {
  Vote v{view, phase, digest, id_, std::move(ext), {}};
  v.signature = auth_.sign(id_, vote_signing_bytes(view, phase, digest, id_));
  return v;
}

QuorumCertificate Replica::form_qc(View view, Phase phase, Digest digest,
                                   const std::vector<QcSigner>& signers) const {
  QuorumCertificate qc{view, phase, digest, {}};
  qc.signers.assign(signers.begin(), signers.begin() + params_.quorum());
  return qc;
}

void Replica::handle_vote(const Vote& vote) {
  if (vote.voter >= params_.n || vote.view + 1 < cur_) return;
  if (!auth_.verify(vote.voter, vote_signing_bytes(vote.view, vote.phase, vote.digest, vote.voter),
                    vote.signature)) {
    return;
  }
  if (vote.extension) {
    const auto& x = *vote.extension;
    if (vote.phase != Phase::Commit || x.kind != ExtensionKind::Commit || x.view != vote.view ||
        x.voter != vote.voter || !extension_well_formed(x, params_) ||
        !auth_.verify(x.voter, x.signing_bytes(), x.signature)) {
      return;
    }
  }

  auto& pool = pools_[vote.view];
  if (!pool.voted.insert({vote.phase, vote.voter}).second) return;
  auto& signers = pool.votes[vote.phase][vote.digest];
  signers.push_back({vote.voter, vote.signature});
  const bool own = pool.own_digest == vote.digest;
  if (vote.phase == Phase::Prepare && own) pool.prepare_order.push_back(vote.voter);
  if (vote.extension) pool.commit_extensions.push_back(*vote.extension);

  const bool quorum = signers.size() >= params_.quorum();
  if (!quorum) {
    if (vote.phase == Phase::Commit && vote.view + 1 == cur_) try_propose();
    return;
  }

  switch (vote.phase) {
    case Phase::Prepare:
      if (own && vote.view == cur_ && !pool.prepare_qc_sent) {
        pool.prepare_qc_sent = true;
        PhaseMessage m{cur_, Phase::PreCommit, form_qc(cur_, Phase::Prepare, vote.digest, signers),
                       id_, {}};
        m.signature = auth_.sign(id_, m.signing_bytes());
        env_.broadcast(id_, std::make_shared<const Message>(std::move(m)));
      }
      break;
    case Phase::PreCommit:
      if (own && vote.view == cur_ && !pool.precommit_qc_sent) {
        pool.precommit_qc_sent = true;
        PhaseMessage m{cur_, Phase::Commit, form_qc(cur_, Phase::PreCommit, vote.digest, signers),
                       id_, {}};
        m.signature = auth_.sign(id_, m.signing_bytes());
        env_.broadcast(id_, std::make_shared<const Message>(std::move(m)));
      }
      break;
    case Phase::Commit:
      if (!pool.commit_qc) {
        pool.commit_qc = form_qc(vote.view, Phase::Commit, vote.digest, signers);
        on_commit_qc_formed(vote.view);
      } else if (vote.view + 1 == cur_) {
        try_propose();
      }
      break;
  }
}

void Replica::handle_phase(const MessagePtr& msg) {
  const auto& m = std::get<PhaseMessage>(*msg);
  if (m.view > cur_) {
    buffered_[m.view].push_back(msg);
    return;
  }
  if (m.view < cur_ || !entered_ || !accepted_) return;
  if (m.sender != accepted_->proposer || m.qc.view != cur_ || m.qc.digest != accepted_->digest) {
    return;
  }
  const Phase expected = m.phase == Phase::PreCommit ? Phase::Prepare : Phase::PreCommit;
  if (m.phase == Phase::Prepare || m.qc.phase != expected) return;
  if ((m.phase == Phase::PreCommit && voted_precommit_) ||
      (m.phase == Phase::Commit && voted_commit_)) {
    return;
  }
  if (!auth_.verify(m.sender, m.signing_bytes(), m.signature) ||
      !verify_qc(m.qc, params_.n, params_.quorum(), auth_)) {
    return;
  }
  note_qc(m.qc, accepted_);
  if (m.phase == Phase::PreCommit) {
    voted_precommit_ = true;
    auto vote = make_vote(cur_, Phase::PreCommit, accepted_->digest, std::nullopt);
    env_.send(id_, m.sender, std::make_shared<const Message>(std::move(vote)));
    return;
  }
  voted_commit_ = true;
  locked_qc_ = m.qc;
  auto ext = election_->extension(ExtensionKind::Commit, cur_, next_leader_);
  auto vote = std::make_shared<const Message>(
      make_vote(cur_, Phase::Commit, accepted_->digest, std::move(ext)));
  env_.send(id_, m.sender, vote);
  if (next_leader_ != m.sender) env_.send(id_, next_leader_, vote);
}

// ---------------------------------------------------------------------------
// Decisions

void Replica::on_commit_qc_formed(View view) {
  auto& pool = pools_[view];
  const auto qc = *pool.commit_qc;
  const auto it = blocks_.find(qc.digest);
  if (it == blocks_.end() || it->second->view != view) return;  // wait for the leader's decide
  const BlockPtr block = it->second;
  if (pool.own_digest == qc.digest && !pool.decide_sent) {
    pool.decide_sent = true;
    if (pool.prepare_order.size() >= params_.quorum()) {
      election_->on_led_decision(
          std::span(pool.prepare_order.data(), static_cast<std::size_t>(params_.quorum())));
    }
    env_.broadcast(id_, std::make_shared<const Message>(Decide{qc, block, id_}));
  }
  handle_commit_qc(qc, block);
  try_propose();
}

void Replica::handle_decide(const Decide& d) {
  const auto& qc = d.commit_qc;
  if (qc.phase != Phase::Commit || qc.is_genesis() || !d.block) return;
  if (d.block->digest != qc.digest || d.block->view != qc.view) return;
  if (qc.view < cur_ && d.block->view <= last_committed_view_) return;
  if (d.block->compute_digest() != qc.digest) return;
  if (!verify_qc(qc, params_.n, params_.quorum(), auth_)) return;
  remember_block(d.block);
  note_qc(qc, d.block);
  handle_commit_qc(qc, d.block);
  try_propose();
}

void Replica::handle_commit_qc(const QuorumCertificate& qc, const BlockPtr& block) {
  if (!block || block->digest != qc.digest) return;
  if (block->view > last_committed_view_) commit_chain(block, qc.view);
  if (qc.view >= cur_) move_to(qc.view + 1, true);
}

void Replica::commit_chain(const BlockPtr& block, View decided_in) {
  std::vector<const Proposal*> chain;
  const Proposal* b = block.get();
  while (b && b->view > last_committed_view_) {
    chain.push_back(b);
    b = b->parent_block.get();
  }
  const Digest anchor = b ? b->digest : 0;
  if (anchor != last_committed_digest_ || chain.back()->parent != last_committed_digest_) {
    throw SafetyViolation("replica " + std::to_string(id_) + ": decision in view " +
                          std::to_string(decided_in) + " for node of view " +
                          std::to_string(block->view) +
                          " does not extend the committed node of view " +
                          std::to_string(last_committed_view_));
  }
  for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
    const Proposal& node = **it;
    last_committed_view_ = node.view;
    last_committed_digest_ = node.digest;
    if (observer_) observer_->on_commit(id_, node, decided_in);
    election_->on_finalized(node.proposer);
    if (node.leader_cert) election_->apply(*node.leader_cert);
  }
}

// ---------------------------------------------------------------------------
// View changes

void Replica::handle_view_change(const MessagePtr& msg) {
  const auto& vc = std::get<ViewChange>(*msg);
  if (vc.sender >= params_.n || vc.view == 0 || vc.view + 1 < cur_) return;
  auto& pool = pools_[vc.view];
  if (pool.view_changes.count(vc.sender)) return;
  if (vc.high_qc.is_genesis() ? static_cast<bool>(vc.high_block)
                              : (!vc.high_block || vc.high_block->digest != vc.high_qc.digest)) {
    return;
  }
  if (vc.extension) {
    const auto& x = *vc.extension;
    if (x.kind != ExtensionKind::ViewChange || x.view != vc.view || x.voter != vc.sender ||
        !extension_well_formed(x, params_) ||
        !auth_.verify(x.voter, x.signing_bytes(), x.signature)) {
      return;
    }
  }
  if (!auth_.verify(vc.sender, vc.signing_bytes(), vc.signature) ||
      !verify_qc(vc.high_qc, params_.n, params_.quorum(), auth_)) {
    return;
  }
  pool.view_changes.emplace(vc.sender, msg);
  if (vc.extension) pool.vc_extensions.push_back(*vc.extension);
  note_qc(vc.high_qc, vc.high_block);

  const auto count = pool.view_changes.size();
  if (vc.view >= cur_ && count >= params_.f + 1 && !vc_sent_.count(vc.view)) {
    join(vc.view);
  } else if (vc.view + 1 == cur_) {
    try_propose();
  }
}

void Replica::send_view_change(View v) {
  vc_sent_.insert(v);
  ViewChange vc{v, high_qc_, high_block_,
                election_->extension(ExtensionKind::ViewChange, v, next_leader_), id_, {}};
  vc.signature = auth_.sign(id_, vc.signing_bytes());
  env_.broadcast(id_, std::make_shared<const Message>(std::move(vc)));
}

void Replica::timeout_current() {
  const View v = cur_;
  election_->on_timeout(current_leader_);
  if (observer_) observer_->on_timeout(id_, v, current_leader_);
  send_view_change(v);
  move_to(v + 1, true);
}

void Replica::join(View w) {
  // f+1 replicas gave up on w, so at least one correct replica did.
  if (w == cur_ && entered_) {
    timeout_current();
    return;
  }
  if (w > cur_) move_to(w, false);
  send_view_change(w);
  move_to(w + 1, true);
}

// ---------------------------------------------------------------------------
// View transitions and proposing

void Replica::move_to(View v, bool enter) {
  if (v <= cur_) return;
  for (View u = cur_ + 1; u < v; ++u) {
    election_->advance_to(u);
    if (observer_) observer_->on_skip(id_, u, election_->determine(u));
  }
  election_->advance_to(v);
  cur_ = v;
  entered_ = enter;
  entry_leader_ = election_->determine(v);
  current_leader_ = entry_leader_;
  next_leader_ = election_->determine(v + 1);
  accepted_.reset();
  proposed_ = false;
  voted_precommit_ = false;
  voted_commit_ = false;
  garbage_collect();

  if (!enter) {
    if (observer_) observer_->on_skip(id_, v, entry_leader_);
    return;
  }
  const bool known = election_->elected_known(v);
  election_->on_enter(v, entry_leader_);
  env_.set_timer(id_, v, env_.now() + config_.timeout_us);
  if (observer_) observer_->on_enter(id_, v, entry_leader_, known);

  auto node = buffered_.extract(v);
  if (!node.empty()) {
    for (const auto& m : node.mapped()) {
      if (cur_ != v) break;
      on_message(m);
    }
  }
  if (cur_ == v) try_propose();
}

void Replica::try_propose() {
  const View v = cur_;
  if (!entered_ || proposed_) return;
  if (v == 1) {
    if (election_->determine(1) == id_) propose(QuorumCertificate::genesis(), nullptr, std::nullopt);
    return;
  }
  const auto it = pools_.find(v - 1);
  if (it == pools_.end()) return;
  const auto& pool = it->second;
  const bool certs = election_->uses_certificates();
  if (!certs && election_->determine(v) != id_) return;

  if (pool.commit_qc) {
    const auto b = blocks_.find(pool.commit_qc->digest);
    if (b != blocks_.end()) {
      std::optional<LeaderCertificate> cert;
      if (certs) cert = election_->try_certificate(pool.commit_extensions, v - 1);
      if (!certs || cert) {
        propose(*pool.commit_qc, b->second, std::move(cert));
        return;
      }
    }
  }
  if (pool.view_changes.size() >= params_.quorum()) {
    std::optional<LeaderCertificate> cert;
    if (certs) {
      cert = election_->try_certificate(pool.vc_extensions, v - 1);
      if (!cert) return;
    }
    propose(high_qc_, high_block_, std::move(cert));
  }
}

void Replica::propose(const QuorumCertificate& justify, BlockPtr parent,
                      std::optional<LeaderCertificate> cert) {
  Proposal p;
  p.view = cur_;
  p.parent = justify.digest;
  p.parent_block = std::move(parent);
  p.batch = config_.batch_size;
  p.payload_bytes = config_.payload_bytes;
  p.justify = justify;
  p.leader_cert = std::move(cert);
  p.proposer = id_;
  p.created_us = env_.now();
  p.digest = p.compute_digest();
  p.signature = auth_.sign(id_, proposal_signing_bytes(p.digest));
  proposed_ = true;
  pools_[cur_].own_digest = p.digest;
  env_.broadcast(id_, std::make_shared<const Message>(std::move(p)));
}

// ---------------------------------------------------------------------------
// Bookkeeping

void Replica::note_qc(const QuorumCertificate& qc, const BlockPtr& block) {
  if (qc.view > high_qc_.view && block && block->digest == qc.digest) {
    high_qc_ = qc;
    high_block_ = block;
  }
}

void Replica::remember_block(const BlockPtr& block) { blocks_.emplace(block->digest, block); }

void Replica::garbage_collect() {
  const View keep = cur_ > 1 ? cur_ - 1 : 0;
  pools_.erase(pools_.begin(), pools_.lower_bound(keep));
  buffered_.erase(buffered_.begin(), buffered_.lower_bound(cur_));
  vc_sent_.erase(vc_sent_.begin(), vc_sent_.lower_bound(keep));
  if (cur_ % 64 == 0) {
    // Committed history stays reachable through parent links; the lookup
    // table only needs recent and uncommitted nodes.
    for (auto it = blocks_.begin(); it != blocks_.end();) {
      if (it->second->view + 2 * params_.n < last_committed_view_) {
        it = blocks_.erase(it);
      } else {
        ++it;
      }
    }
  }
}

}  // namespace swle::engine
