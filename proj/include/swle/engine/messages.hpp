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
#include <memory>
#include <optional>
#include <string_view>
#include <variant>
#include <vector>

#include "swle/authenticator.hpp"
#include "swle/certificate.hpp"
#include "swle/types.hpp"

namespace swle::engine {

enum class Phase : std::uint8_t { Prepare = 1, PreCommit = 2, Commit = 3 };

std::string_view to_string(Phase phase);

struct QcSigner {
  ReplicaId voter = 0;
  Signature signature{};

  friend bool operator==(const QcSigner&, const QcSigner&) = default;
};

struct QuorumCertificate {
  View view = 0;
  Phase phase = Phase::Prepare;
  Digest digest = 0;
  std::vector<QcSigner> signers;

  /// Stand-in QC for the genesis node: view 0, digest 0, no signers.
  static QuorumCertificate genesis() { return {}; }
  bool is_genesis() const { return view == 0; }

  friend bool operator==(const QuorumCertificate&, const QuorumCertificate&) = default;
};

/// Bytes a replica signs when voting; also what a QC signer entry covers.
std::vector<std::uint8_t> vote_signing_bytes(View view, Phase phase, Digest digest,
                                             ReplicaId voter);

/// Genesis, or `quorum` distinct voters with valid signatures.
bool verify_qc(const QuorumCertificate& qc, std::uint32_t n, std::uint32_t quorum,
               const Authenticator& auth);

struct Proposal {
  View view = 0;
  Digest parent = 0;
  // Simulation shortcut for block retrieval: the parent node itself, so a
  // replica that missed it can still walk the chain. Not part of the wire
  // encoding; `parent` is authoritative and is checked against it.
  std::shared_ptr<const Proposal> parent_block;
  std::uint32_t batch = 0;          // operations carried
  std::uint32_t payload_bytes = 0;  // bytes per operation
  QuorumCertificate justify;
  std::optional<LeaderCertificate> leader_cert;
  ReplicaId proposer = 0;
  SimTime created_us = 0;
  Digest digest = 0;
  Signature signature{};

  /// Canonical encoding of every field that `digest` commits to.
  std::vector<std::uint8_t> header_bytes() const;
  Digest compute_digest() const;
};

/// Bytes the proposer signs: the digest, tagged.
std::vector<std::uint8_t> proposal_signing_bytes(Digest digest);

struct Vote {
  View view = 0;
  Phase phase = Phase::Prepare;
  Digest digest = 0;
  ReplicaId voter = 0;
  std::optional<VoteExtension> extension;  // COMMIT votes only
  Signature signature{};
};

/// Leader-to-replica message carrying the QC of the previous phase; the
/// replicas answer with a vote for `phase`.
struct PhaseMessage {
  View view = 0;
  Phase phase = Phase::PreCommit;
  QuorumCertificate qc;
  ReplicaId sender = 0;
  Signature signature{};

  std::vector<std::uint8_t> signing_bytes() const;
};

/// Sent by every replica leaving `view` without a decision.
struct ViewChange {
  View view = 0;
  QuorumCertificate high_qc;
  std::shared_ptr<const Proposal> high_block;  // node named by high_qc, see Proposal::parent_block
  std::optional<VoteExtension> extension;
  ReplicaId sender = 0;
  Signature signature{};

  std::vector<std::uint8_t> signing_bytes() const;
};

/// Leader broadcast after a COMMIT quorum; the QC is the proof.
struct Decide {
  QuorumCertificate commit_qc;
  std::shared_ptr<const Proposal> block;
  ReplicaId sender = 0;
};

using Message = std::variant<Proposal, Vote, PhaseMessage, ViewChange, Decide>;
using MessagePtr = std::shared_ptr<const Message>;

std::string_view message_kind(const Message& msg);
View message_view(const Message& msg);
/// Approximate encoded size, used by the network model for transmission time.
std::size_t message_size(const Message& msg);

}  // namespace swle::engine
