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

#include "swle/engine/messages.hpp"

#include "swle/codec.hpp"

namespace swle::engine {

namespace {

constexpr std::uint8_t kVoteTag = 0x56;
constexpr std::uint8_t kProposalTag = 0x50;
constexpr std::uint8_t kProposalSigTag = 0x53;
constexpr std::uint8_t kPhaseTag = 0x4d;
constexpr std::uint8_t kViewChangeTag = 0x43;

// Rough per-field sizes for the transmission model.
constexpr std::size_t kSigSize = 64;
constexpr std::size_t kQcHeader = 8 + 1 + 8 + 4;

void encode_qc_ref(Encoder& e, const QuorumCertificate& qc) {
  e.u64(qc.view).u8(static_cast<std::uint8_t>(qc.phase)).u64(qc.digest);
}

std::size_t qc_size(const QuorumCertificate& qc) {
  return kQcHeader + qc.signers.size() * (4 + kSigSize);
}

std::size_t extension_size(const VoteExtension& x) {
  return 1 + 1 + 8 + 4 + 8 + 4 + 4 * x.candidates.size() + 4 + kSigSize;
}

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

}  // namespace

std::string_view to_string(Phase phase) {
  switch (phase) {
    case Phase::Prepare: return "PREPARE";
    case Phase::PreCommit: return "PRECOMMIT";
    case Phase::Commit: return "COMMIT";
  }
  return "UNKNOWN";
}

std::vector<std::uint8_t> vote_signing_bytes(View view, Phase phase, Digest digest,
                                             ReplicaId voter) {
  Encoder e;
  e.u8(kVoteTag).u64(view).u8(static_cast<std::uint8_t>(phase)).u64(digest).u32(voter);
  return e.take();
}

bool verify_qc(const QuorumCertificate& qc, std::uint32_t n, std::uint32_t quorum,
               const Authenticator& auth) {
  if (qc.is_genesis()) return qc.digest == 0 && qc.signers.empty();
  if (qc.signers.size() != quorum) return false;
  std::vector<bool> seen(n, false);
  for (const auto& s : qc.signers) {
    if (s.voter >= n || seen[s.voter]) return false;
    seen[s.voter] = true;
    if (!auth.verify(s.voter, vote_signing_bytes(qc.view, qc.phase, qc.digest, s.voter),
                     s.signature)) {
      return false;
    }
  }
  return true;
}

std::vector<std::uint8_t> Proposal::header_bytes() const {
  Encoder e;
  e.u8(kProposalTag)
      .u64(view)
      .u64(parent)
      .u32(batch)
      .u32(payload_bytes)
      .u32(proposer)
      .u64(static_cast<std::uint64_t>(created_us));
  encode_qc_ref(e, justify);
  if (!leader_cert) {
    e.u8(0);
  } else {
    e.u8(1).u64(leader_cert->target_view);
    e.u8(leader_cert->elected ? 1 : 0).u32(leader_cert->elected.value_or(0));
    e.u32(static_cast<std::uint32_t>(leader_cert->votes.size()));
    for (const auto& v : leader_cert->votes) {
      const auto raw = v.encode();
      e.u32(static_cast<std::uint32_t>(raw.size())).bytes(raw);
    }
  }
  return e.take();
}

Digest Proposal::compute_digest() const {
  const auto bytes = header_bytes();
  return hash64(bytes);
}

std::vector<std::uint8_t> proposal_signing_bytes(Digest digest) {
  Encoder e;
  e.u8(kProposalSigTag).u64(digest);
  return e.take();
}

std::vector<std::uint8_t> PhaseMessage::signing_bytes() const {
  Encoder e;
  e.u8(kPhaseTag).u64(view).u8(static_cast<std::uint8_t>(phase));
  encode_qc_ref(e, qc);
  e.u32(sender);
  return e.take();
}

std::vector<std::uint8_t> ViewChange::signing_bytes() const {
  Encoder e;
  e.u8(kViewChangeTag).u64(view);
  encode_qc_ref(e, high_qc);
  e.u8(extension ? 1 : 0);
  if (extension) {
    const auto raw = extension->encode();
    e.u32(static_cast<std::uint32_t>(raw.size())).bytes(raw);
  }
  e.u32(sender);
  return e.take();
}

std::string_view message_kind(const Message& msg) {
  return std::visit(overloaded{
                        [](const Proposal&) { return std::string_view("proposal"); },
                        [](const Vote&) { return std::string_view("vote"); },
                        [](const PhaseMessage&) { return std::string_view("phase"); },
                        [](const ViewChange&) { return std::string_view("view-change"); },
                        [](const Decide&) { return std::string_view("decide"); },
                    },
                    msg);
}

View message_view(const Message& msg) {
  return std::visit(overloaded{
                        [](const Proposal& m) { return m.view; },
                        [](const Vote& m) { return m.view; },
                        [](const PhaseMessage& m) { return m.view; },
                        [](const ViewChange& m) { return m.view; },
                        [](const Decide& m) { return m.commit_qc.view; },
                    },
                    msg);
}

std::size_t message_size(const Message& msg) {
  return std::visit(
      overloaded{
          [](const Proposal& m) {
            std::size_t s = 8 + 8 + 4 + 4 + 4 + 8 + 8 + kSigSize + qc_size(m.justify);
            s += static_cast<std::size_t>(m.batch) * m.payload_bytes;
            if (m.leader_cert) {
              s += 8 + 5;
              for (const auto& v : m.leader_cert->votes) s += extension_size(v);
            }
            return s;
          },
          [](const Vote& m) {
            std::size_t s = 8 + 1 + 8 + 4 + kSigSize;
            if (m.extension) s += extension_size(*m.extension);
            return s;
          },
          [](const PhaseMessage& m) { return 8 + 1 + 4 + kSigSize + qc_size(m.qc); },
          [](const ViewChange& m) {
            std::size_t s = 8 + 4 + kSigSize + qc_size(m.high_qc);
            if (m.extension) s += extension_size(*m.extension);
            return s;
          },
          [](const Decide& m) { return 4 + qc_size(m.commit_qc); },
      },
      msg);
}

}  // namespace swle::engine
