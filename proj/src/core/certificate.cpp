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

#include "swle/certificate.hpp"

#include <algorithm>
#include <string>

#include "swle/codec.hpp"
#include "swle/target_view.hpp"

namespace swle {

namespace {

constexpr std::uint8_t kExtensionTag = 0x45;

bool candidates_well_formed(const std::vector<ReplicaId>& cands, std::uint32_t n) {
  if (cands.empty() || cands.size() > n) return false;
  std::vector<bool> seen(n, false);
  for (auto c : cands) {
    if (c >= n || seen[c]) return false;
    seen[c] = true;
  }
  return true;
}

}  // namespace

std::vector<std::uint8_t> VoteExtension::signing_bytes() const {
  Encoder e;
  e.u8(kExtensionTag)
      .u8(static_cast<std::uint8_t>(kind))
      .u64(view)
      .u32(determined_leader)
      .u64(target_view)
      .u32_list(candidates)
      .u32(voter);
  return e.take();
}

std::vector<std::uint8_t> VoteExtension::encode() const {
  Encoder e;
  e.bytes(signing_bytes()).bytes(signature.bytes);
  return e.take();
}

VoteExtension VoteExtension::decode(std::span<const std::uint8_t> bytes) {
  Decoder d(bytes);
  if (d.u8() != kExtensionTag) throw DecodeError("not a vote extension");
  VoteExtension x;
  const auto kind = d.u8();
  if (kind != 1 && kind != 2) throw DecodeError("unknown extension kind");
  x.kind = static_cast<ExtensionKind>(kind);
  x.view = d.u64();
  x.determined_leader = d.u32();
  x.target_view = d.u64();
  x.candidates = d.u32_list(1u << 16);
  x.voter = d.u32();
  const auto sig = d.bytes(x.signature.bytes.size());
  std::copy(sig.begin(), sig.end(), x.signature.bytes.begin());
  if (!d.done()) throw DecodeError("trailing bytes after vote extension");
  return x;
}

bool extension_well_formed(const VoteExtension& ext, const Params& params) {
  return ext.determined_leader < params.n && ext.voter < params.n &&
         candidates_well_formed(ext.candidates, params.n);
}

VoteExtension make_extension(ExtensionKind kind, View view, ReplicaId determined_leader,
                             View target, std::vector<ReplicaId> candidates, ReplicaId voter,
                             const Authenticator& auth) {
  VoteExtension x{kind, view, determined_leader, target, std::move(candidates), voter, {}};
  x.signature = auth.sign(voter, x.signing_bytes());
  return x;
}

std::string_view to_string(CertVerdict verdict) {
  switch (verdict) {
    case CertVerdict::Accept: return "Accept";
    case CertVerdict::MalformedVoteSet: return "MalformedVoteSet";
    case CertVerdict::BadSignature: return "BadSignature";
    case CertVerdict::WrongClaimant: return "WrongClaimant";
    case CertVerdict::WrongTarget: return "WrongTarget";
    case CertVerdict::SelectionMismatch: return "SelectionMismatch";
  }
  return "Unknown";
}

std::optional<ReplicaId> select_leader(std::span<const VoteExtension> votes, View target,
                                       const Params& params) {
  const auto n = params.n;
  std::vector<std::uint32_t> count(n, 0);
  for (const auto& v : votes) {
    for (auto c : v.candidates) {
      if (c < n) ++count[c];
    }
  }
  std::optional<ReplicaId> best;
  std::uint64_t best_offset = n;
  const auto base = static_cast<std::uint64_t>(target % n);
  for (ReplicaId c = 0; c < n; ++c) {
    if (count[c] < params.f + 1) continue;
    const std::uint64_t offset = (c + n - base) % n;
    if (offset < best_offset) {
      best_offset = offset;
      best = c;
    }
  }
  return best;
}

CertVerdict check_vote_set(std::span<const VoteExtension> votes, View target,
                           const Params& params, const Authenticator& auth) {
  if (votes.size() != params.quorum()) return CertVerdict::MalformedVoteSet;
  const auto& first = votes.front();
  std::vector<bool> voters(params.n, false);
  for (const auto& v : votes) {
    if (v.voter >= params.n || voters[v.voter]) return CertVerdict::MalformedVoteSet;
    voters[v.voter] = true;
    if (v.kind != first.kind || v.view != first.view || v.target_view != target ||
        v.determined_leader != first.determined_leader || v.determined_leader >= params.n) {
      return CertVerdict::MalformedVoteSet;
    }
    if (!candidates_well_formed(v.candidates, params.n)) return CertVerdict::MalformedVoteSet;
  }
  for (const auto& v : votes) {
    if (!auth.verify(v.voter, v.signing_bytes(), v.signature)) return CertVerdict::BadSignature;
  }
  return CertVerdict::Accept;
}

LeaderCertificate package_certificate(std::vector<VoteExtension> votes, View target,
                                      const Params& params, const Authenticator& auth) {
  const auto verdict = check_vote_set(votes, target, params, auth);
  if (verdict != CertVerdict::Accept) {
    throw CertificateError(verdict, "cannot package leader certificate for view " +
                                        std::to_string(target) + ": " +
                                        std::string(to_string(verdict)));
  }
  std::sort(votes.begin(), votes.end(),
            [](const VoteExtension& a, const VoteExtension& b) { return a.voter < b.voter; });
  LeaderCertificate cert;
  cert.target_view = target;
  cert.elected = select_leader(votes, target, params);
  cert.votes = std::move(votes);
  return cert;
}

CertVerdict verify_certificate(const LeaderCertificate& cert, ReplicaId proposer,
                               View proposal_view, const Params& params,
                               const Authenticator& auth) {
  if (cert.votes.size() != params.quorum()) return CertVerdict::MalformedVoteSet;
  // Consistency of view/target across the set is part of the vote-set check;
  // compare against the first vote so a uniformly wrong target is reported
  // as such rather than as a malformed set.
  const auto set_verdict = check_vote_set(cert.votes, cert.votes.front().target_view, params, auth);
  if (set_verdict != CertVerdict::Accept) return set_verdict;
  const auto& head = cert.votes.front();
  if (head.determined_leader != proposer) return CertVerdict::WrongClaimant;
  if (proposal_view < 2 || head.view != proposal_view - 1) return CertVerdict::WrongTarget;
  const View expected = target_view(head.view, params);
  if (head.target_view != expected || cert.target_view != expected) return CertVerdict::WrongTarget;
  if (cert.elected && *cert.elected >= params.n) return CertVerdict::SelectionMismatch;
  if (select_leader(cert.votes, cert.target_view, params) != cert.elected) {
    return CertVerdict::SelectionMismatch;
  }
  return CertVerdict::Accept;
}

}  // namespace swle
