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
#include <optional>
#include <span>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "swle/authenticator.hpp"
#include "swle/params.hpp"
#include "swle/types.hpp"

namespace swle {

/// Which message carried an extension. A certificate never mixes kinds.
enum class ExtensionKind : std::uint8_t { Commit = 1, ViewChange = 2 };

/// Election fields piggybacked on a COMMIT vote or a view-change message.
struct VoteExtension {
  ExtensionKind kind = ExtensionKind::Commit;
  View view = 0;                  // view the message was cast in
  ReplicaId determined_leader = 0;  // sender's leader for view + 1
  View target_view = 0;
  std::vector<ReplicaId> candidates;
  ReplicaId voter = 0;
  Signature signature{};

  /// Canonical bytes covered by `signature` (every field above it).
  std::vector<std::uint8_t> signing_bytes() const;
  /// signing_bytes() followed by the signature.
  std::vector<std::uint8_t> encode() const;
  static VoteExtension decode(std::span<const std::uint8_t> bytes);

  friend bool operator==(const VoteExtension&, const VoteExtension&) = default;
};

/// Structural checks on a single extension (no signature check): candidate
/// array non-empty, duplicate-free, at most n long, all ids and the
/// determined leader in range.
bool extension_well_formed(const VoteExtension& ext, const Params& params);

/// Builds and signs an extension.
VoteExtension make_extension(ExtensionKind kind, View view, ReplicaId determined_leader,
                             View target, std::vector<ReplicaId> candidates, ReplicaId voter,
                             const Authenticator& auth);

struct LeaderCertificate {
  View target_view = 0;
  std::optional<ReplicaId> elected;  // nullopt: no candidate reached f+1 votes
  std::vector<VoteExtension> votes;

  friend bool operator==(const LeaderCertificate&, const LeaderCertificate&) = default;
};

enum class CertVerdict {
  Accept,
  MalformedVoteSet,
  BadSignature,
  WrongClaimant,
  WrongTarget,
  SelectionMismatch,
};

std::string_view to_string(CertVerdict verdict);

class CertificateError : public std::invalid_argument {
 public:
  CertificateError(CertVerdict verdict, const std::string& what)
      : std::invalid_argument(what), verdict_(verdict) {}
  CertVerdict verdict() const { return verdict_; }

 private:
  CertVerdict verdict_;
};

/// Candidate selection over a vote set: among candidates listed by at least
/// f+1 votes, the one whose next initial-leader view at or after `target`
/// comes first. Does not validate the votes.
std::optional<ReplicaId> select_leader(std::span<const VoteExtension> votes, View target,
                                       const Params& params);

/// Checks a vote set for use in a certificate: exactly 2f+1 extensions from
/// distinct voters, one kind, one view, one target, one determined leader,
/// well-formed candidate arrays and valid signatures. Returns Accept or the
/// first failure (MalformedVoteSet or BadSignature).
CertVerdict check_vote_set(std::span<const VoteExtension> votes, View target,
                           const Params& params, const Authenticator& auth);

/// Throws CertificateError if the votes fail check_vote_set.
LeaderCertificate package_certificate(std::vector<VoteExtension> votes, View target,
                                      const Params& params, const Authenticator& auth);

/// Full verification of a certificate carried by `proposer`'s proposal for
/// `proposal_view`.
CertVerdict verify_certificate(const LeaderCertificate& cert, ReplicaId proposer,
                               View proposal_view, const Params& params,
                               const Authenticator& auth);

}  // namespace swle
