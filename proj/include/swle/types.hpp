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

#include <array>
#include <cstdint>

namespace swle {

using ReplicaId = std::uint32_t;

/// Consensus view number. Views start at 1; 0 is reserved for genesis.
using View = std::uint64_t;

/// Reputation arithmetic is carried out in integer units of 1/n point, so
/// one reputation point equals n units and every scoring constant is exact.
using ScoreUnits = std::int64_t;

/// Simulated time in microseconds.
using SimTime = std::int64_t;

/// 64-bit content digest used to name proposals.
using Digest = std::uint64_t;

/// Opaque authenticator output. Sized for an ed25519 signature; the
/// simulation authenticator only fills the first eight bytes.
struct Signature {
  std::array<std::uint8_t, 64> bytes{};

  friend bool operator==(const Signature&, const Signature&) = default;
};

}  // namespace swle
