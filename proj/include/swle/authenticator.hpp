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
#include <span>
#include <vector>

#include "swle/types.hpp"

namespace swle {

/// Signature scheme seam. Implementations must be deterministic and safe to
/// share read-only between replicas.
class Authenticator {
 public:
  virtual ~Authenticator() = default;

  virtual Signature sign(ReplicaId signer, std::span<const std::uint8_t> message) const = 0;
  virtual bool verify(ReplicaId signer, std::span<const std::uint8_t> message,
                      const Signature& signature) const = 0;
};

/// Keyed-hash authenticator for simulation. Each replica's key is derived
/// from a world seed; code paths that only hold their own replica id cannot
/// produce another replica's signature, which is what the simulated
/// adversary is limited to.
class SimAuthenticator final : public Authenticator {
 public:
  SimAuthenticator(std::uint64_t world_seed, std::uint32_t replicas);

  Signature sign(ReplicaId signer, std::span<const std::uint8_t> message) const override;
  bool verify(ReplicaId signer, std::span<const std::uint8_t> message,
              const Signature& signature) const override;

 private:
  std::vector<std::uint64_t> keys_;
};

/// Accepts every signature. Only for negative tests that need to inject
/// forged artifacts past signature checks.
class PermissiveAuthenticator final : public Authenticator {
 public:
  Signature sign(ReplicaId, std::span<const std::uint8_t>) const override { return {}; }
  bool verify(ReplicaId, std::span<const std::uint8_t>, const Signature&) const override {
    return true;
  }
};

}  // namespace swle
