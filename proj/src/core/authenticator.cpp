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

#include "swle/authenticator.hpp"

#include "swle/codec.hpp"

namespace swle {

namespace {

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

SimAuthenticator::SimAuthenticator(std::uint64_t world_seed, std::uint32_t replicas) {
  keys_.reserve(replicas);
  for (std::uint32_t i = 0; i < replicas; ++i) {
    keys_.push_back(splitmix(world_seed ^ splitmix(0x5157'4c45ULL + i)));
  }
}

Signature SimAuthenticator::sign(ReplicaId signer, std::span<const std::uint8_t> message) const {
  Signature sig;
  if (signer >= keys_.size()) return sig;
  const auto tag = hash64(message, keys_[signer]);
  for (int i = 0; i < 8; ++i) sig.bytes[i] = static_cast<std::uint8_t>(tag >> (8 * i));
  return sig;
}

bool SimAuthenticator::verify(ReplicaId signer, std::span<const std::uint8_t> message,
                              const Signature& signature) const {
  if (signer >= keys_.size()) return false;
  return sign(signer, message) == signature;
}

}  // namespace swle
