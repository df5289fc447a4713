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

#include "swle/params.hpp"
#include "swle/types.hpp"

namespace swle {

/// View whose leader is elected by the votes cast in view `v`.
///
/// Write v = n*x + r with r in [1, n] and let a = x mod n. The block
/// {n*x+1 .. n*x+n} maps one-to-one onto {n*(x+1)+1+t_z .. n*(x+2)+t_z}:
///
///   r + a <= n  ->  v + n + a + t_z
///   r + a >  n  ->  v + a + t_z
///
/// so every view beyond the first t_z + n has its election started exactly
/// once, and the result is always at least v + 1 + t_z. The same mapping is
/// often written as three cases keyed on floor(v/n); that form sends the
/// last view of every block with x = n-1 (mod n) to v + n + t_z, colliding
/// with the block's first view.
///
/// Throws std::invalid_argument if v < 1 or n == 0.
View target_view(View v, std::uint32_t n, std::uint64_t t_z);

inline View target_view(View v, const Params& params) {
  return target_view(v, params.n, params.t_z);
}

inline ReplicaId initial_leader(View v, std::uint32_t n) {
  return static_cast<ReplicaId>(v % n);
}

}  // namespace swle
